#pragma once

#include <cstddef>
#include <span>
#include <vector>

#include "slwave/eigensolver.hpp"

namespace slwave {

// Mode coefficients c_n (n = 1..N) with respect to a SpectralBasis.
struct SpectralCoefficients {
    std::vector<double> values;
    const SpectralBasis* basis = nullptr;

    std::size_t size() const { return values.size(); }
    double operator[](std::size_t i) const { return values[i]; }
};

// c_n = int_0^1 f(x) g(x) psi_n(x) dx; f sampled on the basis grid.
SpectralCoefficients forward(const SpectralBasis& basis, std::span<const double> f);

// sum_n c_n phi_n(x) sampled on the basis grid.
std::vector<double> inverse(const SpectralBasis& basis, const SpectralCoefficients& c);

// sqrt(sum_n lambda_n^k c_n^2); the spectral realization of ||L^{k/2} .||_{L2}.
double sobolev_norm(const SpectralCoefficients& c, double k);

}  // namespace slwave
