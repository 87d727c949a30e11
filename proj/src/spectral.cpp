#include "slwave/spectral.hpp"

#include <cmath>

namespace slwave {

SpectralCoefficients forward(const SpectralBasis& basis, std::span<const double> f) {
    const Grid& grid = basis.g();
    if (f.size() != grid.size())
        throw UsageError("forward: sample count does not match the basis grid");
    SpectralCoefficients c;
    c.basis = &basis;
    c.values.resize(basis.N);
    const auto& w = grid.weights();
    for (std::size_t n = 0; n < basis.N; ++n) {
        const auto& psi = basis.pairs[n].psi;
        double s = 0.0;
        for (std::size_t i = 0; i < grid.size(); ++i)
            s += w[i] * f[i] * basis.weight.g[i] * psi[i];
        c.values[n] = s;
    }
    return c;
}

std::vector<double> inverse(const SpectralBasis& basis, const SpectralCoefficients& c) {
    if (c.basis != &basis || c.values.size() != basis.N)
        throw UsageError("inverse: coefficients do not belong to this basis");
    std::vector<double> out(basis.g().size(), 0.0);
    for (std::size_t n = 0; n < basis.N; ++n) {
        const auto& phi = basis.pairs[n].phi;
        for (std::size_t i = 0; i < out.size(); ++i) out[i] += c.values[n] * phi[i];
    }
    return out;
}

double sobolev_norm(const SpectralCoefficients& c, double k) {
    if (c.basis == nullptr) throw UsageError("sobolev_norm: detached coefficients");
    if (k < 0.0 && !(c.basis->pairs.front().lambda > 0.0))
        throw SpectralError("negative Sobolev order requires lambda_1 > 0");
    double s = 0.0;
    for (std::size_t n = 0; n < c.values.size(); ++n)
        s += std::pow(c.basis->pairs[n].lambda, k) * c.values[n] * c.values[n];
    return std::sqrt(s);
}

}  // namespace slwave
