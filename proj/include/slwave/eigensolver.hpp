#pragma once

#include <cstddef>
#include <memory>
#include <vector>

#include "slwave/coefficients.hpp"
#include "slwave/grid.hpp"

namespace slwave {

// Phase/amplitude trace of the modified Prufer system at a trial lambda:
//   theta' = sqrt(lambda) + nu sin 2theta
//            + lambda^{-1/2} (nu^2 - p^2/4 + p'/2) sin^2 theta,
//   (log r)' = -[nu cos 2theta + (lambda^{-1/2}/2)(nu^2 - p^2/4 + p'/2) sin 2theta],
// with theta(0) = 0, log r(0) = 0. eta(x) = theta(x) - sqrt(lambda) x.
struct PruferTrace {
    double lambda = 0.0;
    std::vector<double> theta;
    std::vector<double> log_r;
    std::vector<double> eta;
};

// End values only (no grid sampling); the fast path for root finding.
struct PruferEndpoint {
    double theta1 = 0.0;
    double log_r1 = 0.0;
};

PruferEndpoint prufer_endpoint(const CoefficientSet& cs, double lambda, double tol);

// Full trace sampled at the grid nodes. Integration splits at the merged
// breakpoints of (p, nu); local error per step <= tol.
PruferTrace prufer_integrate(const CoefficientSet& cs, double lambda, double tol,
                             const Grid& grid);

// One eigenpair of the operator: lambda_n with theta(1, lambda_n) = pi n,
// the normalized psi_n, the quasi-derivative channel and phi_n = psi_n / g.
struct EigenPair {
    std::size_t n = 0;
    double lambda = 0.0;
    PruferTrace trace;
    std::vector<double> psi_tilde;  // r(x) sin theta(x)
    std::vector<double> psi;        // psi_tilde / ||psi_tilde||_{L2}
    std::vector<double> psi_quasi;  // sqrt(lambda) r(x) cos theta(x)
    std::vector<double> phi;        // psi / g
    double norm_tilde = 0.0;
};

// lambda_n located by bracketing around (pi n)^2 and refined by safeguarded
// bisection/secant on F(lambda) = theta(1, lambda) - pi n. tol is relative.
double eigenvalue(const CoefficientSet& cs, std::size_t n, double tol);

EigenPair eigenpair(const CoefficientSet& cs, std::size_t n, const Grid& grid, double tol);

struct SpectralBasis {
    CoefficientSet coefficients;
    std::shared_ptr<const Grid> grid;
    WeightSamples weight;
    std::vector<EigenPair> pairs;
    std::size_t N = 0;
    double gram_deviation = 0.0;  // max |G_mn - delta_mn| over the basis

    const Grid& g() const { return *grid; }
};

// Pairs for n = 1..N, sharing one weight computation. Requires m >= 64 N so
// the highest mode keeps >= 32 nodes per wavelength.
SpectralBasis build_basis(const CoefficientSet& cs, std::size_t N, const Grid& grid,
                          double tol);

}  // namespace slwave
