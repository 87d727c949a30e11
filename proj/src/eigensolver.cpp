#include "slwave/eigensolver.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <string>

namespace slwave {

namespace {

constexpr double kPi = std::numbers::pi;

double phase_residual(const CoefficientSet& cs, double lambda, std::size_t n, double ode_tol) {
    return prufer_endpoint(cs, lambda, ode_tol).theta1 - kPi * static_cast<double>(n);
}

}  // namespace

double eigenvalue(const CoefficientSet& cs, std::size_t n, double tol) {
    if (n < 1) throw ParameterError("mode index must be >= 1");
    const double ode_tol = std::min(1e-10, std::max(tol, 1e-13));
    const double pin = kPi * static_cast<double>(n);
    const double guess = pin * pin;

    // Initial bracket around the asymptotic guess; widened geometrically on
    // sign failure within [max(1, guess/4), 4*guess + 100].
    const double lo_cap = std::max(1.0, 0.25 * guess);
    const double hi_cap = 4.0 * guess + 100.0;
    double lo = std::max(lo_cap, std::pow(kPi * (static_cast<double>(n) - 0.5), 2.0));
    double hi = std::min(hi_cap, std::pow(kPi * (static_cast<double>(n) + 0.5), 2.0));

    double flo = phase_residual(cs, lo, n, ode_tol);
    double fhi = phase_residual(cs, hi, n, ode_tol);
    int widen = 0;
    while (flo > 0.0 || fhi < 0.0) {
        if (++widen > 60)
            throw SpectralError("eigenvalue bracket not found for n=" + std::to_string(n) +
                                " (effective potential too large for the lambda >= 1 regime)");
        bool moved = false;
        if (flo > 0.0 && lo > lo_cap) {
            lo = std::max(lo_cap, 0.5 * lo);
            flo = phase_residual(cs, lo, n, ode_tol);
            moved = true;
        }
        if (fhi < 0.0 && hi < hi_cap) {
            hi = std::min(hi_cap, 2.0 * hi);
            fhi = phase_residual(cs, hi, n, ode_tol);
            moved = true;
        }
        if (!moved) {
            if (flo > 0.0)
                throw SpectralError(
                    "theta(1,1) already exceeds pi*n: eigenvalue below the lambda >= 1 "
                    "Prufer regime for n=" + std::to_string(n));
            throw SpectralError("eigenvalue bracket exhausted for n=" + std::to_string(n));
        }
    }

    // Safeguarded secant within the bracket, bisection fallback.
    double a = lo, b = hi, fa = flo, fb = fhi;
    for (int it = 0; it < 200; ++it) {
        if (b - a <= tol * std::max(1.0, 0.5 * (a + b))) break;
        double c;
        if (fb != fa) {
            c = b - fb * (b - a) / (fb - fa);
            const double margin = 0.01 * (b - a);
            if (!(c > a + margin && c < b - margin)) c = 0.5 * (a + b);
        } else {
            c = 0.5 * (a + b);
        }
        const double fc = phase_residual(cs, c, n, ode_tol);
        if (fc == 0.0) return c;
        if (fc < 0.0) {
            a = c;
            fa = fc;
        } else {
            b = c;
            fb = fc;
        }
    }
    // Final secant estimate inside the converged bracket.
    const double lam = (fb != fa) ? std::clamp(b - fb * (b - a) / (fb - fa), a, b)
                                  : 0.5 * (a + b);
    return lam;
}

EigenPair eigenpair(const CoefficientSet& cs, std::size_t n, const Grid& grid, double tol) {
    const WeightSamples w = compute_weight(cs, grid);

    EigenPair ep;
    ep.n = n;
    ep.lambda = eigenvalue(cs, n, tol);
    const double ode_tol = std::min(1e-10, std::max(tol, 1e-13));
    ep.trace = prufer_integrate(cs, ep.lambda, ode_tol, grid);

    const double sql = std::sqrt(ep.lambda);
    const std::size_t sz = grid.size();
    ep.psi_tilde.resize(sz);
    ep.psi_quasi.resize(sz);
    for (std::size_t i = 0; i < sz; ++i) {
        const double r = std::exp(ep.trace.log_r[i]);
        ep.psi_tilde[i] = r * std::sin(ep.trace.theta[i]);
        ep.psi_quasi[i] = sql * r * std::cos(ep.trace.theta[i]);
    }
    ep.norm_tilde = grid.l2_norm(ep.psi_tilde);
    if (!(ep.norm_tilde > 0.0))
        throw SpectralError("degenerate eigenfunction norm for n=" + std::to_string(n));

    ep.psi.resize(sz);
    ep.phi.resize(sz);
    for (std::size_t i = 0; i < sz; ++i) {
        ep.psi[i] = ep.psi_tilde[i] / ep.norm_tilde;
        ep.phi[i] = ep.psi[i] / w.g[i];
    }
    return ep;
}

SpectralBasis build_basis(const CoefficientSet& cs, std::size_t N, const Grid& grid,
                          double tol) {
    if (N < 1) throw ParameterError("basis truncation N must be >= 1");
    if (grid.m() < 64 * N)
        throw ParameterError("grid too coarse: need m >= 64*N to resolve the highest mode");

    SpectralBasis basis;
    basis.coefficients = cs;
    basis.grid = std::make_shared<Grid>(grid);
    basis.weight = compute_weight(cs, *basis.grid);
    basis.N = N;

    const double ode_tol = std::min(1e-10, std::max(tol, 1e-13));
    basis.pairs.reserve(N);
    for (std::size_t n = 1; n <= N; ++n) {
        EigenPair ep;
        ep.n = n;
        ep.lambda = eigenvalue(cs, n, tol);
        if (n > 1 && !(ep.lambda > basis.pairs.back().lambda))
            throw SpectralError("eigenvalues not strictly increasing at n=" + std::to_string(n));
        ep.trace = prufer_integrate(cs, ep.lambda, ode_tol, *basis.grid);
        const double sql = std::sqrt(ep.lambda);
        const std::size_t sz = basis.grid->size();
        ep.psi_tilde.resize(sz);
        ep.psi_quasi.resize(sz);
        for (std::size_t i = 0; i < sz; ++i) {
            const double r = std::exp(ep.trace.log_r[i]);
            ep.psi_tilde[i] = r * std::sin(ep.trace.theta[i]);
            ep.psi_quasi[i] = sql * r * std::cos(ep.trace.theta[i]);
        }
        ep.norm_tilde = basis.grid->l2_norm(ep.psi_tilde);
        if (!(ep.norm_tilde > 0.0))
            throw SpectralError("degenerate eigenfunction norm for n=" + std::to_string(n));
        ep.psi.resize(sz);
        ep.phi.resize(sz);
        for (std::size_t i = 0; i < sz; ++i) {
            ep.psi[i] = ep.psi_tilde[i] / ep.norm_tilde;
            ep.phi[i] = ep.psi[i] / basis.weight.g[i];
        }
        basis.pairs.push_back(std::move(ep));
    }

    // Gram diagnostic in the transformed frame: G_mn = int psi_m psi_n.
    double dev = 0.0;
    const auto& wq = basis.grid->weights();
    for (std::size_t a = 0; a < N; ++a) {
        for (std::size_t b = a; b < N; ++b) {
            double gmn = 0.0;
            for (std::size_t i = 0; i < basis.grid->size(); ++i)
                gmn += wq[i] * basis.pairs[a].psi[i] * basis.pairs[b].psi[i];
            dev = std::max(dev, std::abs(gmn - (a == b ? 1.0 : 0.0)));
        }
    }
    basis.gram_deviation = dev;
    return basis;
}

}  // namespace slwave
