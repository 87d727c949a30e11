#include <doctest.h>

#include <cmath>
#include <numbers>

#include "slwave/eigensolver.hpp"

using namespace slwave;
constexpr double PI = std::numbers::pi;

TEST_CASE("free string eigenvalues are (pi n)^2") {
    CoefficientSet cs;
    for (std::size_t n = 1; n <= 8; ++n) {
        const double lam = eigenvalue(cs, n, 1e-12);
        CHECK(lam == doctest::Approx(PI * PI * n * n).epsilon(1e-12));
    }
}

TEST_CASE("phase endpoint for a unit nu step, frozen reference") {
    // Reference computed with an independent fixed-step RK4 integration of
    // the phase equation (step refinement 1e-3 -> 1e-4 agrees to 6e-13).
    CoefficientSet cs;
    cs.nu = PiecewiseSmoothFn::heaviside(0.5, 1.0);
    const double th = prufer_endpoint(cs, 100.0, 1e-12).theta1;
    CHECK(th == doctest::Approx(9.9280711351597).epsilon(1e-11));
}

TEST_CASE("single Dirac well at x = 1/2: spectrum and eigenfunction") {
    CoefficientSet cs;
    cs.nu = PiecewiseSmoothFn::heaviside(0.5, 1.0);

    // lambda_1 = s^2 with tan(s/2) = -2s (transcendental root, frozen);
    // even modes are untouched sines: lambda_2 = (2 pi)^2, lambda_4 = (4 pi)^2.
    const double l1 = eigenvalue(cs, 1, 1e-12);
    const double l2 = eigenvalue(cs, 2, 1e-12);
    const double l3 = eigenvalue(cs, 3, 1e-12);
    const double l4 = eigenvalue(cs, 4, 1e-12);
    CHECK(l1 == doctest::Approx(11.771859163750688).epsilon(1e-9));
    CHECK(l2 == doctest::Approx(4 * PI * PI).epsilon(1e-10));
    CHECK(l4 == doctest::Approx(16 * PI * PI).epsilon(1e-10));
    // Interlacing of the perturbed odd modes.
    CHECK(l1 > PI * PI);
    CHECK(l1 < 4 * PI * PI);
    CHECK(l3 > 9 * PI * PI);
    CHECK(l3 < 16 * PI * PI);

    // psi_1 is proportional to sin(s x) left of the well and symmetric.
    Grid grid(1024);
    EigenPair ep = eigenpair(cs, 1, grid, 1e-12);
    const double s = std::sqrt(l1);
    const double scale = ep.psi[512] / std::sin(0.5 * s);  // match at x = 1/2
    CHECK(ep.psi[256] == doctest::Approx(scale * std::sin(0.25 * s)).epsilon(1e-6));
    CHECK(ep.psi[768] == doctest::Approx(ep.psi[256]).epsilon(1e-6));
    CHECK(ep.psi.front() == 0.0);
    CHECK(ep.psi.back() == doctest::Approx(0.0).epsilon(1e-9));
}

TEST_CASE("constant drift p = 2: shifted spectrum and phi = psi / g") {
    CoefficientSet cs;
    cs.p = PiecewiseSmoothFn::constant(2.0);
    // Transformed potential p^2/4 = 1 shifts every eigenvalue by exactly 1.
    CHECK(eigenvalue(cs, 1, 1e-12) == doctest::Approx(PI * PI + 1.0).epsilon(1e-11));
    CHECK(eigenvalue(cs, 3, 1e-12) == doctest::Approx(9 * PI * PI + 1.0).epsilon(1e-11));

    Grid grid(512);
    EigenPair ep = eigenpair(cs, 1, grid, 1e-12);
    // g = exp(-x), so phi_1 = e^x psi_1.
    for (std::size_t i : {128u, 256u, 420u}) {
        const double x = grid.node(i);
        CHECK(ep.phi[i] == doctest::Approx(std::exp(x) * ep.psi[i]).epsilon(1e-10));
    }
    // psi_1 is the free sine: sqrt(2) sin(pi x).
    CHECK(ep.psi[256] == doctest::Approx(std::sqrt(2.0)).epsilon(1e-10));
}

TEST_CASE("normalization and phase bookkeeping") {
    CoefficientSet cs;
    cs.nu = PiecewiseSmoothFn([](double x) { return 0.3 * std::cos(2 * PI * x); },
                              [](double x) { return -0.6 * PI * std::sin(2 * PI * x); });
    Grid grid(1024);
    for (std::size_t n : {1ul, 4ul}) {
        EigenPair ep = eigenpair(cs, n, grid, 1e-11);
        // theta(1) = pi n by construction of the eigenvalue.
        CHECK(ep.trace.theta.back() ==
              doctest::Approx(PI * static_cast<double>(n)).epsilon(1e-9));
        // normalized psi has unit L2 norm; the raw amplitude stays O(1).
        CHECK(grid.l2_norm(ep.psi) == doctest::Approx(1.0).epsilon(1e-12));
        CHECK(ep.norm_tilde > 0.1);
        CHECK(ep.norm_tilde < 10.0);
    }
}

TEST_CASE("basis construction guards and Gram quality") {
    CoefficientSet cs;
    Grid coarse(128);
    CHECK_THROWS_AS(build_basis(cs, 8, coarse, 1e-10), ParameterError);  // m < 64 N

    Grid grid(1024);
    SpectralBasis basis = build_basis(cs, 8, grid, 1e-11);
    CHECK(basis.N == 8);
    CHECK(basis.gram_deviation < 1e-10);
    for (std::size_t n = 1; n < basis.pairs.size(); ++n)
        CHECK(basis.pairs[n].lambda > basis.pairs[n - 1].lambda);
}

TEST_CASE("mixed drift and potential keep the solver stable") {
    CoefficientSet cs;
    cs.p = PiecewiseSmoothFn([](double x) { return 0.5 * std::sin(2 * PI * x); },
                             [](double x) { return PI * std::cos(2 * PI * x); });
    cs.p_prime = cs.p.piecewise_derivative();
    cs.nu = PiecewiseSmoothFn([](double x) { return 0.3 * std::cos(2 * PI * x); },
                              [](double x) { return -0.6 * PI * std::sin(2 * PI * x); });
    double prev = 0.0;
    for (std::size_t n = 1; n <= 6; ++n) {
        const double lam = eigenvalue(cs, n, 1e-11);
        CHECK(lam > prev);
        // Perturbation is O(1): stay within a unit of the free eigenvalue.
        CHECK(std::abs(lam - PI * PI * static_cast<double>(n * n)) < 1.5);
        prev = lam;
    }
}
