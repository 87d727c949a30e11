#include <doctest.h>

#include <cmath>
#include <numbers>

#include "slwave/mollifier.hpp"

using namespace slwave;
constexpr double PI = std::numbers::pi;

TEST_CASE("kernel normalization constants and unit mass") {
    MollifierSpec bump("bump");
    // c with int_{-1}^{1} c exp(-1/(1-y^2)) dy = 1; value at 0 is c/e.
    CHECK(bump.normalization() == doctest::Approx(2.2522836210435810).epsilon(1e-12));
    CHECK(bump.value(0.0) == doctest::Approx(0.8285688398691052).epsilon(1e-12));
    CHECK(bump.mass() == doctest::Approx(1.0).epsilon(1e-12));
    CHECK(bump.value(1.0) == 0.0);
    CHECK(bump.value(-1.5) == 0.0);

    MollifierSpec bump2("bump2");
    CHECK(bump2.value(0.0) == doctest::Approx(1.0169000522168501).epsilon(1e-12));
    CHECK(bump2.mass() == doctest::Approx(1.0).epsilon(1e-12));

    CHECK_THROWS_AS(MollifierSpec("triangle"), ParameterError);
}

TEST_CASE("kernel derivative matches finite differences") {
    MollifierSpec bump("bump");
    const double y = 0.37, dh = 1e-6;
    const double fd = (bump.value(y + dh) - bump.value(y - dh)) / (2 * dh);
    CHECK(bump.derivative(y) == doctest::Approx(fd).epsilon(1e-6));
    const double fd2 = (bump.derivative(y + dh) - bump.derivative(y - dh)) / (2 * dh);
    CHECK(bump.second(y) == doctest::Approx(fd2).epsilon(1e-5));
}

TEST_CASE("mollified heaviside: midpoint value and peak derivative") {
    MollifierSpec bump("bump");
    const double eps = 0.05;
    MollifiedFn m(PiecewiseSmoothFn::zero(), {{0.5, 1.0}}, eps, bump);
    // At the jump the regularization takes the mean value.
    CHECK(m.value(0.5) == doctest::Approx(0.5).epsilon(1e-6));
    // Left/right of the smoothing zone the step is reproduced up to the
    // kernel-mass quadrature error.
    CHECK(m.value(0.5 - 1.5 * eps) == doctest::Approx(0.0).epsilon(1e-5));
    CHECK(m.value(0.5 + 1.5 * eps) == doctest::Approx(1.0).epsilon(1e-5));
    // sup |nu_eps'| = psi(0)/eps for a unit jump.
    CHECK(m.max_abs_derivative() ==
          doctest::Approx(bump.value(0.0) / eps).epsilon(1e-4));
}

TEST_CASE("approximate identity on a smooth profile") {
    MollifierSpec bump("bump");
    PiecewiseSmoothFn s([](double x) { return std::sin(PI * x); },
                        [](double x) { return PI * std::cos(PI * x); });
    const double eps = 0.02;
    MollifiedFn m(s, {}, eps, bump);
    // Away from the boundary the bias is O(eps^2).
    double err = 0.0;
    for (double x = 0.1; x <= 0.9; x += 0.05)
        err = std::max(err, std::abs(m.value(x) - std::sin(PI * x)));
    CHECK(err < PI * PI * eps * eps);
    // Derivative converges too.
    double derr = 0.0;
    for (double x = 0.1; x <= 0.9; x += 0.05)
        derr = std::max(derr, std::abs(m.derivative(x) - PI * std::cos(PI * x)));
    CHECK(derr < 10.0 * eps * eps);
}

TEST_CASE("convolution is linear in the source") {
    MollifierSpec bump("bump");
    const double eps = 0.04;
    PiecewiseSmoothFn a([](double x) { return x * x; }, [](double x) { return 2 * x; });
    MollifiedFn ma(a, {{0.5, 1.0}}, eps, bump);
    MollifiedFn ms(a, {{0.5, 3.0}}, eps, bump);
    MollifiedFn mj(PiecewiseSmoothFn::zero(), {{0.5, 2.0}}, eps, bump);
    for (double x : {0.3, 0.5, 0.52, 0.8})
        CHECK(ms.value(x) == doctest::Approx(ma.value(x) + mj.value(x)).epsilon(1e-9));
}

TEST_CASE("total variation of the regularized step is the jump height") {
    MollifierSpec bump("bump");
    const double eps = 1.0 / 32.0;
    MollifiedFn m(PiecewiseSmoothFn::zero(), {{0.5, 1.0}}, eps, bump);
    // int |nu_eps'| over the interior window [2 eps, 1 - 2 eps] (the
    // derivative is one-signed there and supported in |x - 1/2| < eps).
    const int n = 4000;
    const double a = 2 * eps, b = 1.0 - 2 * eps, h = (b - a) / n;
    double tv = std::abs(m.derivative(a)) + std::abs(m.derivative(b));
    for (int i = 1; i < n; ++i)
        tv += (i % 2 == 1 ? 4.0 : 2.0) * std::abs(m.derivative(a + i * h));
    tv *= h / 3.0;
    CHECK(tv == doctest::Approx(1.0).epsilon(1e-3));
}

TEST_CASE("mollify refuses jump support escaping the interval") {
    MollifierSpec bump("bump");
    SingularDescriptor sd;
    sd.jumps = {{0.05, 1.0}};
    Grid grid(512);
    CHECK_THROWS_AS(mollify(sd, 0.25, bump, grid), ParameterError);
    CHECK_THROWS_AS(mollify(sd, -0.1, bump, grid), ParameterError);
}

TEST_CASE("mollify yields classical coefficients for a nu jump") {
    MollifierSpec bump("bump");
    SingularDescriptor sd;
    sd.jumps = {{0.5, 1.0}};
    Grid grid(512);
    CoefficientSet cs = mollify(sd, 1.0 / 16.0, bump, grid);
    CHECK(cs.regularity == RegularityClass::classical);
    CHECK_FALSE(cs.nu_has_jumps());
    CHECK(cs.nu.value(0.5) == doctest::Approx(0.5).epsilon(1e-6));
    CHECK(cs.nu.value(0.1) == doctest::Approx(0.0).epsilon(1e-5));
    CHECK(cs.nu.value(0.9) == doctest::Approx(1.0).epsilon(1e-5));
}
