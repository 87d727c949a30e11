#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <numbers>

#include "slwave/coefficients.hpp"

using namespace slwave;
constexpr double PI = std::numbers::pi;

TEST_CASE("grid weights integrate exactly through cubics") {
    Grid grid(64);
    double wsum = 0.0;
    for (double w : grid.weights()) wsum += w;
    CHECK(wsum == doctest::Approx(1.0).epsilon(1e-14));

    std::vector<double> cubic(grid.size());
    for (std::size_t i = 0; i < grid.size(); ++i) {
        const double x = grid.node(i);
        cubic[i] = x * x * x - 2.0 * x;
    }
    CHECK(grid.integrate(cubic) == doctest::Approx(0.25 - 1.0).epsilon(1e-14));
}

TEST_CASE("grid rejects odd or degenerate node counts") {
    CHECK_THROWS_AS(Grid(7), ParameterError);
    CHECK_THROWS_AS(Grid(0), ParameterError);
}

TEST_CASE("piecewise breakpoint evaluation takes one-sided values and means") {
    PiecewiseSmoothFn h = PiecewiseSmoothFn::heaviside(0.5, 2.0);
    CHECK(h.value_left(0.5) == 0.0);
    CHECK(h.value_right(0.5) == 2.0);
    CHECK(h.value(0.5) == 1.0);  // mean of the one-sided limits
    CHECK(h.jump(0.5) == 2.0);
    CHECK(h.value(0.25) == 0.0);
    CHECK(h.value(0.75) == 2.0);
}

TEST_CASE("weight g = exp(-1/2 int p) for constant and linear p") {
    Grid grid(256);

    CoefficientSet c2;
    c2.p = PiecewiseSmoothFn::constant(2.0);
    WeightSamples w2 = compute_weight(c2, grid);
    CHECK(w2.g.front() == 1.0);
    CHECK(w2.g.back() == doctest::Approx(std::exp(-1.0)).epsilon(1e-12));

    CoefficientSet cx;
    cx.p = PiecewiseSmoothFn([](double x) { return x; }, [](double) { return 1.0; });
    WeightSamples wx = compute_weight(cx, grid);
    CHECK(wx.g.back() == doctest::Approx(std::exp(-0.25)).epsilon(1e-12));
    // interior check at x = 1/2: exp(-1/16)
    CHECK(wx.g[128] == doctest::Approx(std::exp(-1.0 / 16.0)).epsilon(1e-12));
}

TEST_CASE("merged breakpoints deduplicate shared locations") {
    CoefficientSet cs;
    cs.p = PiecewiseSmoothFn(
        {0.5}, {PiecewiseSmoothFn::Piece{[](double x) { return x; }, [](double) { return 1.0; }},
                PiecewiseSmoothFn::Piece{[](double x) { return 1.0 - x; },
                                         [](double) { return -1.0; }}});
    cs.nu = PiecewiseSmoothFn::heaviside(0.5, 1.0);
    const auto bp = merged_breakpoints(cs);
    REQUIRE(bp.size() == 1);
    CHECK(bp[0] == doctest::Approx(0.5));
}

TEST_CASE("function norms of sin(pi x)") {
    PiecewiseSmoothFn s([](double x) { return std::sin(PI * x); },
                        [](double x) { return PI * std::cos(PI * x); });
    const FnNorms n = function_norms(s);
    CHECK(n.l1 == doctest::Approx(2.0 / PI).epsilon(1e-8));
    CHECK(n.l2 == doctest::Approx(std::sqrt(0.5)).epsilon(1e-8));
    CHECK(n.linf == doctest::Approx(1.0).epsilon(1e-8));
}

TEST_CASE("cumulative integral splits at jumps") {
    Grid grid(128);
    PiecewiseSmoothFn h = PiecewiseSmoothFn::heaviside(0.5, 1.0);
    const auto F = cumulative_integral(h, grid);
    CHECK(F.front() == 0.0);
    CHECK(F.back() == doctest::Approx(0.5).epsilon(1e-12));
    CHECK(F[64] == doctest::Approx(0.0).epsilon(1e-12));  // x = 0.5, jump not yet counted
    CHECK(F[96] == doctest::Approx(0.25).epsilon(1e-12)); // x = 0.75
}

TEST_CASE("q extraction: Dirac terms come from jumps of nu") {
    CoefficientSet cs;
    cs.nu = PiecewiseSmoothFn::heaviside(0.3, -2.0);
    REQUIRE(cs.nu_has_jumps());
    const auto d = cs.q_deltas();
    REQUIRE(d.size() == 1);
    CHECK(d[0].location == doctest::Approx(0.3));
    CHECK(d[0].height == doctest::Approx(-2.0));

    CoefficientSet smooth;
    smooth.nu = PiecewiseSmoothFn([](double x) { return std::sin(2 * PI * x); },
                                  [](double x) { return 2 * PI * std::cos(2 * PI * x); });
    CHECK_FALSE(smooth.nu_has_jumps());
    CHECK(smooth.q_function().value(0.25) == doctest::Approx(2 * PI * std::cos(PI / 2)));
}
