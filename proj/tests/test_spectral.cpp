#include <doctest.h>

#include <cmath>
#include <numbers>

#include "slwave/spectral.hpp"

using namespace slwave;
constexpr double PI = std::numbers::pi;

namespace {

SpectralBasis free_basis(std::size_t N = 8, std::size_t m = 1024) {
    CoefficientSet cs;
    Grid grid(m);
    return build_basis(cs, N, grid, 1e-11);
}

std::vector<double> sample(const Grid& g, const std::function<double(double)>& f) {
    std::vector<double> v(g.size());
    for (std::size_t i = 0; i < g.size(); ++i) v[i] = f(g.node(i));
    return v;
}

}  // namespace

TEST_CASE("forward transform of an eigen-direction is a unit vector") {
    SpectralBasis basis = free_basis();
    const Grid& grid = basis.g();
    // f = sin(pi x) = psi_1 / sqrt(2): c_1 = 1/sqrt(2), the rest vanish.
    auto f = sample(grid, [](double x) { return std::sin(PI * x); });
    SpectralCoefficients c = forward(basis, f);
    CHECK(c[0] == doctest::Approx(1.0 / std::sqrt(2.0)).epsilon(1e-12));
    for (std::size_t n = 1; n < c.size(); ++n)
        CHECK(std::abs(c[n]) < 1e-12);
}

TEST_CASE("round trip through a band-limited profile") {
    SpectralBasis basis = free_basis();
    const Grid& grid = basis.g();
    auto f = sample(grid, [](double x) {
        return std::sin(PI * x) + 0.3 * std::sin(2 * PI * x) - 0.1 * std::sin(5 * PI * x);
    });
    std::vector<double> back = inverse(basis, forward(basis, f));
    double err = 0.0;
    for (std::size_t i = 0; i < grid.size(); ++i)
        err = std::max(err, std::abs(back[i] - f[i]));
    CHECK(err < 1e-11);
}

TEST_CASE("known coefficients of x(1-x)") {
    SpectralBasis basis = free_basis();
    const Grid& grid = basis.g();
    auto f = sample(grid, [](double x) { return x * (1.0 - x); });
    SpectralCoefficients c = forward(basis, f);
    for (std::size_t n = 1; n <= basis.N; ++n) {
        const double exact =
            n % 2 == 1 ? 4.0 * std::sqrt(2.0) / (PI * PI * PI * n * n * n) : 0.0;
        CHECK(c[n - 1] == doctest::Approx(exact).epsilon(1e-10));
    }
}

TEST_CASE("sobolev norm weights coefficients by powers of lambda") {
    SpectralBasis basis = free_basis(4);
    SpectralCoefficients c;
    c.basis = &basis;
    c.values = {1.0, 0.5, 0.0, 0.25};
    const double n0 = sobolev_norm(c, 0.0);
    CHECK(n0 == doctest::Approx(std::sqrt(1.0 + 0.25 + 0.0625)).epsilon(1e-12));
    double s1 = 0.0;
    for (std::size_t n = 0; n < 4; ++n)
        s1 += basis.pairs[n].lambda * c.values[n] * c.values[n];
    CHECK(sobolev_norm(c, 1.0) == doctest::Approx(std::sqrt(s1)).epsilon(1e-12));
    // Negative scale divides: monotone in k since lambda_1 > 1 here.
    CHECK(sobolev_norm(c, -1.0) < n0);
    CHECK(sobolev_norm(c, 1.0) > n0);
}

TEST_CASE("transform rejects mismatched sample counts") {
    SpectralBasis basis = free_basis();
    std::vector<double> wrong(17, 0.0);
    CHECK_THROWS_AS(forward(basis, wrong), UsageError);
}

TEST_CASE("biorthogonality with a drift: weighted transform picks out phi modes") {
    CoefficientSet cs;
    cs.p = PiecewiseSmoothFn::constant(2.0);
    Grid grid(1024);
    SpectralBasis basis = build_basis(cs, 6, grid, 1e-11);
    // Take f = phi_2 itself; the weighted forward transform must return e_2.
    SpectralCoefficients c = forward(basis, basis.pairs[1].phi);
    for (std::size_t n = 0; n < c.size(); ++n)
        CHECK(c[n] == doctest::Approx(n == 1 ? 1.0 : 0.0).epsilon(1e-9));
}

TEST_CASE("parseval inequality for a profile with a tail") {
    SpectralBasis basis = free_basis(8);
    const Grid& grid = basis.g();
    // Triangle profile: slow sine decay, truncation leaves a positive tail.
    auto f = sample(grid, [](double x) { return x < 0.5 ? x : 1.0 - x; });
    SpectralCoefficients c = forward(basis, f);
    CHECK(sobolev_norm(c, 0.0) <= grid.l2_norm(f) + 1e-12);
    CHECK(sobolev_norm(c, 0.0) > 0.9 * grid.l2_norm(f));
}
