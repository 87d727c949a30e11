#include <doctest.h>

#include <cmath>
#include <numbers>

#include "slwave/evolution.hpp"

using namespace slwave;
constexpr double PI = std::numbers::pi;

namespace {

SpectralBasis free_basis(std::size_t N = 8, std::size_t m = 1024) {
    CoefficientSet cs;
    Grid grid(m);
    return build_basis(cs, N, grid, 1e-11);
}

InitialData pluck(const Grid& grid) {
    InitialData d;
    d.u0.resize(grid.size());
    d.u1.assign(grid.size(), 0.0);
    for (std::size_t i = 0; i < grid.size(); ++i)
        d.u0[i] = std::sin(PI * grid.node(i));
    return d;
}

double sup_err(const Grid& grid, const std::vector<double>& got,
               const std::function<double(double)>& want) {
    double e = 0.0;
    for (std::size_t i = 0; i < grid.size(); ++i)
        e = std::max(e, std::abs(got[i] - want(grid.node(i))));
    return e;
}

}  // namespace

TEST_CASE("standing wave: u = cos(pi t) sin(pi x)") {
    SpectralBasis basis = free_basis();
    const Grid& grid = basis.g();
    SeriesSolution sol = solve_homogeneous(basis, pluck(grid), 1.0);
    for (double t : {0.0, 0.2, 0.5, 0.77, 1.0}) {
        Snapshot s = evaluate(sol, t, kChannelU | kChannelDuDt | kChannelDuDx);
        CHECK(sup_err(grid, s.u,
                      [t](double x) { return std::cos(PI * t) * std::sin(PI * x); }) < 1e-10);
        CHECK(sup_err(grid, s.du_dt, [t](double x) {
                  return -PI * std::sin(PI * t) * std::sin(PI * x);
              }) < 1e-9);
        CHECK(sup_err(grid, s.du_dx, [t](double x) {
                  return PI * std::cos(PI * t) * std::cos(PI * x);
              }) < 1e-7);
        // Dirichlet boundary exactly.
        CHECK(std::abs(s.u.front()) < 1e-13);
        CHECK(std::abs(s.u.back()) < 1e-13);
    }
}

TEST_CASE("initial data is reproduced at t = 0") {
    SpectralBasis basis = free_basis();
    const Grid& grid = basis.g();
    InitialData d = pluck(grid);
    for (std::size_t i = 0; i < grid.size(); ++i)
        d.u1[i] = 0.4 * std::sin(2 * PI * grid.node(i));
    SeriesSolution sol = solve_homogeneous(basis, d, 1.0);
    Snapshot s = evaluate(sol, 0.0, kChannelU | kChannelDuDt);
    CHECK(sup_err(grid, s.u, [](double x) { return std::sin(PI * x); }) < 1e-11);
    CHECK(sup_err(grid, s.du_dt, [](double x) { return 0.4 * std::sin(2 * PI * x); }) < 1e-11);
}

TEST_CASE("spectral energy is conserved and additive across modes") {
    SpectralBasis basis = free_basis();
    const Grid& grid = basis.g();
    InitialData d = pluck(grid);
    for (std::size_t i = 0; i < grid.size(); ++i)
        d.u1[i] = std::sin(PI * grid.node(i));
    SeriesSolution sol = solve_homogeneous(basis, d, 2.0);
    // E = lambda_1 A_1^2 + B_1^2 = pi^2/2 + 1/2.
    const double want = PI * PI / 2.0 + 0.5;
    const double e0 = spectral_energy(sol, 0.0);
    CHECK(e0 == doctest::Approx(want).epsilon(1e-11));
    for (double t : {0.3, 1.1, 2.0})
        CHECK(spectral_energy(sol, t) == doctest::Approx(e0).epsilon(1e-12));
}

TEST_CASE("resonant forcing: u = (1 - cos(pi t)) sin(pi x) / pi^2") {
    SpectralBasis basis = free_basis();
    const Grid& grid = basis.g();
    InitialData zero;
    zero.u0.assign(grid.size(), 0.0);
    zero.u1.assign(grid.size(), 0.0);
    ForcingTerm ft = make_forcing(
        basis, [](double, double x) { return std::sin(PI * x); }, 1.0, 129);
    SeriesSolution sol = solve_forced(basis, zero, ft, 1.0);
    for (double t : {0.25, 0.6, 1.0}) {
        Snapshot s = evaluate(sol, t, kChannelU);
        CHECK(sup_err(grid, s.u, [t](double x) {
                  return (1.0 - std::cos(PI * t)) / (PI * PI) * std::sin(PI * x);
              }) < 1e-8);
    }
}

TEST_CASE("zero forcing reduces to the homogeneous solution") {
    SpectralBasis basis = free_basis();
    const Grid& grid = basis.g();
    InitialData d = pluck(grid);
    SeriesSolution hom = solve_homogeneous(basis, d, 1.0);
    ForcingTerm ft = make_forcing(basis, [](double, double) { return 0.0; }, 1.0, 65);
    SeriesSolution frc = solve_forced(basis, d, ft, 1.0);
    Snapshot a = evaluate(hom, 0.7, kChannelU);
    Snapshot b = evaluate(frc, 0.7, kChannelU);
    CHECK(sup_err(grid, b.u, [&](double x) {
              return a.u[static_cast<std::size_t>(std::llround(x * grid.m()))];
          }) < 1e-12);
}

TEST_CASE("under-resolved forcing cache is refused") {
    SpectralBasis basis = free_basis(8);
    // 3 samples over T = 1 cannot resolve mode 8 (period 1/4).
    ForcingTerm ft = make_forcing(
        basis, [](double t, double x) { return t * std::sin(PI * x); }, 1.0, 3);
    InitialData zero;
    zero.u0.assign(basis.g().size(), 0.0);
    zero.u1.assign(basis.g().size(), 0.0);
    CHECK_THROWS_AS(solve_forced(basis, zero, ft, 1.0), ResolutionError);
}

TEST_CASE("second space derivative needs a function-valued q") {
    CoefficientSet cs;
    cs.nu = PiecewiseSmoothFn::heaviside(0.5, 1.0);
    Grid grid(1024);
    SpectralBasis basis = build_basis(cs, 4, grid, 1e-10);
    SeriesSolution sol = solve_homogeneous(basis, pluck(grid), 1.0);
    CHECK_THROWS_AS(evaluate(sol, 0.5, kChannelD2uDx2), CapabilityError);
    // The other channels remain available.
    Snapshot s = evaluate(sol, 0.5, kChannelU | kChannelDuDx);
    CHECK(s.u.size() == grid.size());
}

TEST_CASE("second derivative channel satisfies the operator identity") {
    CoefficientSet cs;
    cs.p = PiecewiseSmoothFn::constant(1.0);
    Grid grid(1024);
    SpectralBasis basis = build_basis(cs, 4, grid, 1e-11);
    SeriesSolution sol = solve_homogeneous(basis, pluck(grid), 1.0);
    Snapshot s = evaluate(sol, 0.3, kChannelU | kChannelDuDx | kChannelD2uDx2);
    // Spot check u'' against centered differences of the u channel.
    const double h = grid.h();
    for (std::size_t i : {200u, 512u, 800u}) {
        const double fd = (s.u[i + 1] - 2 * s.u[i] + s.u[i - 1]) / (h * h);
        CHECK(s.d2u_dx2[i] == doctest::Approx(fd).epsilon(1e-5));
    }
}

TEST_CASE("spectral energy is undefined for forced solutions") {
    SpectralBasis basis = free_basis();
    InitialData zero;
    zero.u0.assign(basis.g().size(), 0.0);
    zero.u1.assign(basis.g().size(), 0.0);
    ForcingTerm ft = make_forcing(
        basis, [](double, double x) { return std::sin(PI * x); }, 1.0, 65);
    SeriesSolution sol = solve_forced(basis, zero, ft, 1.0);
    CHECK_THROWS_AS(spectral_energy(sol, 0.5), CapabilityError);
}
