#include "slwave/evolution.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <string>

namespace slwave {

namespace {

// (gf)_n(s) = int_0^1 g(x) f(s,x) psi_n(x) dx by the basis quadrature.
double gf_mode(const SpectralBasis& basis, const SpaceTimeFn& f, std::size_t n, double s) {
    const Grid& grid = basis.g();
    const auto& w = grid.weights();
    const auto& psi = basis.pairs[n].psi;
    double acc = 0.0;
    for (std::size_t i = 0; i < grid.size(); ++i)
        acc += w[i] * basis.weight.g[i] * f(s, grid.node(i)) * psi[i];
    return acc;
}

}  // namespace

ForcingTerm make_forcing(const SpectralBasis& basis, SpaceTimeFn f, double T_end,
                         std::size_t time_samples) {
    if (!(T_end > 0.0)) throw ParameterError("forcing horizon must be positive");
    if (time_samples < 2) throw ParameterError("forcing time grid needs >= 2 samples");
    ForcingTerm ft;
    ft.f = std::move(f);
    ft.time_grid.resize(time_samples);
    for (std::size_t j = 0; j < time_samples; ++j)
        ft.time_grid[j] = T_end * static_cast<double>(j) / static_cast<double>(time_samples - 1);
    ft.mode_cache.resize(basis.N);
    for (std::size_t n = 0; n < basis.N; ++n) {
        ft.mode_cache[n].resize(time_samples);
        for (std::size_t j = 0; j < time_samples; ++j)
            ft.mode_cache[n][j] = gf_mode(basis, ft.f, n, ft.time_grid[j]);
    }
    return ft;
}

SeriesSolution solve_homogeneous(const SpectralBasis& basis, const InitialData& data,
                                 double T_end) {
    if (!(T_end > 0.0)) throw ParameterError("horizon T_end must be positive");
    SeriesSolution sol;
    sol.basis = &basis;
    sol.A = forward(basis, data.u0);
    sol.B = forward(basis, data.u1);
    sol.T_end = T_end;
    return sol;
}

SeriesSolution solve_forced(const SpectralBasis& basis, const InitialData& data,
                            const ForcingTerm& f, double T_end) {
    SeriesSolution sol = solve_homogeneous(basis, data, T_end);
    if (f.mode_cache.size() != basis.N)
        throw UsageError("forcing mode cache does not match the basis truncation");
    sol.forced = true;
    sol.forcing = f;

    const double dt_base =
        f.time_grid.size() > 1 ? f.time_grid[1] - f.time_grid[0] : T_end;
    sol.duhamel.resize(basis.N);
    for (std::size_t n = 0; n < basis.N; ++n) {
        const double w = std::sqrt(basis.pairs[n].lambda);
        const double period = 2.0 * std::numbers::pi / w;
        if (dt_base > 0.5 * period + 1e-12)
            throw ResolutionError("forcing time grid too coarse for mode n=" +
                                  std::to_string(n + 1) +
                                  " (needs >= 2 samples per period)");
        const double target = std::min(dt_base, period / 20.0);
        auto cells = static_cast<std::size_t>(std::ceil(T_end / target));
        cells = std::max<std::size_t>(cells, 2);

        auto& tab = sol.duhamel[n];
        tab.step = T_end / static_cast<double>(cells);
        tab.samples.resize(2 * cells + 1);
        for (std::size_t j = 0; j <= 2 * cells; ++j)
            tab.samples[j] = gf_mode(basis, f.f, n, 0.5 * tab.step * static_cast<double>(j));
        tab.cos_cum.resize(cells + 1);
        tab.sin_cum.resize(cells + 1);
        tab.cos_cum[0] = tab.sin_cum[0] = 0.0;
        for (std::size_t j = 0; j < cells; ++j) {
            const double s0 = tab.step * static_cast<double>(j);
            const double s1 = s0 + 0.5 * tab.step;
            const double s2 = s0 + tab.step;
            const double f0 = tab.samples[2 * j], f1 = tab.samples[2 * j + 1],
                         f2 = tab.samples[2 * j + 2];
            tab.cos_cum[j + 1] =
                tab.cos_cum[j] + (tab.step / 6.0) * (std::cos(w * s0) * f0 +
                                                     4.0 * std::cos(w * s1) * f1 +
                                                     std::cos(w * s2) * f2);
            tab.sin_cum[j + 1] =
                tab.sin_cum[j] + (tab.step / 6.0) * (std::sin(w * s0) * f0 +
                                                     4.0 * std::sin(w * s1) * f1 +
                                                     std::sin(w * s2) * f2);
        }
    }
    return sol;
}

void SeriesSolution::duhamel_at(std::size_t n, double t, double* C, double* S) const {
    const auto& tab = duhamel[n];
    const double w = std::sqrt(basis->pairs[n].lambda);
    const std::size_t cells = tab.cos_cum.size() - 1;
    t = std::clamp(t, 0.0, T_end);
    auto j = static_cast<std::size_t>(t / tab.step);
    j = std::min(j, cells);
    double tj = tab.step * static_cast<double>(j);
    if (tj > t) {
        --j;
        tj = tab.step * static_cast<double>(j);
    }
    *C = tab.cos_cum[j];
    *S = tab.sin_cum[j];
    const double rem = t - tj;
    if (rem > 1e-14) {
        // partial cell by Simpson with exact endpoint/midpoint samples.
        const double tm = tj + 0.5 * rem;
        const double f0 = tab.samples[2 * j];
        const double fm = gf_mode(*basis, forcing.f, n, tm);
        const double ft = gf_mode(*basis, forcing.f, n, t);
        *C += (rem / 6.0) *
              (std::cos(w * tj) * f0 + 4.0 * std::cos(w * tm) * fm + std::cos(w * t) * ft);
        *S += (rem / 6.0) *
              (std::sin(w * tj) * f0 + 4.0 * std::sin(w * tm) * fm + std::sin(w * t) * ft);
    }
}

std::vector<double> SeriesSolution::mode_values(double t) const {
    std::vector<double> v(basis->N);
    for (std::size_t n = 0; n < basis->N; ++n) {
        const double w = std::sqrt(basis->pairs[n].lambda);
        v[n] = A.values[n] * std::cos(w * t) + B.values[n] * std::sin(w * t) / w;
        if (forced) {
            double C = 0.0, S = 0.0;
            duhamel_at(n, t, &C, &S);
            v[n] += (std::sin(w * t) * C - std::cos(w * t) * S) / w;
        }
    }
    return v;
}

std::vector<double> SeriesSolution::mode_velocities(double t) const {
    std::vector<double> v(basis->N);
    for (std::size_t n = 0; n < basis->N; ++n) {
        const double w = std::sqrt(basis->pairs[n].lambda);
        v[n] = -A.values[n] * w * std::sin(w * t) + B.values[n] * std::cos(w * t);
        if (forced) {
            double C = 0.0, S = 0.0;
            duhamel_at(n, t, &C, &S);
            v[n] += std::cos(w * t) * C + std::sin(w * t) * S;
        }
    }
    return v;
}

double SeriesSolution::truncation_tail() const {
    double total = 0.0, tail = 0.0;
    const std::size_t N = basis->N;
    for (std::size_t n = 0; n < N; ++n) {
        const double e = B.values[n] * B.values[n] +
                         basis->pairs[n].lambda * A.values[n] * A.values[n];
        total += e;
        if (n + 4 >= N) tail += e;
    }
    return total > 0.0 ? tail / total : 0.0;
}

Snapshot evaluate(const SeriesSolution& sol, double t, unsigned channels) {
    if (sol.basis == nullptr) throw UsageError("evaluate: unsolved SeriesSolution");
    if (t < -1e-12 || t > sol.T_end + 1e-12)
        throw ParameterError("evaluation time outside [0, T_end]");
    const SpectralBasis& basis = *sol.basis;
    const Grid& grid = basis.g();
    const std::size_t sz = grid.size();

    Snapshot snap;
    snap.t = t;
    const std::vector<double> v = sol.mode_values(t);

    if (channels & kChannelU) {
        snap.u.assign(sz, 0.0);
        for (std::size_t n = 0; n < basis.N; ++n)
            for (std::size_t i = 0; i < sz; ++i) snap.u[i] += v[n] * basis.pairs[n].phi[i];
    }
    if (channels & kChannelDuDt) {
        const std::vector<double> vd = sol.mode_velocities(t);
        snap.du_dt.assign(sz, 0.0);
        for (std::size_t n = 0; n < basis.N; ++n)
            for (std::size_t i = 0; i < sz; ++i)
                snap.du_dt[i] += vd[n] * basis.pairs[n].phi[i];
    }
    if (channels & (kChannelDuDx | kChannelD2uDx2)) {
        const CoefficientSet& cs = basis.coefficients;
        std::vector<double> p_s(sz), nu_s(sz);
        for (std::size_t i = 0; i < sz; ++i) {
            p_s[i] = cs.p.value(grid.node(i));
            nu_s[i] = cs.nu.value(grid.node(i));
        }
        // phi_n' = [psi_quasi/||psi_tilde|| + (p/2 + nu) psi_n] / g.
        std::vector<std::vector<double>> dphi(basis.N, std::vector<double>(sz));
        for (std::size_t n = 0; n < basis.N; ++n) {
            const EigenPair& ep = basis.pairs[n];
            for (std::size_t i = 0; i < sz; ++i)
                dphi[n][i] = (ep.psi_quasi[i] / ep.norm_tilde +
                              (0.5 * p_s[i] + nu_s[i]) * ep.psi[i]) /
                             basis.weight.g[i];
        }
        if (channels & kChannelDuDx) {
            snap.du_dx.assign(sz, 0.0);
            for (std::size_t n = 0; n < basis.N; ++n)
                for (std::size_t i = 0; i < sz; ++i) snap.du_dx[i] += v[n] * dphi[n][i];
        }
        if (channels & kChannelD2uDx2) {
            if (cs.nu_has_jumps())
                throw CapabilityError(
                    "d2u_dx2 needs a function-valued q = nu'; nu has jumps");
            const PiecewiseSmoothFn q = cs.q_function();
            snap.d2u_dx2.assign(sz, 0.0);
            for (std::size_t n = 0; n < basis.N; ++n) {
                const EigenPair& ep = basis.pairs[n];
                for (std::size_t i = 0; i < sz; ++i) {
                    // phi_n'' = p phi_n' + (q - lambda_n) phi_n.
                    const double phi2 = p_s[i] * dphi[n][i] +
                                        (q.value(grid.node(i)) - ep.lambda) *
                                            basis.pairs[n].phi[i];
                    snap.d2u_dx2[i] += v[n] * phi2;
                }
            }
        }
    }
    return snap;
}

double spectral_energy(const SeriesSolution& sol, double t) {
    if (sol.basis == nullptr) throw UsageError("spectral_energy: unsolved SeriesSolution");
    if (sol.forced)
        throw CapabilityError("spectral energy is defined for the homogeneous evolution only");
    const std::vector<double> v = sol.mode_values(t);
    const std::vector<double> vd = sol.mode_velocities(t);
    double e = 0.0;
    for (std::size_t n = 0; n < sol.basis->N; ++n)
        e += vd[n] * vd[n] + sol.basis->pairs[n].lambda * v[n] * v[n];
    return e;
}

}  // namespace slwave
