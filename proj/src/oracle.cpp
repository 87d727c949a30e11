#include "slwave/oracle.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <string>

namespace slwave {

namespace {

constexpr double kPi = std::numbers::pi;

// Tridiagonal symmetric matrix: diag[i] + off * (sub/super), size n.
struct Tridiag {
    std::vector<double> diag;
    double off = 0.0;
};

// Thomas solve of (T - shift I) y = rhs with a pivot floor.
std::vector<double> shifted_solve(const Tridiag& T, double shift, std::vector<double> rhs) {
    const std::size_t n = T.diag.size();
    std::vector<double> c(n);  // modified superdiagonal
    double piv = T.diag[0] - shift;
    if (std::abs(piv) < 1e-300) piv = piv < 0 ? -1e-300 : 1e-300;
    c[0] = T.off / piv;
    rhs[0] /= piv;
    for (std::size_t i = 1; i < n; ++i) {
        piv = (T.diag[i] - shift) - T.off * c[i - 1];
        if (std::abs(piv) < 1e-300) piv = piv < 0 ? -1e-300 : 1e-300;
        c[i] = T.off / piv;
        rhs[i] = (rhs[i] - T.off * rhs[i - 1]) / piv;
    }
    for (std::size_t i = n - 1; i-- > 0;) rhs[i] -= c[i] * rhs[i + 1];
    return rhs;
}

double rayleigh(const Tridiag& T, const std::vector<double>& x) {
    const std::size_t n = T.diag.size();
    double num = 0.0, den = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        double ax = T.diag[i] * x[i];
        if (i > 0) ax += T.off * x[i - 1];
        if (i + 1 < n) ax += T.off * x[i + 1];
        num += x[i] * ax;
        den += x[i] * x[i];
    }
    return num / den;
}

void normalize(std::vector<double>& x) {
    double s = 0.0;
    for (double v : x) s += v * v;
    s = std::sqrt(s);
    if (s > 0.0)
        for (double& v : x) v /= s;
}

}  // namespace

std::vector<double> fd_eigen(const CoefficientSet& cs, std::size_t count, std::size_t m) {
    if (m < 16) throw ParameterError("fd_eigen mesh too coarse");
    const double h = 1.0 / static_cast<double>(m);
    const std::size_t n = m - 1;  // interior nodes

    // Transformed potential p^2/4 - p'/2 + q at interior nodes; Dirac terms
    // of q lumped as height/h at the nearest node.
    Tridiag T;
    T.off = -1.0 / (h * h);
    T.diag.resize(n);
    const PiecewiseSmoothFn q = cs.q_function();
    for (std::size_t i = 0; i < n; ++i) {
        const double x = h * static_cast<double>(i + 1);
        const double p = cs.p.value(x);
        T.diag[i] = 2.0 / (h * h) + 0.25 * p * p - 0.5 * cs.p_prime.value(x) + q.value(x);
    }
    for (const auto& j : cs.q_deltas()) {
        auto idx = static_cast<std::size_t>(std::llround(j.location / h));
        idx = std::clamp<std::size_t>(idx, 1, n);
        T.diag[idx - 1] += j.height / h;
    }

    std::vector<double> lambdas;
    lambdas.reserve(count);
    for (std::size_t mode = 1; mode <= count; ++mode) {
        // Inverse iteration seeded at the asymptotic guess, started from the
        // free-case mode shape, refined with Rayleigh shifts.
        std::vector<double> x(n);
        for (std::size_t i = 0; i < n; ++i)
            x[i] = std::sin(kPi * static_cast<double>(mode) * h * static_cast<double>(i + 1));
        normalize(x);
        double shift = kPi * kPi * static_cast<double>(mode) * static_cast<double>(mode);
        double prev = shift;
        bool converged = false;
        for (int it = 0; it < 200; ++it) {
            x = shifted_solve(T, shift, x);
            normalize(x);
            const double mu = rayleigh(T, x);
            if (it >= 2) shift = mu;
            if (std::abs(mu - prev) <= 1e-12 * std::max(1.0, std::abs(mu))) {
                shift = mu;
                converged = true;
                break;
            }
            prev = mu;
        }
        if (!converged)
            throw OracleError("inverse iteration did not converge for mode n=" +
                              std::to_string(mode));
        lambdas.push_back(shift);
    }
    return lambdas;
}

FDSolution fd_wave(const CoefficientSet& cs, const InitialData& data, const SpaceTimeFn& f,
                   double T_end, double h, double k,
                   const std::vector<double>& snapshot_times) {
    if (cs.nu_has_jumps())
        throw OracleError("fd_wave requires classical coefficients (no Dirac terms in q)");
    if (!(h > 0.0 && k > 0.0 && T_end > 0.0)) throw ParameterError("fd_wave: bad step sizes");
    if (k > 0.9 * h + 1e-15) throw ParameterError("fd_wave: CFL violated, need k <= 0.9 h");

    const auto m = static_cast<std::size_t>(std::llround(1.0 / h));
    if (std::abs(m * h - 1.0) > 1e-12) throw ParameterError("fd_wave: h must divide 1");
    if (data.u0.size() != m + 1 || data.u1.size() != m + 1)
        throw UsageError("fd_wave: data must be sampled on the oracle mesh");

    const auto steps = static_cast<std::size_t>(std::ceil(T_end / k - 1e-12));
    const double dt = T_end / static_cast<double>(steps);

    FDSolution out;
    out.h = h;
    out.k = dt;

    // Snap requested times to step indices.
    std::vector<std::size_t> snap_idx;
    for (double ts : snapshot_times) {
        auto j = static_cast<std::size_t>(std::llround(ts / dt));
        snap_idx.push_back(std::min(j, steps));
    }

    const PiecewiseSmoothFn q = cs.q_function();
    std::vector<double> p_s(m + 1), q_s(m + 1);
    for (std::size_t i = 0; i <= m; ++i) {
        const double x = h * static_cast<double>(i);
        p_s[i] = cs.p.value(x);
        q_s[i] = q.value(x);
    }

    auto apply_L = [&](const std::vector<double>& u, std::size_t i) {
        return (u[i + 1] - 2.0 * u[i] + u[i - 1]) / (h * h) -
               p_s[i] * (u[i + 1] - u[i - 1]) / (2.0 * h) - q_s[i] * u[i];
    };

    std::vector<double> prev = data.u0, cur(m + 1), next(m + 1);
    prev.front() = prev.back() = 0.0;
    double u_scale = 1.0;
    for (double v : prev) u_scale = std::max(u_scale, std::abs(v));

    // First step: Taylor expansion using u1 and the PDE at t = 0.
    cur.front() = cur.back() = 0.0;
    for (std::size_t i = 1; i < m; ++i)
        cur[i] = prev[i] + dt * data.u1[i] +
                 0.5 * dt * dt * (apply_L(prev, i) + (f ? f(0.0, h * static_cast<double>(i)) : 0.0));

    auto record = [&](std::size_t j, const std::vector<double>& u) {
        for (std::size_t si = 0; si < snap_idx.size(); ++si) {
            if (snap_idx[si] == j) {
                out.times.push_back(dt * static_cast<double>(j));
                out.fields.push_back(u);
            }
        }
    };
    record(0, prev);
    record(1, cur);

    for (std::size_t j = 1; j < steps; ++j) {
        const double t = dt * static_cast<double>(j);
        next.front() = next.back() = 0.0;
        double peak = 0.0;
        for (std::size_t i = 1; i < m; ++i) {
            next[i] = 2.0 * cur[i] - prev[i] +
                      dt * dt * (apply_L(cur, i) +
                                 (f ? f(t, h * static_cast<double>(i)) : 0.0));
            peak = std::max(peak, std::abs(next[i]));
        }
        if (peak > 1e6 * u_scale)
            throw OracleError("fd_wave instability detected at t=" + std::to_string(t));
        std::swap(prev, cur);
        std::swap(cur, next);
        record(j + 1, cur);
    }
    return out;
}

}  // namespace slwave
