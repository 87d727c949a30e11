#include "slwave/veryweak.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>

namespace slwave {

namespace {

constexpr std::size_t kTimeSamples = 33;
constexpr std::size_t kForcingSamples = 129;

struct LineFit {
    double intercept = 0.0;
    double slope = 0.0;
    double rms = 0.0;
};

LineFit least_squares(const std::vector<double>& x, const std::vector<double>& y) {
    const auto n = static_cast<double>(x.size());
    double sx = 0.0, sy = 0.0, sxx = 0.0, sxy = 0.0;
    for (std::size_t i = 0; i < x.size(); ++i) {
        sx += x[i];
        sy += y[i];
        sxx += x[i] * x[i];
        sxy += x[i] * y[i];
    }
    LineFit f;
    const double det = n * sxx - sx * sx;
    f.slope = (n * sxy - sx * sy) / det;
    f.intercept = (sy - f.slope * sx) / n;
    double r2 = 0.0;
    for (std::size_t i = 0; i < x.size(); ++i) {
        const double e = y[i] - (f.intercept + f.slope * x[i]);
        r2 += e * e;
    }
    f.rms = std::sqrt(r2 / n);
    return f;
}

LadderPoint make_point(const VwsProblem& prob, double eps, const MollifierSpec& kernel,
                       const Grid& grid, const RealFn& perturbation, double pert_order) {
    for (const auto& j : prob.p_jumps)
        if (j.location - eps <= 0.0 || j.location + eps >= 1.0)
            throw ParameterError("eps too large: mollified p-jump support escapes (0,1)");
    for (const auto& j : prob.nu_jumps)
        if (j.location - eps <= 0.0 || j.location + eps >= 1.0)
            throw ParameterError("eps too large: mollified nu-jump support escapes (0,1)");
    if (eps < 8.0 * grid.h())
        throw ParameterError(
            "eps below the stiffness budget of the integrator (need eps >= 8 h)");

    LadderPoint pt;
    pt.eps = eps;
    pt.p_m = MollifiedFn(prob.p, prob.p_jumps, eps, kernel);
    pt.nu_m = MollifiedFn(prob.nu, prob.nu_jumps, eps, kernel);
    pt.cs.p = pt.p_m.as_fn();
    pt.cs.p_prime = pt.p_m.derivative_fn();
    pt.cs.nu = pt.nu_m.as_fn();
    pt.cs.regularity = RegularityClass::classical;

    const std::size_t sz = grid.size();
    pt.data.u0.resize(sz);
    pt.data.u1.resize(sz);
    pt.data.u0_prime.resize(sz);
    pt.data.u0_second.resize(sz);
    pt.data.u1_prime.resize(sz);
    pt.data.u1_second.resize(sz);
    if (prob.mollify_data) {
        MollifiedFn u0m(prob.u0, {}, eps, kernel);
        MollifiedFn u1m(prob.u1, {}, eps, kernel);
        for (std::size_t i = 0; i < sz; ++i) {
            const double x = grid.node(i);
            pt.data.u0[i] = u0m.value(x);
            pt.data.u1[i] = u1m.value(x);
            pt.data.u0_prime[i] = u0m.derivative(x);
            pt.data.u0_second[i] = u0m.second(x);
            pt.data.u1_prime[i] = u1m.derivative(x);
            pt.data.u1_second[i] = u1m.second(x);
        }
    } else {
        for (std::size_t i = 0; i < sz; ++i) {
            const double x = grid.node(i);
            pt.data.u0[i] = prob.u0.value(x);
            pt.data.u1[i] = prob.u1.value(x);
            pt.data.u0_prime[i] = prob.u0.derivative(x);
            pt.data.u1_prime[i] = prob.u1.derivative(x);
            pt.data.u0_second[i] = 0.0;
            pt.data.u1_second[i] = 0.0;
        }
    }
    if (perturbation) {
        const double amp = std::pow(eps, pert_order);
        for (std::size_t i = 0; i < sz; ++i)
            pt.data.u0[i] += amp * perturbation(grid.node(i));
    }

    pt.basis = std::make_shared<SpectralBasis>(
        build_basis(pt.cs, prob.N_modes, grid, prob.tol));
    if (prob.f) {
        const ForcingTerm ft = make_forcing(*pt.basis, prob.f, prob.T_end, kForcingSamples);
        pt.sol = solve_forced(*pt.basis, pt.data, ft, prob.T_end);
    } else {
        pt.sol = solve_homogeneous(*pt.basis, pt.data, prob.T_end);
    }
    return pt;
}

}  // namespace

double sup_t_l2(const SeriesSolution& sol, unsigned channel) {
    double sup = 0.0;
    for (std::size_t j = 0; j < kTimeSamples; ++j) {
        const double t =
            sol.T_end * static_cast<double>(j) / static_cast<double>(kTimeSamples - 1);
        const Snapshot snap = evaluate(sol, t, channel);
        const std::vector<double>& field =
            (channel == kChannelDuDx) ? snap.du_dx
            : (channel == kChannelDuDt) ? snap.du_dt
                                        : snap.u;
        sup = std::max(sup, sol.basis->g().l2_norm(field));
    }
    return sup;
}

RegularizationNet build_net(const VwsProblem& prob, int k_min, int k_max,
                            const MollifierSpec& kernel, const RealFn& data_perturbation,
                            double perturbation_order) {
    if (k_min > k_max) throw ParameterError("empty ladder: k_min > k_max");
    if (k_max - k_min + 1 < 1) throw ParameterError("empty ladder");
    const Grid grid(prob.grid_m);

    RegularizationNet net;
    net.kernel_id = kernel.id();
    net.N_modes = prob.N_modes;
    net.problem = &prob;
    for (int k = k_min; k <= k_max; ++k) {
        const double eps = std::pow(2.0, -static_cast<double>(k));
        try {
            net.points.push_back(
                make_point(prob, eps, kernel, grid, data_perturbation, perturbation_order));
        } catch (const std::exception& e) {
            throw ParameterError("ladder point eps=" + std::to_string(eps) +
                                 " failed: " + e.what());
        }
    }
    return net;
}

ModerationReport fit_moderateness(const RegularizationNet& net, const std::string& norm_id,
                                  bool log_moderate) {
    if (net.points.size() < 4)
        throw ParameterError("moderateness fit needs >= 4 ladder points");
    ModerationReport rep;
    rep.norm_id = norm_id;
    rep.log_moderate = log_moderate;

    for (const auto& pt : net.points) {
        double v = 0.0;
        if (norm_id == "nu_prime_Linf" || norm_id == "q_eps_Linf")
            v = pt.nu_m.max_abs_derivative();
        else if (norm_id == "nu_Linf")
            v = function_norms(pt.cs.nu).linf;
        else if (norm_id == "p_Linf")
            v = function_norms(pt.cs.p).linf;
        else if (norm_id == "sup_u_L2")
            v = sup_t_l2(pt.sol, kChannelU);
        else if (norm_id == "sup_du_dx_L2")
            v = sup_t_l2(pt.sol, kChannelDuDx);
        else if (norm_id == "lambda1")
            v = pt.basis->pairs.front().lambda;
        else
            throw UsageError("unknown moderateness norm id: " + norm_id);
        if (!std::isfinite(v) || v <= 0.0)
            throw FitError("non-finite or vanishing norm '" + norm_id +
                           "' at eps=" + std::to_string(pt.eps));
        rep.epsilons.push_back(pt.eps);
        rep.values.push_back(v);
    }

    std::vector<double> xs, ys;
    for (std::size_t i = 0; i < rep.values.size(); ++i) {
        const double li = std::log(1.0 / rep.epsilons[i]);
        xs.push_back(log_moderate ? std::log(li) : li);
        ys.push_back(std::log(rep.values[i]));
    }
    const LineFit f = least_squares(xs, ys);
    rep.C = std::exp(f.intercept);
    rep.N = f.slope;
    rep.residual = f.rms;
    return rep;
}

DecayFit uniqueness_experiment(const VwsProblem& prob, const MollifierSpec& kernelA,
                               const MollifierSpec& kernelB, double M, int k_min, int k_max) {
    const RealFn pert = [](double x) { return std::sin(std::numbers::pi * x); };
    const RegularizationNet netA = build_net(prob, k_min, k_max, kernelA);
    const RegularizationNet netB = build_net(prob, k_min, k_max, kernelB, pert, M);

    DecayFit fit;
    std::vector<double> input_dist;
    for (std::size_t i = 0; i < netA.points.size(); ++i) {
        const LadderPoint& a = netA.points[i];
        const LadderPoint& b = netB.points[i];
        const Grid& grid = a.basis->g();
        double sup = 0.0;
        for (std::size_t j = 0; j < kTimeSamples; ++j) {
            const double t =
                prob.T_end * static_cast<double>(j) / static_cast<double>(kTimeSamples - 1);
            const Snapshot sa = evaluate(a.sol, t, kChannelU);
            const Snapshot sb = evaluate(b.sol, t, kChannelU);
            std::vector<double> d(grid.size());
            for (std::size_t q = 0; q < grid.size(); ++q) d[q] = sa.u[q] - sb.u[q];
            sup = std::max(sup, grid.l2_norm(d));
        }
        fit.epsilons.push_back(a.eps);
        fit.distances.push_back(sup);

        std::vector<double> d0(grid.size());
        for (std::size_t q = 0; q < grid.size(); ++q) d0[q] = a.data.u0[q] - b.data.u0[q];
        input_dist.push_back(grid.l2_norm(d0));
    }

    const double floor_val = 1e-250;
    const bool all_zero =
        std::all_of(fit.distances.begin(), fit.distances.end(),
                    [&](double d) { return d < floor_val; });
    if (all_zero) {
        fit.M_out = std::numeric_limits<double>::infinity();
        fit.C = 0.0;
        fit.residual = 0.0;
    } else {
        std::vector<double> xs, ys;
        for (std::size_t i = 0; i < fit.distances.size(); ++i) {
            xs.push_back(std::log(1.0 / fit.epsilons[i]));
            ys.push_back(std::log(std::max(fit.distances[i], floor_val)));
        }
        const LineFit lf = least_squares(xs, ys);
        fit.C = std::exp(lf.intercept);
        fit.M_out = -lf.slope;  // distances ~ C eps^{M_out}
        fit.residual = lf.rms;
    }

    {
        std::vector<double> xs, ys;
        bool ok = true;
        for (std::size_t i = 0; i < input_dist.size(); ++i) {
            if (input_dist[i] < floor_val) ok = false;
            xs.push_back(std::log(1.0 / fit.epsilons[i]));
            ys.push_back(std::log(std::max(input_dist[i], floor_val)));
        }
        fit.input_slope =
            ok ? -least_squares(xs, ys).slope : std::numeric_limits<double>::infinity();
    }

    const ModerationReport amp = fit_moderateness(netA, "sup_u_L2");
    fit.amplification = std::max(0.0, amp.N);
    return fit;
}

std::vector<ConsistencyRow> consistency_experiment(const VwsProblem& prob, int k_min,
                                                   int k_max, const MollifierSpec& kernel) {
    if (!prob.p_jumps.empty() || !prob.nu_jumps.empty())
        throw ParameterError("consistency experiment requires classical coefficients");

    const Grid grid(prob.grid_m);
    CoefficientSet exact;
    exact.p = prob.p;
    exact.p_prime = prob.p_prime;
    exact.nu = prob.nu;
    const auto basis =
        std::make_shared<SpectralBasis>(build_basis(exact, prob.N_modes, grid, prob.tol));
    InitialData data;
    data.u0.resize(grid.size());
    data.u1.resize(grid.size());
    for (std::size_t i = 0; i < grid.size(); ++i) {
        data.u0[i] = prob.u0.value(grid.node(i));
        data.u1[i] = prob.u1.value(grid.node(i));
    }
    SeriesSolution ref;
    if (prob.f) {
        const ForcingTerm ft = make_forcing(*basis, prob.f, prob.T_end, kForcingSamples);
        ref = solve_forced(*basis, data, ft, prob.T_end);
    } else {
        ref = solve_homogeneous(*basis, data, prob.T_end);
    }

    const RegularizationNet net = build_net(prob, k_min, k_max, kernel);
    std::vector<ConsistencyRow> rows;
    for (const auto& pt : net.points) {
        double sup = 0.0;
        for (std::size_t j = 0; j < kTimeSamples; ++j) {
            const double t =
                prob.T_end * static_cast<double>(j) / static_cast<double>(kTimeSamples - 1);
            const Snapshot sr = evaluate(ref, t, kChannelU);
            const Snapshot se = evaluate(pt.sol, t, kChannelU);
            std::vector<double> d(grid.size());
            for (std::size_t q = 0; q < grid.size(); ++q) d[q] = sr.u[q] - se.u[q];
            sup = std::max(sup, grid.l2_norm(d));
        }
        rows.push_back({pt.eps, sup});
    }
    return rows;
}

}  // namespace slwave
