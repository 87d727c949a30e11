#include "slwave/estimates.hpp"

#include <algorithm>
#include <array>
#include <cmath>

namespace slwave {

namespace {

const std::array<const char*, 18> kIds = {
    "est1",   "est2",   "est3",   "est4",   "est5",   "ec1",     "ec2",     "ec3",     "ec4",
    "es-nh1", "es-nh2", "es-nh3", "es-nh4", "es-nh5", "ec-nh1",  "ec-nh2",  "ec-nh3",  "ec-nh4"};

bool is_nonhomogeneous(const std::string& id) { return id.rfind("es-nh", 0) == 0 || id.rfind("ec-nh", 0) == 0; }
bool is_corollary(const std::string& id) { return id.rfind("ec", 0) == 0; }

double sq(double v) { return v * v; }

// || c ||^2 in the W^k scale.
double wk_sq(const SpectralCoefficients& c, double k) { return sq(sobolev_norm(c, k)); }

double sample_l2_sq(const Grid& grid, const std::vector<double>& f) {
    return sq(grid.l2_norm(f));
}

}  // namespace

bool is_known_estimate(const std::string& id) {
    return std::find_if(kIds.begin(), kIds.end(),
                        [&](const char* s) { return id == s; }) != kIds.end();
}

EstimateReport evaluate_estimate(const std::string& id, const SeriesSolution& sol,
                                 const InitialData& data, double sobolev_k,
                                 std::size_t t_count) {
    if (!is_known_estimate(id)) throw UsageError("unknown estimate id: " + id);
    if (sol.basis == nullptr) throw UsageError("evaluate_estimate: unsolved solution");
    const SpectralBasis& basis = *sol.basis;
    const Grid& grid = basis.g();
    const CoefficientSet& cs = basis.coefficients;
    const double T = sol.T_end;

    const bool nh = is_nonhomogeneous(id);
    if (nh && !sol.forced)
        throw CapabilityError(id + " needs a forced solution (no forcing attached)");

    EstimateReport rep;
    rep.estimate_id = id;
    rep.sobolev_k = sobolev_k;

    // --- norm inventory -------------------------------------------------
    auto& inv = rep.norm_inventory;
    const FnNorms pn = function_norms(cs.p);
    const FnNorms ppn = function_norms(cs.p_prime);
    const FnNorms nun = function_norms(cs.nu);
    inv["p_L1"] = pn.l1;
    inv["p_L2"] = pn.l2;
    inv["p_Linf"] = pn.linf;
    inv["p_prime_L1"] = ppn.l1;
    inv["p_prime_L2"] = ppn.l2;
    inv["nu_L2"] = nun.l2;
    inv["nu_Linf"] = nun.linf;

    const bool needs_q = (id == "est4" || id == "es-nh4" || is_corollary(id)) &&
                         !(id == "ec1" || id == "ec-nh1");
    double q_inf = 0.0, pp_inf = 0.0;
    if (needs_q) {
        if (cs.nu_has_jumps())
            throw CapabilityError(id + " needs ||q||_Linf but q = nu' has Dirac terms");
        const FnNorms qn = function_norms(cs.q_function());
        q_inf = qn.linf;
        pp_inf = ppn.linf;
        inv["q_Linf"] = q_inf;
        inv["p_prime_Linf"] = pp_inf;
    }
    double g_inf = 0.0;
    for (double v : basis.weight.g) g_inf = std::max(g_inf, std::abs(v));
    inv["g_Linf"] = g_inf;

    // Weighted-data Sobolev terms: A/B are exactly the psi-coefficients of
    // g u_0 and g u_1.
    auto W_A = [&](double k) { return wk_sq(sol.A, k); };
    auto W_B = [&](double k) { return wk_sq(sol.B, k); };

    // Raw-data L2 terms for the corollary-level ids.
    double u0_sq = 0.0, u1_sq = 0.0, u0p_sq = 0.0, u0pp_sq = 0.0, u1p_sq = 0.0, u1pp_sq = 0.0;
    if (is_corollary(id)) {
        u0_sq = sample_l2_sq(grid, data.u0);
        u1_sq = sample_l2_sq(grid, data.u1);
        inv["u0_L2"] = std::sqrt(u0_sq);
        inv["u1_L2"] = std::sqrt(u1_sq);
        if (id != "ec1" && id != "ec-nh1") {
            if (!data.has_data_derivatives())
                throw CapabilityError(id + " needs u0', u0'', u1', u1'' samples");
            u0p_sq = sample_l2_sq(grid, data.u0_prime);
            u0pp_sq = sample_l2_sq(grid, data.u0_second);
            u1p_sq = sample_l2_sq(grid, data.u1_prime);
            u1pp_sq = sample_l2_sq(grid, data.u1_second);
            inv["u0_prime_L2"] = std::sqrt(u0p_sq);
            inv["u0_second_L2"] = std::sqrt(u0pp_sq);
            inv["u1_prime_L2"] = std::sqrt(u1p_sq);
            inv["u1_second_L2"] = std::sqrt(u1pp_sq);
        }
    }

    // Forcing norms.
    double F_sq = 0.0;   // ||f||^2_{C([0,T],L2)}
    double F1_sq = 0.0;  // ||f||^2_{C1([0,T],L2)}
    double Gk_sq = 0.0;  // ||gf||^2_{C([0,T],W^{k-1})}
    if (nh) {
        const auto& tg = sol.forcing.time_grid;
        std::vector<double> fx(grid.size());
        std::vector<double> fnorm(tg.size());
        for (std::size_t j = 0; j < tg.size(); ++j) {
            for (std::size_t i = 0; i < grid.size(); ++i)
                fx[i] = sol.forcing.f(tg[j], grid.node(i));
            fnorm[j] = grid.l2_norm(fx);
            F_sq = std::max(F_sq, sq(fnorm[j]));
        }
        inv["f_C_L2"] = std::sqrt(F_sq);
        if (id == "es-nh4" || id == "ec-nh4") {
            // d/dt f by finite differences of the L2-valued samples on the
            // forcing time grid (one-sided at the ends).
            std::vector<double> dfx(grid.size());
            for (std::size_t j = 0; j < tg.size(); ++j) {
                const std::size_t jm = j > 0 ? j - 1 : j;
                const std::size_t jp = j + 1 < tg.size() ? j + 1 : j;
                const double span = tg[jp] - tg[jm];
                for (std::size_t i = 0; i < grid.size(); ++i) {
                    const double x = grid.node(i);
                    dfx[i] = span > 0.0
                                 ? (sol.forcing.f(tg[jp], x) - sol.forcing.f(tg[jm], x)) / span
                                 : 0.0;
                }
                F1_sq = std::max(F1_sq, sq(fnorm[j] + grid.l2_norm(dfx)));
            }
            inv["f_C1_L2"] = std::sqrt(F1_sq);
        }
        if (id == "es-nh5") {
            for (std::size_t j = 0; j < tg.size(); ++j) {
                double s = 0.0;
                for (std::size_t n = 0; n < basis.N; ++n)
                    s += std::pow(basis.pairs[n].lambda, sobolev_k - 1.0) *
                         sq(sol.forcing.mode_cache[n][j]);
                Gk_sq = std::max(Gk_sq, s);
            }
            inv["gf_C_Wkm1"] = std::sqrt(Gk_sq);
        }
    }

    // --- right-hand side -------------------------------------------------
    const double E1 = std::exp(pn.l1);
    const double E2 = std::exp(2.0 * pn.l1);
    const double K1 = 1.0 + sq(nun.l2) * (sq(nun.l2) + sq(pn.l2) + sq(ppn.l1));
    const double K2 = sq(pn.linf) + sq(nun.linf);
    const double P = sq(sq(pn.linf)) + sq(pp_inf) + sq(q_inf);
    const double D = u0pp_sq + sq(pn.linf) * u0p_sq + P * u0_sq + u1_sq;
    const double Fterm = 2.0 * T * T * sq(g_inf) * F_sq;

    double rhs = 0.0;
    if (id == "est1")
        rhs = E1 * (W_A(0) + W_B(-1));
    else if (id == "est2")
        rhs = E1 * (W_A(1) + W_B(0));
    else if (id == "est3")
        rhs = E1 * (K1 * (W_A(1) + W_B(0)) + K2 * (W_A(0) + W_B(-1)));
    else if (id == "est4")
        rhs = E1 * (sq(pn.linf) * (K1 * (W_A(1) + W_B(0)) + K2 * (W_A(0) + W_B(-1))) +
                    sq(q_inf) * (W_A(0) + W_B(-1)) + W_A(2) + W_B(1));
    else if (id == "est5")
        rhs = E1 * (W_A(sobolev_k) + W_B(sobolev_k - 1.0));
    else if (id == "ec1")
        rhs = E2 * (u0_sq + u1_sq);
    else if (id == "ec2")
        rhs = E2 * D;
    else if (id == "ec3")
        rhs = E2 * (K1 * D + K2 * (u0_sq + u1_sq));
    else if (id == "ec4")
        rhs = E2 * (K1 * D + K2 * (u0_sq + u1_sq) + u0pp_sq + u1pp_sq +
                    sq(pn.linf) * (u0p_sq + u1p_sq) + P * (u0_sq + u1_sq));
    else if (id == "es-nh1")
        rhs = E1 * (W_A(0) + W_B(-1) + Fterm);
    else if (id == "es-nh2")
        rhs = E1 * (W_A(1) + W_B(0) + Fterm);
    else if (id == "es-nh3")
        rhs = E1 * (K1 * (W_A(1) + W_B(0)) + K2 * (W_A(0) + W_B(-1)) + (K1 + K2) * Fterm);
    else if (id == "es-nh4")
        rhs = E1 * (sq(pn.linf) * (K1 * (W_A(1) + W_B(0)) + K2 * (W_A(0) + W_B(-1))) +
                    sq(q_inf) * (W_A(0) + W_B(-1)) + W_A(2) + W_B(1) +
                    (sq(pn.linf) * (K1 + K2) + sq(q_inf)) * sq(g_inf) *
                        (2.0 * T * T * F_sq + T * T * F1_sq));
    else if (id == "es-nh5")
        rhs = E1 * (W_A(sobolev_k) + W_B(sobolev_k - 1.0) + 2.0 * T * T * Gk_sq);
    else if (id == "ec-nh1")
        rhs = E2 * (u0_sq + u1_sq + 2.0 * T * T * F_sq);
    else if (id == "ec-nh2")
        rhs = E2 * (D + Fterm);
    else if (id == "ec-nh3")
        rhs = E2 * (K1 * D + K2 * (u0_sq + u1_sq) + (K1 + K2) * 2.0 * T * T * F_sq);
    else if (id == "ec-nh4")
        rhs = E2 * (K1 * D + K2 * (u0_sq + u1_sq) + u0pp_sq + u1pp_sq +
                    sq(pn.linf) * (u0p_sq + u1p_sq) + P * (u0_sq + u1_sq) +
                    (sq(pn.linf) * (K1 + K2) + sq(q_inf)) * 2.0 * T * T * F_sq +
                    T * T * F1_sq);
    rep.rhs = rhs;

    // --- left-hand side --------------------------------------------------
    unsigned channel = kChannelU;
    if (id == "est2" || id == "ec2" || id == "es-nh2" || id == "ec-nh2")
        channel = kChannelDuDt;
    else if (id == "est3" || id == "ec3" || id == "es-nh3" || id == "ec-nh3")
        channel = kChannelDuDx;
    else if (id == "est4" || id == "ec4" || id == "es-nh4" || id == "ec-nh4")
        channel = kChannelD2uDx2;
    const bool wk_lhs = (id == "est5" || id == "es-nh5");

    if (t_count < 2) throw ParameterError("estimate needs >= 2 time samples");
    rep.t_samples.resize(t_count);
    rep.lhs.resize(t_count);
    for (std::size_t j = 0; j < t_count; ++j) {
        const double t = T * static_cast<double>(j) / static_cast<double>(t_count - 1);
        rep.t_samples[j] = t;
        if (wk_lhs) {
            const std::vector<double> v = sol.mode_values(t);
            double s = 0.0;
            for (std::size_t n = 0; n < basis.N; ++n)
                s += std::pow(basis.pairs[n].lambda, sobolev_k) * sq(v[n]);
            rep.lhs[j] = s;
        } else {
            const Snapshot snap = evaluate(sol, t, channel);
            const std::vector<double>& field = (channel == kChannelU)        ? snap.u
                                               : (channel == kChannelDuDt)   ? snap.du_dt
                                               : (channel == kChannelDuDx)   ? snap.du_dx
                                                                             : snap.d2u_dx2;
            rep.lhs[j] = sample_l2_sq(grid, field);
        }
    }

    rep.ratio_max = 0.0;
    for (double l : rep.lhs)
        rep.ratio_max = std::max(rep.ratio_max, rhs > 0.0 ? l / rhs : (l > 0.0 ? INFINITY : 0.0));
    return rep;
}

}  // namespace slwave
