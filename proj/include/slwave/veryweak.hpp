#pragma once

#include <memory>
#include <string>
#include <vector>

#include "slwave/estimates.hpp"
#include "slwave/mollifier.hpp"

namespace slwave {

// A wave problem whose coefficients and data may carry jumps; the epsilon
// ladder replaces every ingredient by its mollification and solves the
// resulting classical problems.
struct VwsProblem {
    PiecewiseSmoothFn p;        // smooth part of p
    PiecewiseSmoothFn p_prime;  // its piecewise derivative
    std::vector<SingularDescriptor::Jump> p_jumps;  // jumps of p (Dirac terms in p')
    PiecewiseSmoothFn nu;       // smooth part of nu
    std::vector<SingularDescriptor::Jump> nu_jumps; // jumps of nu (Dirac terms in q)

    PiecewiseSmoothFn u0;       // initial displacement (pieces used for splitting)
    PiecewiseSmoothFn u1;       // initial velocity
    SpaceTimeFn f;              // optional forcing; null = homogeneous

    double T_end = 1.0;
    std::size_t N_modes = 16;
    std::size_t grid_m = 4096;
    double tol = 1e-10;
    bool mollify_data = true;   // regularize u0, u1 along with the coefficients
};

struct LadderPoint {
    double eps = 0.0;
    CoefficientSet cs;
    MollifiedFn p_m, nu_m;      // kept for coefficient-net norms
    InitialData data;
    std::shared_ptr<SpectralBasis> basis;
    SeriesSolution sol;
};

struct RegularizationNet {
    std::vector<LadderPoint> points;  // eps strictly decreasing
    std::string kernel_id;
    std::size_t N_modes = 0;
    const VwsProblem* problem = nullptr;
};

// Dyadic ladder eps_k = 2^{-k}, k = k_min..k_max; every point solved with the
// same mode truncation. A point whose eps is below the integrator stiffness
// budget (eps < 8 h) is refused up front.
RegularizationNet build_net(const VwsProblem& prob, int k_min, int k_max,
                            const MollifierSpec& kernel,
                            const RealFn& data_perturbation = nullptr,
                            double perturbation_order = 0.0);

// Fit log||.|| = log C + N log(1/eps) over the ladder (or against
// log|log eps| for the log-moderate scale). Norm ids:
//   nu_prime_Linf, nu_Linf, p_Linf, q_eps_Linf,
//   sup_u_L2, sup_du_dx_L2, lambda1.
struct ModerationReport {
    std::string norm_id;
    std::vector<double> epsilons;
    std::vector<double> values;
    double C = 0.0;
    double N = 0.0;
    double residual = 0.0;  // rms of the log-space fit residual
    bool log_moderate = false;
};

ModerationReport fit_moderateness(const RegularizationNet& net, const std::string& norm_id,
                                  bool log_moderate = false);

// Difference-net decay fit for the uniqueness experiment: two nets built with
// (possibly) different kernels and a data perturbation eps^M sin(pi x) on the
// second; M_out is the fitted decay slope of sup_t ||u - u~||_{L2}.
struct DecayFit {
    std::vector<double> epsilons;
    std::vector<double> distances;
    double C = 0.0;
    double M_out = 0.0;
    double residual = 0.0;
    double input_slope = 0.0;   // fitted decay of the data perturbation itself
    double amplification = 0.0; // fitted growth exponent of sup_t ||u_eps||
};

DecayFit uniqueness_experiment(const VwsProblem& prob, const MollifierSpec& kernelA,
                               const MollifierSpec& kernelB, double M, int k_min, int k_max);

// Classical-coefficient convergence: distance of each ladder solution to the
// unregularized solve.
struct ConsistencyRow {
    double eps = 0.0;
    double distance = 0.0;  // sup_t ||u - u_eps||_{L2}
};

std::vector<ConsistencyRow> consistency_experiment(const VwsProblem& prob, int k_min,
                                                   int k_max, const MollifierSpec& kernel);

// sup over 33 equispaced times of the L2 norm of a solution channel.
double sup_t_l2(const SeriesSolution& sol, unsigned channel);

}  // namespace slwave
