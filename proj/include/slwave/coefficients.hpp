#pragma once

#include <cmath>
#include <cstddef>
#include <vector>

#include "slwave/grid.hpp"
#include "slwave/piecewise.hpp"

namespace slwave {

enum class RegularityClass {
    classical,  // p' in L2, nu in L-infinity, all function-valued
    singular,   // descriptor-only: q = nu' carries Dirac terms
};

// Finite sum of jumps on top of a piecewise-smooth part. A heaviside jump in
// nu is a Dirac term in q = nu'; a jump in p is a Dirac term in p'.
struct SingularDescriptor {
    enum class Kind { heaviside_jump_in_nu, jump_in_p };

    struct Jump {
        double location;  // in (0,1)
        double height;    // finite, nonzero
    };

    Kind kind = Kind::heaviside_jump_in_nu;
    std::vector<Jump> jumps;
    PiecewiseSmoothFn smooth_part;

    void validate() const {
        for (const auto& j : jumps) {
            if (!(j.location > 0.0 && j.location < 1.0))
                throw ParameterError("jump location must lie in (0,1)");
            if (!(std::isfinite(j.height)) || j.height == 0.0)
                throw ParameterError("jump height must be finite and nonzero");
        }
    }
};

// The coefficient pair (p, nu) of the operator -d^2/dx^2 + p d/dx + q with
// q = nu'. q is derived, never stored as a function when nu has jumps.
struct CoefficientSet {
    PiecewiseSmoothFn p;
    PiecewiseSmoothFn p_prime;
    PiecewiseSmoothFn nu;
    RegularityClass regularity = RegularityClass::classical;

    // q = nu' as a function; only meaningful where nu has no jumps.
    PiecewiseSmoothFn q_function() const { return nu.piecewise_derivative(); }

    // Dirac terms of q: one (location, height) per nonzero jump of nu.
    std::vector<SingularDescriptor::Jump> q_deltas(double tol = 1e-14) const {
        std::vector<SingularDescriptor::Jump> out;
        for (double b : nu.breakpoints()) {
            const double h = nu.jump(b);
            if (std::abs(h) > tol) out.push_back({b, h});
        }
        return out;
    }

    bool nu_has_jumps(double tol = 1e-14) const { return !q_deltas(tol).empty(); }
};

struct WeightSamples {
    std::vector<double> g;     // g(x_i)
    std::vector<double> g_sq;  // g^2(x_i)
    const Grid* on = nullptr;
};

// Sorted union of the breakpoints of p and nu, deduplicated within 1e-14.
std::vector<double> merged_breakpoints(const CoefficientSet& cs);

// g(x) = exp(-1/2 * int_0^x p), sampled on the grid. The cumulative integral
// uses per-cell Simpson split at breakpoints; g(0) = 1 exactly.
WeightSamples compute_weight(const CoefficientSet& cs, const Grid& grid);

// L1/L2/Linf norms of a piecewise-smooth function over (0,1), computed by
// per-piece composite quadrature on a fine subdivision.
struct FnNorms {
    double l1 = 0.0;
    double l2 = 0.0;
    double linf = 0.0;
};

FnNorms function_norms(const PiecewiseSmoothFn& f, std::size_t samples_per_piece = 4096);

// Cumulative integral int_0^x f at each grid node, split at the breakpoints
// of f inside every cell.
std::vector<double> cumulative_integral(const PiecewiseSmoothFn& f, const Grid& grid);

}  // namespace slwave
