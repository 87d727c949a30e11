#pragma once

#include <cstddef>
#include <string>
#include <vector>

#include "slwave/coefficients.hpp"
#include "slwave/grid.hpp"
#include "slwave/piecewise.hpp"

namespace slwave {

// Compactly supported smooth kernel on (-1,1) with unit mass. The default
// "bump" kernel is c*exp(-1/(1-y^2)); "bump2" (used by the uniqueness
// experiment as the second, distinct kernel) is c2*exp(-2/(1-y^2)).
// The normalization constant is fixed numerically at construction.
class MollifierSpec {
  public:
    explicit MollifierSpec(std::string kernel_id = "bump");

    const std::string& id() const { return id_; }
    double normalization() const { return norm_const_; }

    double value(double y) const;        // psi(y)
    double derivative(double y) const;   // psi'(y)
    double second(double y) const;       // psi''(y)

    // Quadrature of psi over (-1,1); should be 1 to 1e-12.
    double mass() const;

  private:
    std::string id_;
    double sharpness_;    // exponent scale: 1 for bump, 2 for bump2
    double norm_const_;
};

// A coefficient or datum regularized by convolution with psi_eps, with the
// source extended by zero outside (0,1). Values and the first two
// derivatives are sampled by direct quadrature of the convolution on a fine
// uniform grid and interpolated with cubic Hermite pieces.
class MollifiedFn {
  public:
    MollifiedFn() = default;
    MollifiedFn(const PiecewiseSmoothFn& source,
                const std::vector<SingularDescriptor::Jump>& jumps, double eps,
                const MollifierSpec& kernel, std::size_t n_cells = 0);

    double value(double x) const;
    double derivative(double x) const;
    double second(double x) const;

    double eps() const { return eps_; }
    double max_abs_derivative() const { return max_abs_d1_; }

    // Smooth single-piece views for use in a classical CoefficientSet.
    PiecewiseSmoothFn as_fn() const;
    PiecewiseSmoothFn derivative_fn() const;

    // Exact convolution values (quadrature, no interpolation); used by the
    // construction itself and exposed for verification.
    double exact_value(double x) const { return convolve(x, 0); }
    double exact_derivative(double x) const { return convolve(x, 1); }

  private:
    double convolve(double x, int order) const;
    double interp(const std::vector<double>& f, const std::vector<double>& df, double x) const;

    const PiecewiseSmoothFn* source_ = nullptr;
    PiecewiseSmoothFn source_copy_;
    std::vector<SingularDescriptor::Jump> jumps_;
    double eps_ = 0.0;
    const MollifierSpec* kernel_ = nullptr;
    MollifierSpec kernel_copy_{"bump"};

    std::size_t n_cells_ = 0;
    double cell_h_ = 0.0;
    std::vector<double> v0_, v1_, v2_;  // samples of f_eps, f_eps', f_eps''
    double max_abs_d1_ = 0.0;
};

// Mollify a singular coefficient descriptor into a classical CoefficientSet.
// A heaviside-in-nu descriptor yields (p=0, nu=nu_eps); a jump-in-p
// descriptor yields (p=p_eps, nu=0). eps must keep the mollified jump
// supports inside (0,1).
CoefficientSet mollify(const SingularDescriptor& sd, double eps, const MollifierSpec& kernel,
                       const Grid& grid);

}  // namespace slwave
