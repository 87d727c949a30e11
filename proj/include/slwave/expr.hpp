#pragma once

#include <memory>
#include <string>

#include "slwave/piecewise.hpp"

namespace slwave {

// Small arithmetic expression over the variables x and t:
//   + - * / ^, unary minus, parentheses, numbers, pi,
//   sin(e), cos(e), exp(e), pow(a, b), H(e)  (Heaviside, H(0) = 1/2).
class Expr {
  public:
    struct Node;
    using NodePtr = std::shared_ptr<const Node>;

    Expr() = default;

    // Throws UsageError with the offending position on parse failure.
    static Expr parse(const std::string& text);

    double eval(double x, double t = 0.0) const;

    // Symbolic d/dx (H differentiates to zero: a.e. derivative).
    Expr derivative_x() const;

    bool valid() const { return root_ != nullptr; }
    bool uses_t() const;

  private:
    explicit Expr(NodePtr root) : root_(std::move(root)) {}
    NodePtr root_;
};

// A coefficient/data specification string: either a named preset
//   zero | const:a | sin:k | bump | heaviside:x0:h | kink
// or an arithmetic expression in x. Presets carry exact breakpoints and
// derivatives; expressions are differentiated symbolically.
PiecewiseSmoothFn make_profile(const std::string& spec);

// A forcing specification: preset "zero" or an expression in x and t.
// Returns a null function for "zero".
std::function<double(double, double)> make_forcing_expr(const std::string& spec);

}  // namespace slwave
