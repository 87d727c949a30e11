#pragma once

#include <algorithm>
#include <cmath>
#include <functional>
#include <utility>
#include <vector>

#include "slwave/errors.hpp"

namespace slwave {

using RealFn = std::function<double(double)>;

// A function on (0,1) that is smooth between an ordered list of interior
// breakpoints. Each piece carries its own evaluable value and first
// derivative. At a breakpoint the value is the mean of the one-sided limits.
class PiecewiseSmoothFn {
  public:
    struct Piece {
        RealFn value;
        RealFn derivative;
    };

    PiecewiseSmoothFn() : pieces_{Piece{[](double) { return 0.0; }, [](double) { return 0.0; }}} {}

    // Single smooth piece over all of (0,1).
    PiecewiseSmoothFn(RealFn value, RealFn derivative)
        : pieces_{Piece{std::move(value), std::move(derivative)}} {}

    PiecewiseSmoothFn(std::vector<double> breakpoints, std::vector<Piece> pieces)
        : breakpoints_(std::move(breakpoints)), pieces_(std::move(pieces)) {
        if (pieces_.size() != breakpoints_.size() + 1)
            throw UsageError("piecewise function needs one more piece than breakpoints");
        for (std::size_t i = 0; i < breakpoints_.size(); ++i) {
            if (breakpoints_[i] <= 0.0 || breakpoints_[i] >= 1.0)
                throw ParameterError("breakpoints must lie in the open interval (0,1)");
            if (i > 0 && breakpoints_[i] <= breakpoints_[i - 1])
                throw ParameterError("breakpoints must be strictly increasing");
        }
    }

    static PiecewiseSmoothFn zero() { return PiecewiseSmoothFn(); }

    static PiecewiseSmoothFn constant(double c) {
        return PiecewiseSmoothFn([c](double) { return c; }, [](double) { return 0.0; });
    }

    // Heaviside step h*H(x - x0).
    static PiecewiseSmoothFn heaviside(double x0, double h) {
        return PiecewiseSmoothFn(
            {x0}, {Piece{[](double) { return 0.0; }, [](double) { return 0.0; }},
                   Piece{[h](double) { return h; }, [](double) { return 0.0; }}});
    }

    const std::vector<double>& breakpoints() const { return breakpoints_; }

    // Index of the piece containing x (ties at a breakpoint go right).
    std::size_t piece_index(double x) const {
        return static_cast<std::size_t>(
            std::upper_bound(breakpoints_.begin(), breakpoints_.end(), x) - breakpoints_.begin());
    }

    double value(double x) const { return eval_mean(x, /*derivative=*/false); }
    double derivative(double x) const { return eval_mean(x, /*derivative=*/true); }
    double operator()(double x) const { return value(x); }

    double value_left(double x) const { return piece_at(x, -1).value(x); }
    double value_right(double x) const { return piece_at(x, +1).value(x); }
    double derivative_left(double x) const { return piece_at(x, -1).derivative(x); }
    double derivative_right(double x) const { return piece_at(x, +1).derivative(x); }

    // Jump value(b+) - value(b-) at breakpoint b.
    double jump(double b) const { return value_right(b) - value_left(b); }

    // The piecewise a.e. derivative as its own PiecewiseSmoothFn. The second
    // derivative of each piece is not tracked; the derivative-of-derivative
    // is only valid where the caller supplies it separately.
    PiecewiseSmoothFn piecewise_derivative(RealFn second_derivative = nullptr) const {
        std::vector<Piece> d;
        d.reserve(pieces_.size());
        for (const auto& p : pieces_) {
            RealFn dd = second_derivative ? second_derivative
                                          : RealFn([](double) { return 0.0; });
            d.push_back(Piece{p.derivative, std::move(dd)});
        }
        return PiecewiseSmoothFn(breakpoints_, std::move(d));
    }

  private:
    const Piece& piece_at(double x, int side) const {
        auto it = std::lower_bound(breakpoints_.begin(), breakpoints_.end(), x);
        std::size_t idx;
        if (it != breakpoints_.end() && *it == x) {
            idx = static_cast<std::size_t>(it - breakpoints_.begin()) + (side > 0 ? 1 : 0);
        } else {
            idx = piece_index(x);
        }
        return pieces_[idx];
    }

    double eval_mean(double x, bool derivative) const {
        auto it = std::lower_bound(breakpoints_.begin(), breakpoints_.end(), x);
        if (it != breakpoints_.end() && *it == x) {
            const auto i = static_cast<std::size_t>(it - breakpoints_.begin());
            const Piece& l = pieces_[i];
            const Piece& r = pieces_[i + 1];
            const double vl = derivative ? l.derivative(x) : l.value(x);
            const double vr = derivative ? r.derivative(x) : r.value(x);
            return 0.5 * (vl + vr);
        }
        const Piece& p = pieces_[piece_index(x)];
        return derivative ? p.derivative(x) : p.value(x);
    }

    std::vector<double> breakpoints_;
    std::vector<Piece> pieces_;
};

}  // namespace slwave
