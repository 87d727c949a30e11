#include "slwave/mollifier.hpp"

#include <algorithm>
#include <cmath>

namespace slwave {

namespace {

double simpson(const RealFn& f, double a, double b, int n) {
    const double h = (b - a) / n;
    double s = f(a) + f(b);
    for (int i = 1; i < n; ++i) s += (i % 2 == 1 ? 4.0 : 2.0) * f(a + i * h);
    return s * h / 3.0;
}

constexpr double kEdge = 1.0 - 1e-12;

}  // namespace

MollifierSpec::MollifierSpec(std::string kernel_id) : id_(std::move(kernel_id)) {
    if (id_ == "bump")
        sharpness_ = 1.0;
    else if (id_ == "bump2")
        sharpness_ = 2.0;
    else
        throw ParameterError("unknown mollifier kernel id: " + id_);
    const double a = sharpness_;
    const double raw = simpson(
        [a](double y) {
            const double u = 1.0 - y * y;
            return u > 1e-12 ? std::exp(-a / u) : 0.0;
        },
        -1.0, 1.0, 4096);
    norm_const_ = 1.0 / raw;
}

double MollifierSpec::value(double y) const {
    if (std::abs(y) >= kEdge) return 0.0;
    const double u = 1.0 - y * y;
    return norm_const_ * std::exp(-sharpness_ / u);
}

double MollifierSpec::derivative(double y) const {
    if (std::abs(y) >= kEdge) return 0.0;
    const double u = 1.0 - y * y;
    const double s = -2.0 * sharpness_ * y / (u * u);
    return value(y) * s;
}

double MollifierSpec::second(double y) const {
    if (std::abs(y) >= kEdge) return 0.0;
    const double u = 1.0 - y * y;
    const double s = -2.0 * sharpness_ * y / (u * u);
    const double sp = -2.0 * sharpness_ * (1.0 / (u * u) + 4.0 * y * y / (u * u * u));
    return value(y) * (s * s + sp);
}

double MollifierSpec::mass() const {
    return simpson([this](double y) { return value(y); }, -1.0, 1.0, 4096);
}

MollifiedFn::MollifiedFn(const PiecewiseSmoothFn& source,
                         const std::vector<SingularDescriptor::Jump>& jumps, double eps,
                         const MollifierSpec& kernel, std::size_t n_cells)
    : source_copy_(source), jumps_(jumps), eps_(eps), kernel_copy_(kernel) {
    if (!(eps > 0.0)) throw ParameterError("mollification eps must be positive");
    source_ = &source_copy_;
    kernel_ = &kernel_copy_;

    if (n_cells == 0) {
        n_cells = std::max<std::size_t>(4096, static_cast<std::size_t>(std::ceil(64.0 / eps)));
    }
    if (n_cells % 2 != 0) ++n_cells;
    n_cells_ = n_cells;
    cell_h_ = 1.0 / static_cast<double>(n_cells);

    v0_.resize(n_cells + 1);
    v1_.resize(n_cells + 1);
    v2_.resize(n_cells + 1);
    for (std::size_t i = 0; i <= n_cells; ++i) {
        const double x = static_cast<double>(i) * cell_h_;
        v0_[i] = convolve(x, 0);
        v1_[i] = convolve(x, 1);
        v2_[i] = convolve(x, 2);
        max_abs_d1_ = std::max(max_abs_d1_, std::abs(v1_[i]));
    }
}

double MollifiedFn::convolve(double x, int order) const {
    // f_eps^(k)(x) = eps^{-k} int_{-1}^{1} psi^{(k)}(y) f~(x - eps*y) dy,
    // f~ the zero extension of smooth part + jumps.
    auto tilde = [this](double t) -> double {
        if (t < 0.0 || t > 1.0) return 0.0;
        double v = source_->value(t);
        for (const auto& j : jumps_)
            if (t > j.location) v += j.height;
        return v;
    };
    auto kern = [this, order](double y) -> double {
        switch (order) {
            case 0: return kernel_->value(y);
            case 1: return kernel_->derivative(y);
            default: return kernel_->second(y);
        }
    };

    // Split [-1,1] at preimages of the interval ends, breakpoints and jumps.
    std::vector<double> cuts{-1.0, 1.0};
    auto add_cut = [&cuts, x, this](double c) {
        const double y = (x - c) / eps_;
        if (y > -1.0 && y < 1.0) cuts.push_back(y);
    };
    add_cut(0.0);
    add_cut(1.0);
    for (double b : source_->breakpoints()) add_cut(b);
    for (const auto& j : jumps_) add_cut(j.location);
    std::sort(cuts.begin(), cuts.end());

    double total = 0.0;
    for (std::size_t k = 0; k + 1 < cuts.size(); ++k) {
        const double a = cuts[k], b = cuts[k + 1];
        if (b - a < 1e-15) continue;
        // Quadrature nodes are nudged into the open sub-piece so that cut
        // endpoints (jump/breakpoint preimages) take their one-sided values.
        const double nudge = 1e-9 * (b - a);
        total += simpson(
            [&](double y) {
                const double yc = std::clamp(y, a + nudge, b - nudge);
                return kern(y) * tilde(x - eps_ * yc);
            },
            a, b, 64);
    }
    double scale = 1.0;
    for (int k = 0; k < order; ++k) scale /= eps_;
    return scale * total;
}

double MollifiedFn::interp(const std::vector<double>& f, const std::vector<double>& df,
                           double x) const {
    const double xc = std::clamp(x, 0.0, 1.0);
    std::size_t i = std::min(static_cast<std::size_t>(xc / cell_h_), n_cells_ - 1);
    const double t = (xc - static_cast<double>(i) * cell_h_) / cell_h_;
    const double t2 = t * t, t3 = t2 * t;
    const double h00 = 2 * t3 - 3 * t2 + 1;
    const double h10 = t3 - 2 * t2 + t;
    const double h01 = -2 * t3 + 3 * t2;
    const double h11 = t3 - t2;
    return h00 * f[i] + h10 * cell_h_ * df[i] + h01 * f[i + 1] + h11 * cell_h_ * df[i + 1];
}

double MollifiedFn::value(double x) const { return interp(v0_, v1_, x); }
double MollifiedFn::derivative(double x) const { return interp(v1_, v2_, x); }

double MollifiedFn::second(double x) const {
    // derivative of the Hermite interpolant of f'.
    const double xc = std::clamp(x, 0.0, 1.0);
    std::size_t i = std::min(static_cast<std::size_t>(xc / cell_h_), n_cells_ - 1);
    const double t = (xc - static_cast<double>(i) * cell_h_) / cell_h_;
    const double t2 = t * t;
    const double dh00 = 6 * t2 - 6 * t;
    const double dh10 = 3 * t2 - 4 * t + 1;
    const double dh01 = -6 * t2 + 6 * t;
    const double dh11 = 3 * t2 - 2 * t;
    return (dh00 * v1_[i] + dh10 * cell_h_ * v2_[i] + dh01 * v1_[i + 1] +
            dh11 * cell_h_ * v2_[i + 1]) /
           cell_h_;
}

PiecewiseSmoothFn MollifiedFn::as_fn() const {
    auto self = *this;  // value-capture keeps the samples alive
    return PiecewiseSmoothFn([self](double x) { return self.value(x); },
                             [self](double x) { return self.derivative(x); });
}

PiecewiseSmoothFn MollifiedFn::derivative_fn() const {
    auto self = *this;
    return PiecewiseSmoothFn([self](double x) { return self.derivative(x); },
                             [self](double x) { return self.second(x); });
}

CoefficientSet mollify(const SingularDescriptor& sd, double eps, const MollifierSpec& kernel,
                       const Grid& grid) {
    sd.validate();
    if (!(eps > 0.0)) throw ParameterError("mollification eps must be positive");
    for (const auto& j : sd.jumps) {
        if (j.location - eps <= 0.0 || j.location + eps >= 1.0)
            throw ParameterError("eps too large: mollified jump support escapes (0,1)");
    }

    const std::size_t n_cells =
        std::max<std::size_t>(2 * grid.m(), static_cast<std::size_t>(std::ceil(64.0 / eps)));
    MollifiedFn m(sd.smooth_part, sd.jumps, eps, kernel, n_cells);

    CoefficientSet cs;
    cs.regularity = RegularityClass::classical;
    if (sd.kind == SingularDescriptor::Kind::heaviside_jump_in_nu) {
        cs.nu = m.as_fn();
        cs.p = PiecewiseSmoothFn::zero();
        cs.p_prime = PiecewiseSmoothFn::zero();
    } else {
        cs.p = m.as_fn();
        cs.p_prime = m.derivative_fn();
        cs.nu = PiecewiseSmoothFn::zero();
    }
    return cs;
}

}  // namespace slwave
