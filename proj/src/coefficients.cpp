#include "slwave/coefficients.hpp"

#include <algorithm>
#include <cmath>

namespace slwave {

namespace {

// Simpson on [a,b] with n panels (n even), for a smooth integrand.
double simpson(const RealFn& f, double a, double b, int n) {
    const double h = (b - a) / n;
    double s = f(a) + f(b);
    for (int i = 1; i < n; ++i) s += (i % 2 == 1 ? 4.0 : 2.0) * f(a + i * h);
    return s * h / 3.0;
}

// Integral of a piecewise-smooth f over [a,b], splitting at breakpoints.
// Smooth sub-pieces get fixed Simpson; per-piece error target 1e-12 is met
// for the cell widths used here (<= one grid cell).
// Simpson over one smooth segment [a, b]; the ends may be breakpoints of f,
// so they are evaluated with the one-sided limit belonging to the segment.
double segment_simpson(const PiecewiseSmoothFn& f, double a, double b, int n) {
    return simpson(
        [&](double x) {
            if (x <= a) return f.value_right(a);
            if (x >= b) return f.value_left(b);
            return f.value(x);
        },
        a, b, n);
}

double integrate_cell(const PiecewiseSmoothFn& f, double a, double b) {
    double total = 0.0;
    double left = a;
    for (double bp : f.breakpoints()) {
        if (bp <= a || bp >= b) continue;
        if (bp > left) {
            total += segment_simpson(f, left, bp, 8);
            left = bp;
        }
    }
    total += segment_simpson(f, left, b, 8);
    return total;
}

}  // namespace

std::vector<double> merged_breakpoints(const CoefficientSet& cs) {
    constexpr double kDedupTol = 1e-14;
    std::vector<double> pts = cs.p.breakpoints();
    pts.insert(pts.end(), cs.nu.breakpoints().begin(), cs.nu.breakpoints().end());
    std::sort(pts.begin(), pts.end());
    std::vector<double> out;
    for (double x : pts) {
        if (out.empty() || x - out.back() > kDedupTol) out.push_back(x);
    }
    return out;
}

std::vector<double> cumulative_integral(const PiecewiseSmoothFn& f, const Grid& grid) {
    std::vector<double> acc(grid.size());
    acc[0] = 0.0;
    for (std::size_t i = 1; i < grid.size(); ++i) {
        acc[i] = acc[i - 1] + integrate_cell(f, grid.node(i - 1), grid.node(i));
    }
    return acc;
}

WeightSamples compute_weight(const CoefficientSet& cs, const Grid& grid) {
    WeightSamples w;
    w.on = &grid;
    const auto ip = cumulative_integral(cs.p, grid);
    w.g.resize(grid.size());
    w.g_sq.resize(grid.size());
    for (std::size_t i = 0; i < grid.size(); ++i) {
        if (!std::isfinite(ip[i]))
            throw EvaluationError("non-finite sample of p while computing the weight",
                                  grid.node(i));
        w.g[i] = std::exp(-0.5 * ip[i]);
        w.g_sq[i] = w.g[i] * w.g[i];
    }
    w.g[0] = 1.0;
    w.g_sq[0] = 1.0;
    return w;
}

FnNorms function_norms(const PiecewiseSmoothFn& f, std::size_t samples_per_piece) {
    FnNorms out;
    std::vector<double> edges{0.0};
    for (double b : f.breakpoints()) edges.push_back(b);
    edges.push_back(1.0);

    for (std::size_t k = 0; k + 1 < edges.size(); ++k) {
        const double a = edges[k];
        const double b = edges[k + 1];
        const std::size_t n = samples_per_piece;
        const double h = (b - a) / static_cast<double>(n);
        double s1 = 0.0, s2 = 0.0;
        for (std::size_t i = 0; i <= n; ++i) {
            const double x = a + static_cast<double>(i) * h;
            const double v =
                (i == 0) ? f.value_right(x) : (i == n ? f.value_left(x) : f.value(x));
            const double w = (i == 0 || i == n) ? 1.0 : (i % 2 == 1 ? 4.0 : 2.0);
            s1 += w * std::abs(v);
            s2 += w * v * v;
            out.linf = std::max(out.linf, std::abs(v));
        }
        out.l1 += s1 * h / 3.0;
        out.l2 += s2 * h / 3.0;
    }
    out.l2 = std::sqrt(std::max(0.0, out.l2));
    return out;
}

}  // namespace slwave
