#include <algorithm>
#include <cmath>

#include "slwave/eigensolver.hpp"

namespace slwave {

namespace {

// Dormand-Prince 5(4) tableau.
constexpr double a21 = 1.0 / 5.0;
constexpr double a31 = 3.0 / 40.0, a32 = 9.0 / 40.0;
constexpr double a41 = 44.0 / 45.0, a42 = -56.0 / 15.0, a43 = 32.0 / 9.0;
constexpr double a51 = 19372.0 / 6561.0, a52 = -25360.0 / 2187.0, a53 = 64448.0 / 6561.0,
                 a54 = -212.0 / 729.0;
constexpr double a61 = 9017.0 / 3168.0, a62 = -355.0 / 33.0, a63 = 46732.0 / 5247.0,
                 a64 = 49.0 / 176.0, a65 = -5103.0 / 18656.0;
constexpr double b1 = 35.0 / 384.0, b3 = 500.0 / 1113.0, b4 = 125.0 / 192.0,
                 b5 = -2187.0 / 6784.0, b6 = 11.0 / 84.0;
constexpr double e1 = 35.0 / 384.0 - 5179.0 / 57600.0, e3 = 500.0 / 1113.0 - 7571.0 / 16695.0,
                 e4 = 125.0 / 192.0 - 393.0 / 640.0,
                 e5 = -2187.0 / 6784.0 + 92097.0 / 339200.0, e6 = 11.0 / 84.0 - 187.0 / 2100.0,
                 e7 = -1.0 / 40.0;
constexpr double c2 = 1.0 / 5.0, c3 = 3.0 / 10.0, c4 = 4.0 / 5.0, c5 = 8.0 / 9.0;

struct State {
    double theta;
    double log_r;
};

// Coefficient evaluation restricted to one smooth segment [a,b]; the segment
// ends may be breakpoints, so they take their one-sided values.
class SegmentCoeffs {
  public:
    SegmentCoeffs(const CoefficientSet& cs, double a, double b) : cs_(cs), a_(a), b_(b) {}

    void rhs(double x, double sql, const State& y, State& dy) const {
        const double nu = eval(cs_.nu, x);
        const double p = eval(cs_.p, x);
        const double pp = eval(cs_.p_prime, x);
        const double V = nu * nu - 0.25 * p * p + 0.5 * pp;
        const double s2 = std::sin(2.0 * y.theta);
        const double c2t = std::cos(2.0 * y.theta);
        const double sin_th = std::sin(y.theta);
        dy.theta = sql + nu * s2 + (V / sql) * sin_th * sin_th;
        dy.log_r = -(nu * c2t + 0.5 * (V / sql) * s2);
    }

  private:
    double eval(const PiecewiseSmoothFn& f, double x) const {
        if (x <= a_) return f.value_right(a_);
        if (x >= b_) return f.value_left(b_);
        return f.value(x);
    }
    const CoefficientSet& cs_;
    double a_, b_;
};

// Adaptive DOPRI5 over one smooth segment; on exit y holds the state at b.
void integrate_segment(const SegmentCoeffs& seg, double sql, double a, double b, double tol,
                       State& y) {
    const double atol = tol, rtol = tol;
    double x = a;
    double h = b - a;
    State k1, k2, k3, k4, k5, k6, k7, yt;
    seg.rhs(x, sql, y, k1);
    bool have_k1 = true;
    int rejects_in_a_row = 0;
    while (x < b) {
        h = std::min(h, b - x);
        if (h < 1e-14) throw IntegrationError("step size underflow in Prufer integration", x);
        if (!have_k1) {
            seg.rhs(x, sql, y, k1);
            have_k1 = true;
        }
        yt = {y.theta + h * a21 * k1.theta, y.log_r + h * a21 * k1.log_r};
        seg.rhs(x + c2 * h, sql, yt, k2);
        yt = {y.theta + h * (a31 * k1.theta + a32 * k2.theta),
              y.log_r + h * (a31 * k1.log_r + a32 * k2.log_r)};
        seg.rhs(x + c3 * h, sql, yt, k3);
        yt = {y.theta + h * (a41 * k1.theta + a42 * k2.theta + a43 * k3.theta),
              y.log_r + h * (a41 * k1.log_r + a42 * k2.log_r + a43 * k3.log_r)};
        seg.rhs(x + c4 * h, sql, yt, k4);
        yt = {y.theta + h * (a51 * k1.theta + a52 * k2.theta + a53 * k3.theta + a54 * k4.theta),
              y.log_r + h * (a51 * k1.log_r + a52 * k2.log_r + a53 * k3.log_r + a54 * k4.log_r)};
        seg.rhs(x + c5 * h, sql, yt, k5);
        yt = {y.theta + h * (a61 * k1.theta + a62 * k2.theta + a63 * k3.theta + a64 * k4.theta +
                             a65 * k5.theta),
              y.log_r + h * (a61 * k1.log_r + a62 * k2.log_r + a63 * k3.log_r + a64 * k4.log_r +
                             a65 * k5.log_r)};
        seg.rhs(x + h, sql, yt, k6);
        State y5{y.theta + h * (b1 * k1.theta + b3 * k3.theta + b4 * k4.theta + b5 * k5.theta +
                                b6 * k6.theta),
                 y.log_r + h * (b1 * k1.log_r + b3 * k3.log_r + b4 * k4.log_r + b5 * k5.log_r +
                                b6 * k6.log_r)};
        seg.rhs(x + h, sql, y5, k7);
        const double err_th = h * (e1 * k1.theta + e3 * k3.theta + e4 * k4.theta +
                                   e5 * k5.theta + e6 * k6.theta + e7 * k7.theta);
        const double err_lr = h * (e1 * k1.log_r + e3 * k3.log_r + e4 * k4.log_r +
                                   e5 * k5.log_r + e6 * k6.log_r + e7 * k7.log_r);
        const double sc_th = atol + rtol * std::max(std::abs(y.theta), std::abs(y5.theta));
        const double sc_lr = atol + rtol * std::max(std::abs(y.log_r), std::abs(y5.log_r));
        const double err = std::sqrt(0.5 * ((err_th / sc_th) * (err_th / sc_th) +
                                            (err_lr / sc_lr) * (err_lr / sc_lr)));
        if (err <= 1.0) {
            x += h;
            y = y5;
            k1 = k7;  // FSAL
            have_k1 = true;
            rejects_in_a_row = 0;
            const double fac = std::clamp(0.9 * std::pow(std::max(err, 1e-10), -0.2), 0.2, 5.0);
            h *= fac;
        } else {
            const double fac = std::clamp(0.9 * std::pow(err, -0.2), 0.1, 0.9);
            h *= fac;
            if (++rejects_in_a_row > 60)
                throw IntegrationError("repeated step rejection in Prufer integration", x);
        }
    }
}

std::vector<double> segment_edges(const CoefficientSet& cs) {
    std::vector<double> edges{0.0};
    for (double b : merged_breakpoints(cs)) edges.push_back(b);
    edges.push_back(1.0);
    return edges;
}

}  // namespace

PruferEndpoint prufer_endpoint(const CoefficientSet& cs, double lambda, double tol) {
    if (!(lambda >= 1.0)) throw ParameterError("Prufer integration requires lambda >= 1");
    const double sql = std::sqrt(lambda);
    State y{0.0, 0.0};
    const auto edges = segment_edges(cs);
    for (std::size_t k = 0; k + 1 < edges.size(); ++k) {
        SegmentCoeffs seg(cs, edges[k], edges[k + 1]);
        integrate_segment(seg, sql, edges[k], edges[k + 1], tol, y);
    }
    return {y.theta, y.log_r};
}

PruferTrace prufer_integrate(const CoefficientSet& cs, double lambda, double tol,
                             const Grid& grid) {
    if (!(lambda >= 1.0)) throw ParameterError("Prufer integration requires lambda >= 1");
    const double sql = std::sqrt(lambda);

    PruferTrace tr;
    tr.lambda = lambda;
    tr.theta.resize(grid.size());
    tr.log_r.resize(grid.size());
    tr.eta.resize(grid.size());
    tr.theta[0] = 0.0;
    tr.log_r[0] = 0.0;
    tr.eta[0] = 0.0;

    const auto bps = merged_breakpoints(cs);
    State y{0.0, 0.0};
    std::size_t node = 1;  // next grid node to record
    double x = 0.0;
    std::size_t bp = 0;
    while (node < grid.size()) {
        // advance to the next grid node, splitting at breakpoints inside.
        const double target = grid.node(node);
        while (bp < bps.size() && bps[bp] <= x + 1e-15) ++bp;
        double stop = target;
        bool is_bp = false;
        if (bp < bps.size() && bps[bp] < target - 1e-15) {
            stop = bps[bp];
            is_bp = true;
        }
        {
            SegmentCoeffs seg(cs, x, stop);
            integrate_segment(seg, sql, x, stop, tol, y);
        }
        x = stop;
        if (is_bp) {
            ++bp;
        } else {
            tr.theta[node] = y.theta;
            tr.log_r[node] = y.log_r;
            tr.eta[node] = y.theta - sql * x;
            ++node;
        }
    }
    return tr;
}

}  // namespace slwave
