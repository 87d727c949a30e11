#pragma once

#include <cmath>
#include <cstddef>
#include <span>
#include <vector>

#include "slwave/errors.hpp"

namespace slwave {

// Uniform grid x_i = i/m on [0,1] with composite-Simpson quadrature weights.
// Weights sum to 1 (the integral of the constant 1 over [0,1]).
class Grid {
  public:
    explicit Grid(std::size_t m) : m_(m) {
        if (m < 2 || m % 2 != 0) throw ParameterError("grid node count m must be even and >= 2");
        nodes_.resize(m + 1);
        weights_.resize(m + 1);
        const double h = 1.0 / static_cast<double>(m);
        for (std::size_t i = 0; i <= m; ++i) {
            nodes_[i] = static_cast<double>(i) * h;
            if (i == 0 || i == m)
                weights_[i] = h / 3.0;
            else if (i % 2 == 1)
                weights_[i] = 4.0 * h / 3.0;
            else
                weights_[i] = 2.0 * h / 3.0;
        }
        nodes_.front() = 0.0;
        nodes_.back() = 1.0;
    }

    std::size_t m() const { return m_; }
    std::size_t size() const { return m_ + 1; }
    double h() const { return 1.0 / static_cast<double>(m_); }
    const std::vector<double>& nodes() const { return nodes_; }
    const std::vector<double>& weights() const { return weights_; }
    double node(std::size_t i) const { return nodes_[i]; }

    // Composite Simpson of nodal samples.
    double integrate(std::span<const double> f) const {
        if (f.size() != size()) throw UsageError("integrate: sample count does not match grid");
        double s = 0.0;
        for (std::size_t i = 0; i < f.size(); ++i) s += weights_[i] * f[i];
        return s;
    }

    double l2_norm(std::span<const double> f) const {
        if (f.size() != size()) throw UsageError("l2_norm: sample count does not match grid");
        double s = 0.0;
        for (std::size_t i = 0; i < f.size(); ++i) s += weights_[i] * f[i] * f[i];
        return std::sqrt(std::max(0.0, s));
    }

  private:
    std::size_t m_;
    std::vector<double> nodes_;
    std::vector<double> weights_;
};

}  // namespace slwave
