#pragma once

#include <cstddef>
#include <functional>
#include <vector>

#include "slwave/spectral.hpp"

namespace slwave {

using SpaceTimeFn = std::function<double(double t, double x)>;

// Initial displacement/velocity sampled on the basis grid, with optional
// derivative samples for the coefficient-side estimates.
struct InitialData {
    std::vector<double> u0;
    std::vector<double> u1;
    std::vector<double> u0_prime, u0_second;  // optional: empty when absent
    std::vector<double> u1_prime, u1_second;

    bool has_data_derivatives() const {
        return !u0_prime.empty() && !u0_second.empty() && !u1_prime.empty() &&
               !u1_second.empty();
    }
};

// Source term with its weighted mode table (gf)_n(t_j) on a time grid.
struct ForcingTerm {
    SpaceTimeFn f;
    std::vector<double> time_grid;                 // quadrature nodes in [0, T]
    std::vector<std::vector<double>> mode_cache;   // mode_cache[n][j] = (gf)_n(t_j)
};

ForcingTerm make_forcing(const SpectralBasis& basis, SpaceTimeFn f, double T_end,
                         std::size_t time_samples);

// Eigenfunction-series solution: per mode,
//   v_n(t) = A_n cos(w t) + B_n sin(w t)/w
//          + (1/w)[sin(w t) C_n(t) - cos(w t) S_n(t)],   w = sqrt(lambda_n),
// with the Duhamel integrals C_n(t) = int_0^t cos(w s)(gf)_n(s) ds and
// S_n(t) = int_0^t sin(w s)(gf)_n(s) ds (both zero when unforced).
class SeriesSolution {
  public:
    const SpectralBasis* basis = nullptr;
    SpectralCoefficients A;   // forward(u0)
    SpectralCoefficients B;   // forward(u1)
    bool forced = false;
    ForcingTerm forcing;      // meaningful only when forced
    double T_end = 0.0;

    // v_n(t) and v_n'(t) for n = 1..N.
    std::vector<double> mode_values(double t) const;
    std::vector<double> mode_velocities(double t) const;

    // Fraction of the energy proxy carried by the top 4 retained modes.
    double truncation_tail() const;

    // Duhamel bookkeeping (populated by solve_forced).
    struct DuhamelTable {
        double step = 0.0;                // fine quadrature step (cells)
        std::vector<double> samples;      // (gf)_n at step/2 spacing, 2*cells+1 values
        std::vector<double> cos_cum;      // C_n at the fine nodes
        std::vector<double> sin_cum;      // S_n at the fine nodes
    };
    std::vector<DuhamelTable> duhamel;

  private:
    void duhamel_at(std::size_t n, double t, double* C, double* S) const;
};

SeriesSolution solve_homogeneous(const SpectralBasis& basis, const InitialData& data,
                                 double T_end);

SeriesSolution solve_forced(const SpectralBasis& basis, const InitialData& data,
                            const ForcingTerm& f, double T_end);

// Requested sample channels of a solution at one time.
enum ChannelMask : unsigned {
    kChannelU = 1u,
    kChannelDuDt = 2u,
    kChannelDuDx = 4u,
    kChannelD2uDx2 = 8u,
};

struct Snapshot {
    double t = 0.0;
    std::vector<double> u, du_dt, du_dx, d2u_dx2;  // empty when not requested
};

// Samples on the basis grid. du_dx uses the stored quasi-derivative channel
// (no numerical differentiation); d2u_dx2 needs a function-valued q = nu',
// so it refuses when nu has jumps.
Snapshot evaluate(const SeriesSolution& sol, double t, unsigned channels);

// E(t) = sum_n (v_n'(t)^2 + lambda_n v_n(t)^2); t-independent analytically.
// Defined for homogeneous solutions only.
double spectral_energy(const SeriesSolution& sol, double t);

}  // namespace slwave
