#pragma once

#include <cstddef>
#include <vector>

#include "slwave/evolution.hpp"

namespace slwave {

// Finite-difference reference solvers, independent of the spectral pipeline.
// Used only for validation.

// Eigenvalues of the discretized transformed operator
//   -D2 + p^2/4 - p'/2 + q  (Dirichlet rows removed)
// on an m-cell mesh, by shifted inverse iteration seeded at (pi n)^2.
// Dirac terms in q (jumps of nu) enter as height/h at the nearest node.
std::vector<double> fd_eigen(const CoefficientSet& cs, std::size_t count, std::size_t m);

struct FDSolution {
    double h = 0.0;                             // space step
    double k = 0.0;                             // time step
    std::vector<double> times;                  // snapshot times
    std::vector<std::vector<double>> fields;    // fields[j][i] = u(t_j, x_i), i = 0..m
};

// Leapfrog scheme for u_tt = u_xx - p u_x - q u + f on the original
// (untransformed) equation, Dirichlet boundaries, first step by Taylor
// expansion. Requires the CFL bound k <= 0.9 h and classical coefficients.
// Snapshots are recorded at the requested times (snapped to the step).
FDSolution fd_wave(const CoefficientSet& cs, const InitialData& data, const SpaceTimeFn& f,
                   double T_end, double h, double k, const std::vector<double>& snapshot_times);

}  // namespace slwave
