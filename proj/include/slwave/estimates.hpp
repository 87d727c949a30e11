#pragma once

#include <map>
#include <string>
#include <vector>

#include "slwave/evolution.hpp"

namespace slwave {

// One energy-type inequality evaluated as a bounded-ratio property:
// lhs(t) at the sample times against a t-independent rhs assembled from the
// printed norm expression with constant 1.
struct EstimateReport {
    std::string estimate_id;
    std::vector<double> t_samples;
    std::vector<double> lhs;
    double rhs = 0.0;
    double ratio_max = 0.0;
    double sobolev_k = 0.0;  // the k parameter for the W^k-scale ids
    std::map<std::string, double> norm_inventory;
};

// Known ids: est1..est5, ec1..ec4, es-nh1..es-nh5, ec-nh1..ec-nh4.
// The homogeneous ids take sol from solve_homogeneous; the -nh ids need a
// forced solution. est5/es-nh5 take the scale parameter k.
// Corollary-level ids (ec*, ec-nh*) need the derivative samples in data.
EstimateReport evaluate_estimate(const std::string& id, const SeriesSolution& sol,
                                 const InitialData& data, double sobolev_k = 0.0,
                                 std::size_t t_count = 33);

bool is_known_estimate(const std::string& id);

}  // namespace slwave
