#pragma once

#include <string>

#include <json.hpp>

#include "slwave/veryweak.hpp"

namespace slwave {

// Resolved run configuration. Defaults are the documented ones; every field
// is echoed into the emitted resolved-config JSON for reproducibility.
struct RunConfig {
    // [problem] profiles: preset or expression strings.
    std::string p = "zero";
    std::string nu = "zero";
    std::string u0 = "zero";
    std::string u1 = "zero";
    std::string f = "zero";
    std::string u0_prime, u0_second, u1_prime, u1_second;  // optional analytic derivatives

    // [numerics]
    std::size_t N_modes = 16;
    std::size_t m = 4096;
    double tol = 1e-10;
    double T = 1.0;
    std::size_t time_samples = 33;

    // [vws]
    int k_min = 2;
    int k_max = 6;
    std::string kernel = "bump";
    std::string kernel_b = "bump2";
    double M = 6.0;
    bool mollify_data = true;

    // [output]
    std::string out_dir = ".";
    std::string formats = "csv,json";

    bool operator==(const RunConfig&) const = default;
};

// Line-oriented [section] / key=value file, or a resolved-config .json.
// Parse/validation failures carry the line number.
RunConfig load_config(const std::string& path);

nlohmann::ordered_json config_to_json(const RunConfig& cfg);
RunConfig config_from_json(const nlohmann::ordered_json& j);

// Separate the jumps of a profile from its smooth part, so the vws module
// can mollify them as Dirac contributions.
void split_jumps(const PiecewiseSmoothFn& fn, PiecewiseSmoothFn* smooth,
                 std::vector<SingularDescriptor::Jump>* jumps);

// Assembled problem ingredients shared by the CLI subcommands.
struct AssembledProblem {
    CoefficientSet cs;
    InitialData data;       // sampled on the grid below
    SpaceTimeFn f;          // null when unforced
    VwsProblem vws;         // jump-split view for the ladder experiments
};

AssembledProblem assemble_problem(const RunConfig& cfg, const Grid& grid);

}  // namespace slwave
