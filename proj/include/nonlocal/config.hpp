#pragma once

#include <filesystem>
#include <string>
#include <vector>

#include <json.hpp>

#include "nonlocal/dynamics.hpp"
#include "nonlocal/grid.hpp"
#include "nonlocal/integrator.hpp"

namespace nonlocal {

enum class InitialCondition {
    IC1,     // smooth bump exp(1 - 1/(1 - s^2)), s = (x - 0.5)/0.05, on [0.45, 0.55]
    IC2,     // 2 + sin(2 pi x) + cos(4 pi x)
    IC3,     // 1/(1.2 + cos(2 pi x))
    Custom,  // u0, v0 given as expressions in x
};

std::string to_string(InitialCondition ic);
InitialCondition initial_condition_from_string(const std::string& name);

/// Everything that determines a run. Deterministic: no seeds involved.
struct RunConfig {
    ModelSpec model;
    GridSpec grid = GridSpec::periodic(8192);
    InitialCondition initial_condition = InitialCondition::IC2;
    std::string u0_expression;  // Custom only
    std::string v0_expression = "0";
    StepPolicy policy;
    StopSpec stop;
    std::vector<double> snapshot_sup_thresholds;
    std::size_t record_every = 1;
    std::string output_dir = "out";

    /// Throws std::invalid_argument when IC1 is not on a line grid, IC2/IC3
    /// are not periodic, nu > 0 off a periodic grid, or any part is invalid.
    void validate() const;
};

/// Samples the initial data of `config` on `grid`. IC1 and custom line data
/// are zeroed outside the support and tagged compact; v0 = 0 except for
/// custom data. Throws std::invalid_argument on an IC/grid mismatch.
SolutionState build_initial_condition(const RunConfig& config, const GridPtr& grid);

/// JSON form used both for config files and the echo in result files.
/// Infinite limits are written as null.
nlohmann::json to_json(const RunConfig& config);
RunConfig config_from_json(const nlohmann::json& j);

/// Throws std::runtime_error when the file cannot be read or parsed.
RunConfig load_config(const std::filesystem::path& path);

}  // namespace nonlocal
