#pragma once

#include <filesystem>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "mge/core_types.hpp"
#include "mge/signals.hpp"
#include "mge/sim.hpp"

namespace mge {

struct ScenarioOutputs {
    std::optional<std::string> csv;  // prefix; files are <prefix>_<label>.csv
    std::optional<std::string> svg;
};

/// A named experiment: one problem, several estimators, shared settings.
struct ScenarioConfig {
    std::string name;
    EstimationProblem problem;
    std::vector<EstimatorConfig> estimators;
    SimSettings settings;
    ScenarioOutputs outputs;

    /// At least one estimator, unique labels, every estimator consistent
    /// with the problem dimension. Throws ConfigError.
    void validate() const;
};

struct EstimatorResult {
    std::string label;
    EstimatorConfig config;
    Trajectory trajectory;
    std::optional<double> convergence_01;   // tolerance 0.1
    std::optional<double> convergence_001;  // tolerance 0.01
    bool mu_flagged = false;                // MGE-family slope outside (0, 1)
};

struct ScenarioResult {
    std::string name;
    Vector true_params;
    std::vector<EstimatorResult> estimators;  // config order
    double excitation_window = 0.0;
    std::vector<ExcitationReport> excitation;  // sliding windows over [0, t_end]
};

/// Scenario for a catalog name (example1..example6) with the default gains,
/// zero initial estimates and per-example horizons. Throws ScenarioNotFound.
ScenarioConfig builtin_scenario(std::string_view name);

/// Horizon used by the builtin scenario.
double builtin_t_end(std::string_view name);

/// Parses the JSON scenario schema documented in the README.
ScenarioConfig parse_scenario(std::string_view json_text);
ScenarioConfig load_scenario_file(const std::filesystem::path& path);

/// Builtin name first, then an existing file path; otherwise ScenarioNotFound.
ScenarioConfig resolve_scenario(std::string_view name_or_path);

/// Simulates every estimator against the shared problem. Estimators run in
/// parallel; results keep config order. Errors carry the estimator label.
ScenarioResult run_scenario(const ScenarioConfig& config);

}  // namespace mge
