#pragma once

#include <filesystem>
#include <string>
#include <vector>

#include "mge/core_types.hpp"
#include "mge/scenario.hpp"

namespace mge {

/// Shortest decimal text that parses back to the same double.
std::string format_double(double v);

/// CSV header for q parameters:
/// t,theta_hat_1,...,theta_hat_q,err_norm,manifold_residual,storage
std::string csv_header(std::size_t q);

/// Writes one trajectory as CSV ('\n' line endings, ',' separators).
void write_trajectory_csv(const Trajectory& traj, const std::filesystem::path& path);

/// Parses a file written by write_trajectory_csv. Throws IoError.
Trajectory read_trajectory_csv(const std::filesystem::path& path);

/// One file per estimator: <prefix>_<label>.csv. Returns the paths written.
std::vector<std::filesystem::path> export_csv(const ScenarioResult& result, const std::filesystem::path& prefix);

/// Standalone two-panel SVG: estimates with dashed true values on top,
/// log10 error norm (floored at 1e-16) below.
void emit_plot(const ScenarioResult& result, const std::filesystem::path& path);

/// SVG document text for emit_plot.
std::string render_plot(const ScenarioResult& result);

}  // namespace mge
