#pragma once

#include <cstddef>
#include <functional>
#include <optional>
#include <span>

#include "mge/core_types.hpp"
#include "mge/linalg.hpp"

namespace mge {

struct SimSettings {
    double dt = 1e-3;
    double t_end = 30.0;
    std::size_t record_every = 10;

    void validate() const;  // throws ConfigError
};

using OdeRhs = std::function<Vector(double t, std::span<const double> x)>;

/// Classical four-stage Runge-Kutta step. Throws DivergenceError carrying t
/// and the component index when any stage or the result is not finite.
Vector rk4_step(const OdeRhs& rhs, double t, std::span<const double> x, double dt);

/// Called once per integration step (including t = 0 and t = t_end) with the
/// full estimator state. Intended for diagnostics that need the filter state.
using StepObserver = std::function<void(double t, const EstimatorState& state)>;

/// Integrates theta_hat, plus (Omega, G) for filter-based variants, from 0 to
/// t_end with fixed-step RK4. omega and g are evaluated at the stage times.
/// Rows are recorded every record_every steps and always at t = 0 and t_end.
/// Throws DivergenceError when the state stops being finite or its norm
/// exceeds 1e12; the message names the estimator label.
Trajectory simulate(const EstimationProblem& problem, const EstimatorConfig& config,
                    const SimSettings& settings, const StepObserver& observer = {});

/// Smallest recorded t* with err_norm <= tol at every recorded t >= t*, or
/// nullopt if the last recorded error is above tol.
std::optional<double> convergence_time(const Trajectory& traj, double tol);

}  // namespace mge
