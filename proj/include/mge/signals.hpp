#pragma once

#include <string>
#include <string_view>
#include <vector>

#include "mge/core_types.hpp"
#include "mge/linalg.hpp"

namespace mge {

/// Componentwise evaluation of omega(t). Requires t >= 0; throws SignalError
/// naming the component when a value is not finite.
Vector eval(const RegressorSpec& spec, double t);

/// A regressor, its true parameters and default gains.
struct BuiltinProblem {
    std::string name;
    std::string provenance;
    RegressorSpec regressor;
    Vector true_params;
    double tau;
    double mu;
};

/// Names example1 .. example6 in catalog order.
const std::vector<std::string>& builtin_names();

/// Throws ScenarioNotFound for unknown names.
BuiltinProblem builtin(std::string_view name);

/// Windowed Gram integral of omega omega^T and its smallest eigenvalue.
struct ExcitationReport {
    double window_start = 0.0;
    double window_length = 0.0;
    Matrix gram;
    double min_eigenvalue = 0.0;
};

/// Composite trapezoid over [t, t + T]. The step is dt, shrunk to divide T
/// evenly when it does not. Requires T > 0, dt > 0 and dt <= T / 10.
ExcitationReport excitation_report(const RegressorSpec& spec, double t, double T, double dt);

/// rho(t, T) for window starts t = start, start + stride, ... <= stop.
std::vector<ExcitationReport> excitation_scan(const RegressorSpec& spec, double start, double stop,
                                              double stride, double T, double dt);

}  // namespace mge
