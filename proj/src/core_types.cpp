#include "mge/core_types.hpp"

#include <cmath>

#include "mge/errors.hpp"

namespace mge {

RegressorSpec::RegressorSpec(std::vector<SignalExpr> components) : components_(std::move(components)) {
    if (components_.empty()) throw ConfigError("regressor must have at least one component");
}

EstimationProblem::EstimationProblem(RegressorSpec regressor, Vector true_params)
    : regressor_(std::move(regressor)), true_params_(std::move(true_params)) {
    if (true_params_.size() != regressor_.dimension())
        throw ConfigError("true parameter vector has length " + std::to_string(true_params_.size()) +
                          " but the regressor has " + std::to_string(regressor_.dimension()) +
                          " components");
    for (double v : true_params_)
        if (!std::isfinite(v)) throw ConfigError("true parameters must be finite");
}

std::pair<Vector, double> EstimationProblem::measure(double t) const {
    const auto& comps = regressor_.components();
    Vector omega(comps.size());
    for (std::size_t i = 0; i < comps.size(); ++i) {
        const double v = comps[i](t);
        if (!std::isfinite(v))
            throw SignalError("regressor component " + std::to_string(i + 1) +
                                  " is not finite at t=" + std::to_string(t),
                              i);
        omega[i] = v;
    }
    return {omega, dot(omega, true_params_)};
}

std::string_view to_string(Variant v) {
    switch (v) {
        case Variant::GE:
            return "GE";
        case Variant::MGE:
            return "MGE";
        case Variant::MRE:
            return "MRE";
        case Variant::MGE_MRE:
            return "MGE_MRE";
        case Variant::DREM:
            return "DREM";
    }
    return "?";
}

Variant parse_variant(std::string_view name) {
    if (name == "GE") return Variant::GE;
    if (name == "MGE") return Variant::MGE;
    if (name == "MRE") return Variant::MRE;
    if (name == "MGE_MRE" || name == "MGE+MRE") return Variant::MGE_MRE;
    if (name == "DREM") return Variant::DREM;
    throw ConfigError("unknown estimator variant '" + std::string(name) + "'");
}

bool uses_filter(Variant v) {
    return v == Variant::MRE || v == Variant::MGE_MRE || v == Variant::DREM;
}

bool uses_manifold(Variant v) { return v == Variant::MGE || v == Variant::MGE_MRE; }

std::string EstimatorConfig::display_label() const {
    return label.empty() ? std::string(to_string(variant)) : label;
}

void EstimatorConfig::validate(std::size_t q) const {
    if (!(tau > 0.0) || !std::isfinite(tau))
        throw ConfigError(display_label() + ": learning rate tau must be positive and finite");
    if (uses_manifold(variant) && !std::isfinite(mu))
        throw ConfigError(display_label() + ": manifold slope mu must be finite");
    if (theta_hat_0.size() != q)
        throw ConfigError(display_label() + ": initial estimate has length " +
                          std::to_string(theta_hat_0.size()) + ", expected " + std::to_string(q));
    if (!std::isfinite(filter_init)) throw ConfigError(display_label() + ": filter_init must be finite");
}

bool EstimatorConfig::mu_outside_unit_interval() const {
    return uses_manifold(variant) && !(mu > 0.0 && mu < 1.0);
}

EstimatorState EstimatorState::initial(const EstimatorConfig& config, std::size_t q) {
    EstimatorState s;
    s.theta_hat = config.theta_hat_0;
    if (uses_filter(config.variant))
        s.filter = FilterState{Matrix(q, config.filter_init), Vector(q, config.filter_init)};
    return s;
}

bool Trajectory::aligned() const noexcept {
    const std::size_t n = times.size();
    return estimates.size() == n && err_norms.size() == n && manifold_residuals.size() == n &&
           storage_values.size() == n;
}

Vector error_vector(const EstimationProblem& problem, const EstimatorState& state) {
    const Vector& theta = problem.true_params();
    if (state.theta_hat.size() != theta.size())
        throw ConfigError("estimate has length " + std::to_string(state.theta_hat.size()) +
                          ", problem dimension is " + std::to_string(theta.size()));
    Vector err(theta.size());
    for (std::size_t i = 0; i < theta.size(); ++i) err[i] = theta[i] - state.theta_hat[i];
    return err;
}

}  // namespace mge
