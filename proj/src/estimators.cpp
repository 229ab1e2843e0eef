#include "mge/estimators.hpp"

#include <cmath>

#include "mge/errors.hpp"
#include "mge/filters.hpp"
#include "mge/signals.hpp"

namespace mge {

namespace {

// Last-row combination shared by MGE (applied to omega) and MGE+MRE (applied
// to eps). Evaluation order is fixed so that q = 2 and q = 3 reproduce the
// hand-expanded forms bit for bit.
double manifold_row(std::span<const double> v, double tau, double mu) {
    const std::size_t q = v.size();
    double middle = 0.0;
    for (std::size_t j = 1; j + 1 < q; ++j) middle += v[j];
    const double n = static_cast<double>(q - 1);
    return 2.0 * tau * v[q - 1] + tau * middle - n * mu * tau * v[0];
}

const FilterState& require_filter(const EstimatorState& state) {
    if (!state.filter) throw ConfigError("estimator variant requires memory-regressor filter state");
    const FilterState& f = *state.filter;
    const std::size_t q = state.theta_hat.size();
    if (f.omega.size() != q || f.g.size() != q)
        throw ConfigError("filter state dimension does not match the estimate");
    return f;
}

Vector extended_error(const EstimatorState& state) {
    const FilterState& f = require_filter(state);
    Vector eps = matvec(f.omega, state.theta_hat);
    for (std::size_t i = 0; i < eps.size(); ++i) eps[i] = f.g[i] - eps[i];
    return eps;
}

}  // namespace

Vector ge_rhs(std::span<const double> theta_hat, std::span<const double> omega, double g, double tau) {
    const double e = g - dot(omega, theta_hat);
    Vector d(omega.size());
    for (std::size_t i = 0; i < omega.size(); ++i) d[i] = tau * omega[i] * e;
    return d;
}

GainVector mge_gain(std::span<const double> omega, double tau, double mu) {
    const std::size_t q = omega.size();
    if (q == 0) throw ConfigError("modified gradient gain needs at least one parameter");
    GainVector gain{Vector(q)};
    for (std::size_t i = 0; i < q; ++i) gain.k[i] = tau * omega[i];
    if (q >= 2) gain.k[q - 1] = manifold_row(omega, tau, mu);
    return gain;
}

Vector mge_rhs(std::span<const double> theta_hat, std::span<const double> omega, double g, double tau,
               double mu) {
    const double e = g - dot(omega, theta_hat);
    GainVector gain = mge_gain(omega, tau, mu);
    for (double& k : gain.k) k *= e;
    return std::move(gain.k);
}

Vector mre_rhs(const EstimatorState& state, double tau) {
    Vector eps = extended_error(state);
    for (double& v : eps) v *= tau;
    return eps;
}

Vector mge_mre_rhs(const EstimatorState& state, double tau, double mu) {
    const Vector eps = extended_error(state);
    const std::size_t q = eps.size();
    Vector d(q);
    for (std::size_t i = 0; i < q; ++i) d[i] = tau * eps[i];
    if (q >= 2) d[q - 1] = manifold_row(eps, tau, mu);
    return d;
}

Vector drem_rhs(const EstimatorState& state, double tau) {
    const FilterState& f = require_filter(state);
    const double delta = determinant(f.omega);
    const Vector mixed = matvec(adjugate(f.omega), f.g);
    Vector d(mixed.size());
    for (std::size_t i = 0; i < d.size(); ++i) d[i] = tau * delta * (mixed[i] - delta * state.theta_hat[i]);
    return d;
}

Vector estimator_rhs(const EstimatorConfig& config, const EstimatorState& state,
                     std::span<const double> omega, double g) {
    switch (config.variant) {
        case Variant::GE:
            return ge_rhs(state.theta_hat, omega, g, config.tau);
        case Variant::MGE:
            return mge_rhs(state.theta_hat, omega, g, config.tau, config.mu);
        case Variant::MRE:
            return mre_rhs(state, config.tau);
        case Variant::MGE_MRE:
            return mge_mre_rhs(state, config.tau, config.mu);
        case Variant::DREM:
            return drem_rhs(state, config.tau);
    }
    throw ConfigError("unhandled estimator variant");
}

Vector manifold_coefficients(std::size_t q, double mu) {
    if (q < 2) throw ConfigError("the combined manifold is defined for q >= 2 only");
    Vector c(q, 1.0);
    c[0] = -static_cast<double>(q - 1) * mu;
    return c;
}

double manifold_residual(std::span<const double> theta_err, double mu) {
    const std::size_t q = theta_err.size();
    if (q < 2) throw ConfigError("the combined manifold is defined for q >= 2 only");
    double s = 0.0;
    for (std::size_t i = q - 1; i >= 1; --i) s += theta_err[i];
    return s - static_cast<double>(q - 1) * mu * theta_err[0];
}

double storage(double residual) { return 0.5 * residual * residual; }

double storage_rate(std::span<const double> theta_err, std::span<const double> theta_hat_dot, double mu) {
    const double phi = manifold_residual(theta_err, mu);
    const Vector c = manifold_coefficients(theta_err.size(), mu);
    return -phi * dot(c, theta_hat_dot);
}

double ge_closed_form_scalar(const RegressorSpec& omega, double tau, double err0, double t, double dt) {
    if (omega.dimension() != 1)
        throw ConfigError("unsupported dimension: the closed-form GE error is exact for q = 1 only (got q = " +
                          std::to_string(omega.dimension()) + ")");
    if (!(dt > 0.0)) throw ConfigError("quadrature step must be positive");
    if (t <= 0.0) return err0;
    const auto n = static_cast<std::size_t>(std::ceil(t / dt - 1e-9));
    const double h = t / static_cast<double>(n);
    double integral = 0.0;
    for (std::size_t k = 0; k <= n; ++k) {
        const double w = eval(omega, h * static_cast<double>(k))[0];
        integral += ((k == 0 || k == n) ? 0.5 * h : h) * w * w;
    }
    return err0 * std::exp(-tau * integral);
}

}  // namespace mge
