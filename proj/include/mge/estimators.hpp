#pragma once

#include <span>

#include "mge/core_types.hpp"
#include "mge/linalg.hpp"

namespace mge {

/// Multiplicative gain applied to the scalar prediction error g - omega^T theta_hat.
struct GainVector {
    Vector k;
};

/// Gradient estimator: tau omega (g - omega^T theta_hat).
Vector ge_rhs(std::span<const double> theta_hat, std::span<const double> omega, double g, double tau);

/// Modified gradient gain. Rows 1..q-1 are tau omega_i; the last row is
///   2 tau omega_q + tau (omega_2 + ... + omega_{q-1}) - (q-1) mu tau omega_1,
/// the gradient row plus the virtual control that drives the error toward
/// the combined manifold. For q = 1 there is no manifold and the GE gain is
/// returned. Throws ConfigError for q = 0.
GainVector mge_gain(std::span<const double> omega, double tau, double mu);

Vector mge_rhs(std::span<const double> theta_hat, std::span<const double> omega, double g, double tau,
               double mu);

/// Memory-regressor extension: tau (G - Omega theta_hat).
/// Throws ConfigError if the state carries no filter.
Vector mre_rhs(const EstimatorState& state, double tau);

/// Memory-regressor extension with the manifold-shaped last row, applied to
/// eps = G - Omega theta_hat instead of the instantaneous prediction error.
Vector mge_mre_rhs(const EstimatorState& state, double tau, double mu);

/// Determinant mixing on the extended system: with D = det(Omega) and
/// Y = adj(Omega) G, each coordinate follows tau D (Y_i - D theta_hat_i).
/// A singular Omega gives a zero update; the estimator simply stalls.
Vector drem_rhs(const EstimatorState& state, double tau);

/// d theta_hat / dt for any variant. Filter-based variants read the filter
/// state; the others read (omega, g).
Vector estimator_rhs(const EstimatorConfig& config, const EstimatorState& state,
                     std::span<const double> omega, double g);

/// Coefficients c with Phi(err) = c . err, i.e. (-(q-1) mu, 1, ..., 1).
Vector manifold_coefficients(std::size_t q, double mu);

/// Combined manifold err_2 + ... + err_q - (q-1) mu err_1.
/// Throws ConfigError for q < 2.
double manifold_residual(std::span<const double> theta_err, double mu);

/// 1/2 residual^2.
double storage(double residual);

/// dS/dt = Phi dPhi/dt along the estimator, using d err/dt = -d theta_hat/dt.
double storage_rate(std::span<const double> theta_err, std::span<const double> theta_hat_dot, double mu);

/// Closed-form scalar GE error err0 exp(-tau int_0^t omega^2), the integral
/// taken by the trapezoid rule with step dt. Only valid for q = 1; throws
/// ConfigError ("unsupported dimension") otherwise.
double ge_closed_form_scalar(const RegressorSpec& omega, double tau, double err0, double t, double dt);

}  // namespace mge
