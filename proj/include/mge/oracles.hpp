#pragma once

// Independent reference computations used by the verification suite. Nothing
// here calls into the estimator, filter or linear-algebra code it checks.

#include <span>
#include <vector>

namespace mge::oracle {

/// Hand-expanded two-parameter modified gradient gain (tau w1, 2 tau w2 - mu tau w1).
std::vector<double> mge_gain_q2(double w1, double w2, double tau, double mu);

/// Hand-expanded three-parameter gain (tau w1, tau w2, 2 tau w3 + tau w2 - 2 mu tau w1).
std::vector<double> mge_gain_q3(double w1, double w2, double w3, double tau, double mu);

/// Last row of the filtered estimator written out for q = 2 and q = 3 from
/// the extended errors eps_i.
double mge_mre_last_row_q2(double e1, double e2, double tau, double mu);
double mge_mre_last_row_q3(double e1, double e2, double e3, double tau, double mu);

/// Parametric error dynamics of the modified gradient estimator, written
/// directly in the error coordinates for q = 2 or q = 3:
///   d err_i/dt = -tau w_i (w . err), i < q
///   d err_q/dt = -(last-row gain) (w . err)
std::vector<double> mge_error_rhs(std::span<const double> err, std::span<const double> w, double tau, double mu);

/// Omega(t) entry for constant regressor from a zero filter: (1 - e^{-t}) w_i w_j.
double filter_closed_form(double wi, double wj, double t);

/// Exact solution of dx/dt = -x from x(0) = 1.
double decay_exact(double t);

/// Integer-ulp distance between two finite doubles.
long long ulp_distance(double a, double b);

}  // namespace mge::oracle
