#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "mge/linalg.hpp"
#include "mge/signal_expr.hpp"

namespace mge {

/// Known regressor omega(t) in R^q, one expression per component.
class RegressorSpec {
public:
    explicit RegressorSpec(std::vector<SignalExpr> components);

    std::size_t dimension() const noexcept { return components_.size(); }
    const std::vector<SignalExpr>& components() const noexcept { return components_; }

private:
    std::vector<SignalExpr> components_;
};

/// Linear regression g(t) = omega(t)^T theta with known omega and unknown theta.
class EstimationProblem {
public:
    EstimationProblem(RegressorSpec regressor, Vector true_params);

    std::size_t dimension() const noexcept { return true_params_.size(); }
    const RegressorSpec& regressor() const noexcept { return regressor_; }
    const Vector& true_params() const noexcept { return true_params_; }

    /// The measurable pair (omega(t), g(t)).
    std::pair<Vector, double> measure(double t) const;

private:
    RegressorSpec regressor_;
    Vector true_params_;
};

enum class Variant { GE, MGE, MRE, MGE_MRE, DREM };

std::string_view to_string(Variant v);
/// Accepts the canonical names above plus "MGE+MRE". Throws ConfigError.
Variant parse_variant(std::string_view name);

/// True for variants that carry the (Omega, G) memory-regressor filter state.
bool uses_filter(Variant v);
/// True for variants with the manifold-shaped last-row gain.
bool uses_manifold(Variant v);

struct EstimatorConfig {
    Variant variant = Variant::GE;
    double tau = 1.0;          // learning rate, multiplies the identity
    double mu = 0.0;           // manifold slope; read by MGE and MGE_MRE only
    Vector theta_hat_0;        // initial estimate, length q
    double filter_init = 0.0;  // initial value of every Omega and G entry
    std::string label;         // defaults to the variant name when empty

    std::string display_label() const;

    /// Throws ConfigError on tau <= 0, non-finite mu for MGE-family,
    /// or theta_hat_0 of the wrong length.
    void validate(std::size_t q) const;

    /// Flag for diagnostics: MGE-family slope outside (0, 1).
    bool mu_outside_unit_interval() const;
};

/// Memory-regressor extension: Omega = L(s)[omega omega^T], G = L(s)[omega g].
struct FilterState {
    Matrix omega;
    Vector g;
};

struct EstimatorState {
    Vector theta_hat;
    std::optional<FilterState> filter;  // present for MRE, MGE_MRE, DREM

    static EstimatorState initial(const EstimatorConfig& config, std::size_t q);
};

/// Recorded simulation output. Rows are aligned across every sequence.
struct Trajectory {
    std::size_t dimension = 0;
    std::vector<double> times;
    std::vector<Vector> estimates;
    std::vector<double> err_norms;
    std::vector<double> manifold_residuals;
    std::vector<double> storage_values;

    /// Integration steps at which dS/dt exceeded +1e-10 (MGE-family only).
    std::size_t storage_increase_events = 0;

    std::size_t size() const noexcept { return times.size(); }
    bool aligned() const noexcept;
};

/// theta - theta_hat. Throws ConfigError on dimension mismatch.
Vector error_vector(const EstimationProblem& problem, const EstimatorState& state);

}  // namespace mge
