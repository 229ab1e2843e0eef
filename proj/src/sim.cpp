#include "mge/sim.hpp"

#include <cmath>
#include <string>

#include "mge/errors.hpp"
#include "mge/estimators.hpp"
#include "mge/filters.hpp"

namespace mge {

void SimSettings::validate() const {
    if (!(dt > 0.0) || !std::isfinite(dt)) throw ConfigError("dt must be positive");
    if (!(t_end > 0.0) || !std::isfinite(t_end)) throw ConfigError("t_end must be positive");
    if (dt > t_end) throw ConfigError("dt must not exceed t_end");
    if (record_every < 1) throw ConfigError("record_every must be at least 1");
}

namespace {

void check_finite(std::span<const double> v, double t, const char* where) {
    for (std::size_t i = 0; i < v.size(); ++i)
        if (!std::isfinite(v[i]))
            throw DivergenceError(std::string("non-finite ") + where + " at t=" + std::to_string(t) +
                                      ", component " + std::to_string(i),
                                  t, i);
}

}  // namespace

Vector rk4_step(const OdeRhs& rhs, double t, std::span<const double> x, double dt) {
    const std::size_t n = x.size();
    Vector tmp(n);

    const Vector k1 = rhs(t, x);
    check_finite(k1, t, "RK4 stage 1");
    for (std::size_t i = 0; i < n; ++i) tmp[i] = x[i] + 0.5 * dt * k1[i];
    const Vector k2 = rhs(t + 0.5 * dt, tmp);
    check_finite(k2, t, "RK4 stage 2");
    for (std::size_t i = 0; i < n; ++i) tmp[i] = x[i] + 0.5 * dt * k2[i];
    const Vector k3 = rhs(t + 0.5 * dt, tmp);
    check_finite(k3, t, "RK4 stage 3");
    for (std::size_t i = 0; i < n; ++i) tmp[i] = x[i] + dt * k3[i];
    const Vector k4 = rhs(t + dt, tmp);
    check_finite(k4, t, "RK4 stage 4");

    Vector out(n);
    for (std::size_t i = 0; i < n; ++i) out[i] = x[i] + dt / 6.0 * (k1[i] + 2.0 * k2[i] + 2.0 * k3[i] + k4[i]);
    check_finite(out, t + dt, "RK4 result");
    return out;
}

namespace {

// Packed layout: [theta_hat (q) | Omega row-major (q*q) | G (q)].
class StateCodec {
public:
    StateCodec(std::size_t q, bool filtered) : q_(q), filtered_(filtered) {}

    std::size_t size() const { return filtered_ ? q_ + q_ * q_ + q_ : q_; }

    Vector pack(const EstimatorState& s) const {
        Vector x(size());
        std::copy(s.theta_hat.begin(), s.theta_hat.end(), x.begin());
        if (filtered_) {
            const auto om = s.filter->omega.data();
            std::copy(om.begin(), om.end(), x.begin() + static_cast<std::ptrdiff_t>(q_));
            std::copy(s.filter->g.begin(), s.filter->g.end(),
                      x.begin() + static_cast<std::ptrdiff_t>(q_ + q_ * q_));
        }
        return x;
    }

    EstimatorState unpack(std::span<const double> x) const {
        EstimatorState s;
        s.theta_hat.assign(x.begin(), x.begin() + static_cast<std::ptrdiff_t>(q_));
        if (filtered_) {
            FilterState f{Matrix(q_), Vector(q_)};
            auto om = f.omega.data();
            std::copy(x.begin() + static_cast<std::ptrdiff_t>(q_),
                      x.begin() + static_cast<std::ptrdiff_t>(q_ + q_ * q_), om.begin());
            std::copy(x.begin() + static_cast<std::ptrdiff_t>(q_ + q_ * q_), x.end(), f.g.begin());
            s.filter = std::move(f);
        }
        return s;
    }

    Vector pack_derivative(const Vector& dtheta, const FilterState* dfilter) const {
        Vector d(size());
        std::copy(dtheta.begin(), dtheta.end(), d.begin());
        if (filtered_) {
            const auto om = dfilter->omega.data();
            std::copy(om.begin(), om.end(), d.begin() + static_cast<std::ptrdiff_t>(q_));
            std::copy(dfilter->g.begin(), dfilter->g.end(),
                      d.begin() + static_cast<std::ptrdiff_t>(q_ + q_ * q_));
        }
        return d;
    }

private:
    std::size_t q_;
    bool filtered_;
};

void record_row(Trajectory& traj, const EstimationProblem& problem, const EstimatorConfig& config, double t,
                const EstimatorState& state) {
    const Vector err = error_vector(problem, state);
    const double phi = err.size() >= 2 ? manifold_residual(err, config.mu) : 0.0;
    traj.times.push_back(t);
    traj.estimates.push_back(state.theta_hat);
    traj.err_norms.push_back(norm2(err));
    traj.manifold_residuals.push_back(phi);
    traj.storage_values.push_back(storage(phi));
}

}  // namespace

Trajectory simulate(const EstimationProblem& problem, const EstimatorConfig& config,
                    const SimSettings& settings, const StepObserver& observer) {
    settings.validate();
    const std::size_t q = problem.dimension();
    config.validate(q);

    const bool filtered = uses_filter(config.variant);
    const StateCodec codec(q, filtered);
    const bool track_storage = uses_manifold(config.variant) && q >= 2;

    const OdeRhs rhs = [&](double t, std::span<const double> x) {
        const auto [omega, g] = problem.measure(t);
        const EstimatorState s = codec.unpack(x);
        const Vector dtheta = estimator_rhs(config, s, omega, g);
        if (!filtered) return codec.pack_derivative(dtheta, nullptr);
        const FilterState df = filter_rhs(*s.filter, omega, g);
        return codec.pack_derivative(dtheta, &df);
    };

    EstimatorState state = EstimatorState::initial(config, q);
    Vector x = codec.pack(state);

    Trajectory traj;
    traj.dimension = q;

    const auto n_steps = static_cast<std::size_t>(std::ceil(settings.t_end / settings.dt - 1e-9));
    record_row(traj, problem, config, 0.0, state);
    if (observer) observer(0.0, state);

    for (std::size_t k = 0; k < n_steps; ++k) {
        const double t = static_cast<double>(k) * settings.dt;
        const double t_next = (k + 1 == n_steps) ? settings.t_end : static_cast<double>(k + 1) * settings.dt;

        if (track_storage) {
            const auto [omega, g] = problem.measure(t);
            const Vector dtheta = estimator_rhs(config, state, omega, g);
            if (storage_rate(error_vector(problem, state), dtheta, config.mu) > 1e-10)
                ++traj.storage_increase_events;
        }

        try {
            x = rk4_step(rhs, t, x, t_next - t);
        } catch (const DivergenceError& e) {
            throw DivergenceError(config.display_label() + ": " + e.what(), e.time(), e.index());
        }
        if (norm2(x) > 1e12)
            throw DivergenceError(config.display_label() + ": state norm exceeded 1e12 at t=" + std::to_string(t_next),
                                  t_next, 0);

        state = codec.unpack(x);
        if (observer) observer(t_next, state);
        if ((k + 1) % settings.record_every == 0 || k + 1 == n_steps)
            record_row(traj, problem, config, t_next, state);
    }
    return traj;
}

std::optional<double> convergence_time(const Trajectory& traj, double tol) {
    const std::size_t n = traj.size();
    if (n == 0) return std::nullopt;
    std::size_t first_ok = n;
    for (std::size_t i = n; i-- > 0;) {
        if (traj.err_norms[i] > tol) break;
        first_ok = i;
    }
    if (first_ok == n) return std::nullopt;
    return traj.times[first_ok];
}

}  // namespace mge
