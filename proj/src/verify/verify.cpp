#include "mge/verify.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <iterator>
#include <limits>
#include <numbers>
#include <random>
#include <sstream>
#include <cstdio>
#include <unistd.h>

#include "mge/errors.hpp"
#include "mge/estimators.hpp"
#include "mge/export.hpp"
#include "mge/filters.hpp"
#include "mge/oracles.hpp"
#include "mge/scenario.hpp"
#include "mge/signals.hpp"
#include "mge/sim.hpp"

namespace mge::verify {

namespace {

using E = SignalExpr;
constexpr double kPi = std::numbers::pi;

std::string fmt(double v) {
    std::ostringstream os;
    os.precision(6);
    os << v;
    return os.str();
}

std::string fmt(const std::optional<double>& v) { return v ? fmt(*v) + " s" : std::string("never"); }

double or_inf(const std::optional<double>& v) { return v.value_or(std::numeric_limits<double>::infinity()); }

EstimatorConfig make_config(Variant v, double tau, double mu, Vector theta0) {
    EstimatorConfig c;
    c.variant = v;
    c.tau = tau;
    c.mu = mu;
    c.theta_hat_0 = std::move(theta0);
    return c;
}

// Largest amount by which a sequence rises above its running minimum.
double worst_rise(const std::vector<double>& xs) {
    double lowest = std::numeric_limits<double>::infinity();
    double worst = 0.0;
    for (double x : xs) {
        worst = std::max(worst, x - lowest);
        lowest = std::min(lowest, x);
    }
    return worst;
}

SignalExpr random_primitive(std::mt19937_64& rng) {
    std::uniform_int_distribution<int> kind(0, 4);
    std::uniform_real_distribution<double> amp(0.5, 2.0);
    std::uniform_real_distribution<double> freq(0.3, 3.0);
    std::uniform_real_distribution<double> decay(0.05, 1.0);
    std::uniform_real_distribution<double> expo(-1.5, 0.0);
    switch (kind(rng)) {
        case 0: return E::constant(amp(rng));
        case 1: return E::constant(amp(rng)) * E::sin_of(freq(rng));
        case 2: return E::constant(amp(rng)) * E::cos_of(freq(rng));
        case 3: return E::exp_of(-decay(rng));
        default: return E::power(expo(rng));
    }
}

// Random bounded regressor: each component is a primitive or a sum/product of two.
EstimationProblem random_problem(std::mt19937_64& rng) {
    std::uniform_int_distribution<int> dim(1, 4);
    std::uniform_int_distribution<int> shape(0, 2);
    std::uniform_real_distribution<double> param(-3.0, 3.0);
    const int q = dim(rng);
    std::vector<SignalExpr> comps;
    Vector theta;
    for (int i = 0; i < q; ++i) {
        switch (shape(rng)) {
            case 0: comps.push_back(random_primitive(rng)); break;
            case 1: comps.push_back(random_primitive(rng) + random_primitive(rng)); break;
            default: comps.push_back(random_primitive(rng) * random_primitive(rng)); break;
        }
        theta.push_back(param(rng));
    }
    return EstimationProblem(RegressorSpec(std::move(comps)), std::move(theta));
}

EstimationProblem builtin_problem(const std::string& name) {
    BuiltinProblem b = builtin(name);
    return EstimationProblem(b.regressor, b.true_params);
}

// ---------------------------------------------------------------------------
// Acceptance criteria

CheckResult gain_fidelity() {
    std::mt19937_64 rng(20240611);
    std::uniform_real_distribution<double> w(-5.0, 5.0);
    std::uniform_real_distribution<double> tau_d(0.01, 50.0);
    std::uniform_real_distribution<double> mu_d(-2.0, 2.0);
    std::uniform_int_distribution<int> integer(-20, 20);
    long long worst = 0;
    for (int trial = 0; trial < 1000; ++trial) {
        const double tau = tau_d(rng), mu = mu_d(rng);
        const double w1 = w(rng), w2 = w(rng), w3 = w(rng);

        const Vector om2{w1, w2};
        const GainVector k2 = mge_gain(om2, tau, mu);
        const auto h2 = oracle::mge_gain_q2(w1, w2, tau, mu);
        for (int i = 0; i < 2; ++i) worst = std::max(worst, oracle::ulp_distance(k2.k[i], h2[i]));

        const Vector om3{w1, w2, w3};
        const GainVector k3 = mge_gain(om3, tau, mu);
        const auto h3 = oracle::mge_gain_q3(w1, w2, w3, tau, mu);
        for (int i = 0; i < 3; ++i) worst = std::max(worst, oracle::ulp_distance(k3.k[i], h3[i]));

        // Integer-valued filter state keeps eps = G - Omega theta_hat exact,
        // so only the last-row combination is under test.
        for (std::size_t q : {2u, 3u}) {
            EstimatorState s;
            s.theta_hat.resize(q);
            FilterState f{Matrix(q), Vector(q)};
            for (std::size_t i = 0; i < q; ++i) {
                s.theta_hat[i] = integer(rng);
                f.g[i] = integer(rng);
                for (std::size_t j = 0; j <= i; ++j) f.omega(i, j) = f.omega(j, i) = integer(rng);
            }
            Vector eps(q);
            for (std::size_t i = 0; i < q; ++i) {
                double v = f.g[i];
                for (std::size_t j = 0; j < q; ++j) v -= f.omega(i, j) * s.theta_hat[j];
                eps[i] = v;
            }
            s.filter = f;
            const Vector d = mge_mre_rhs(s, tau, mu);
            const double hand = q == 2 ? oracle::mge_mre_last_row_q2(eps[0], eps[1], tau, mu)
                                       : oracle::mge_mre_last_row_q3(eps[0], eps[1], eps[2], tau, mu);
            worst = std::max(worst, oracle::ulp_distance(d[q - 1], hand));
            for (std::size_t i = 0; i + 1 < q; ++i)
                worst = std::max(worst, oracle::ulp_distance(d[i], tau * eps[i]));
        }
    }
    return {worst <= 1, "max ulp distance " + std::to_string(worst) + " over 1000 draws"};
}

CheckResult ge_monotonicity() {
    SimSettings settings{1e-3, 30.0, 1};
    double worst = -1.0;
    std::string where;
    bool ok = true;
    auto check = [&](const EstimationProblem& p, double tau, const std::string& name) {
        const Vector zero(p.dimension(), 0.0);
        const Trajectory tr = simulate(p, make_config(Variant::GE, tau, 0.0, zero), settings);
        const double slack = 1e-8 * (1.0 + tr.err_norms.front());
        const double rise = worst_rise(tr.err_norms);
        if (rise > worst) {
            worst = rise;
            where = name;
        }
        ok = ok && rise <= slack;
    };
    for (const auto& name : builtin_names()) check(builtin_problem(name), builtin(name).tau, name);
    std::mt19937_64 rng(7);
    std::uniform_real_distribution<double> tau_d(0.5, 5.0);
    for (int i = 0; i < 20; ++i) check(random_problem(rng), tau_d(rng), "random#" + std::to_string(i));
    return {ok, "26 runs; largest rise above running minimum " + fmt(worst) + " (" + where + ")"};
}

CheckResult scalar_closed_form() {
    const RegressorSpec spec({E::sin_of(1.0)});
    const EstimationProblem p(spec, {1.0});
    const double t_end = 2.0 * kPi;
    const Trajectory tr = simulate(p, make_config(Variant::GE, 1.0, 0.0, {0.0}), SimSettings{1e-3, t_end, 10});
    const double err = 1.0 - tr.estimates.back()[0];
    const double exact = std::exp(-kPi);  // int_0^{2 pi} sin^2 = pi
    const double closed = ge_closed_form_scalar(spec, 1.0, 1.0, t_end, 1e-3);
    const double d1 = std::abs(err - exact);
    const double d2 = std::abs(closed - exact);
    return {d1 < 1e-6 && d2 < 1e-6,
            "simulated " + fmt(err) + ", exp(-pi) " + fmt(exact) + ", |diff| " + fmt(d1) + "; closed form |diff| " +
                fmt(d2)};
}

CheckResult estimate_error_duality() {
    double worst = 0.0;
    for (const char* name : {"example1", "example2", "example3"}) {
        const BuiltinProblem b = builtin(name);
        const EstimationProblem p(b.regressor, b.true_params);
        const std::size_t q = p.dimension();
        const SimSettings s{1e-3, builtin_t_end(name), 1};
        const Trajectory tr = simulate(p, make_config(Variant::MGE, b.tau, b.mu, Vector(q, 0.0)), s);

        const OdeRhs err_rhs = [&](double t, std::span<const double> x) {
            return oracle::mge_error_rhs(x, eval(b.regressor, t), b.tau, b.mu);
        };
        Vector err = b.true_params;  // theta_hat(0) = 0
        const auto n = tr.size() - 1;
        for (std::size_t k = 0; k <= n; ++k) {
            for (std::size_t i = 0; i < q; ++i)
                worst = std::max(worst, std::abs(tr.estimates[k][i] + err[i] - b.true_params[i]));
            if (k < n) err = rk4_step(err_rhs, tr.times[k], err, tr.times[k + 1] - tr.times[k]);
        }
    }
    return {worst <= 1e-9, "max |theta_hat + err - theta| = " + fmt(worst)};
}

CheckResult filter_correctness() {
    // Closed form for a constant regressor.
    const Vector w{1.0, -0.5, 2.0};
    const EstimationProblem cp(RegressorSpec({E::constant(w[0]), E::constant(w[1]), E::constant(w[2])}),
                               {1.0, 2.0, 3.0});
    Matrix final_omega;
    simulate(cp, make_config(Variant::MRE, 1.0, 0.0, Vector(3, 0.0)), SimSettings{1e-3, 1.0, 100},
             [&](double, const EstimatorState& s) { final_omega = s.filter->omega; });
    double closed_err = 0.0;
    for (std::size_t i = 0; i < 3; ++i)
        for (std::size_t j = 0; j < 3; ++j)
            closed_err = std::max(closed_err, std::abs(final_omega(i, j) - oracle::filter_closed_form(w[i], w[j], 1.0)));

    double worst_asym = 0.0;
    double lowest_eig = std::numeric_limits<double>::infinity();
    for (const auto& name : builtin_names()) {
        const BuiltinProblem b = builtin(name);
        const EstimationProblem p(b.regressor, b.true_params);
        simulate(p, make_config(Variant::MRE, b.tau, b.mu, Vector(p.dimension(), 0.0)),
                 SimSettings{1e-3, builtin_t_end(name), 10}, [&](double, const EstimatorState& s) {
                     worst_asym = std::max(worst_asym, asymmetry(s.filter->omega));
                     lowest_eig = std::min(lowest_eig, symmetric_eigenvalues(s.filter->omega).front());
                 });
    }
    const bool ok = closed_err < 1e-8 && worst_asym <= 1e-12 && lowest_eig >= -1e-9;
    return {ok, "closed-form error " + fmt(closed_err) + ", max asymmetry " + fmt(worst_asym) + ", min eigenvalue " +
                    fmt(lowest_eig)};
}

CheckResult example1_convergence() {
    const ScenarioConfig cfg = builtin_scenario("example1");
    const Trajectory tr = simulate(cfg.problem, cfg.estimators.front(), SimSettings{1e-3, 30.0, 10});
    const Vector& est = tr.estimates.back();
    const Vector& theta = cfg.problem.true_params();
    bool within = true;
    for (std::size_t i = 0; i < theta.size(); ++i)
        within = within && std::abs(est[i] - theta[i]) <= 0.02 * std::abs(theta[i]);
    const double e = tr.err_norms.back();
    return {e < 0.05 && within,
            "|err(30)| = " + fmt(e) + ", estimate (" + fmt(est[0]) + ", " + fmt(est[1]) + ")"};
}

CheckResult example3_comparison() {
    ScenarioConfig cfg = builtin_scenario("example3");
    cfg.settings.t_end = 50.0;
    const ScenarioResult r = run_scenario(cfg);
    const auto& ge = r.estimators.at(0);
    const auto& mge = r.estimators.at(1);
    const bool ok = ge.convergence_01 && mge.convergence_01 && *mge.convergence_01 <= *ge.convergence_01;
    return {ok, "t*(0.1): MGE " + fmt(mge.convergence_01) + ", GE " + fmt(ge.convergence_01)};
}

CheckResult examples45_comparison() {
    std::string detail;
    bool ok = true;
    for (const char* name : {"example4", "example5"}) {
        const ScenarioResult r = run_scenario(builtin_scenario(name));
        const auto& mre = r.estimators.at(0);
        const auto& combo = r.estimators.at(1);
        ok = ok && combo.convergence_01 && *combo.convergence_01 <= or_inf(mre.convergence_01);
        if (std::string_view(name) == "example5") ok = ok && combo.convergence_01 && *combo.convergence_01 < 60.0;
        if (!detail.empty()) detail += "; ";
        detail += std::string(name) + " t*(0.1): MGE_MRE " + fmt(combo.convergence_01) + ", MRE " +
                  fmt(mre.convergence_01);
    }
    return {ok, detail};
}

CheckResult example6_comparison() {
    const ScenarioResult r = run_scenario(builtin_scenario("example6"));
    const EstimatorResult* combo = nullptr;
    for (const auto& e : r.estimators)
        if (e.config.variant == Variant::MGE_MRE) combo = &e;
    bool ok = combo && combo->convergence_01.has_value();
    std::string detail;
    for (const auto& e : r.estimators) {
        if (!detail.empty()) detail += "; ";
        detail += e.label + " " + fmt(e.convergence_01);
        if (combo && &e != combo) ok = ok && or_inf(combo->convergence_01) <= or_inf(e.convergence_01);
    }
    return {ok, "t*(0.1): " + detail};
}

CheckResult drem_monotonicity() {
    double worst = 0.0;
    for (const char* name : {"example3", "example6"}) {
        const BuiltinProblem b = builtin(name);
        const EstimationProblem p(b.regressor, b.true_params);
        const std::size_t q = p.dimension();
        const Trajectory tr = simulate(p, make_config(Variant::DREM, b.tau, b.mu, Vector(q, 0.0)),
                                       SimSettings{1e-3, builtin_t_end(name), 1});
        for (std::size_t i = 0; i < q; ++i) {
            std::vector<double> mags(tr.size());
            for (std::size_t k = 0; k < tr.size(); ++k) mags[k] = std::abs(b.true_params[i] - tr.estimates[k][i]);
            worst = std::max(worst, worst_rise(mags));
        }
    }
    return {worst <= 1e-8, "largest per-coordinate rise " + fmt(worst)};
}

CheckResult rk4_order() {
    const OdeRhs decay = [](double, std::span<const double> x) { return Vector{-x[0]}; };
    auto global_error = [&](double dt) {
        Vector x{1.0};
        const int n = static_cast<int>(std::lround(1.0 / dt));
        for (int k = 0; k < n; ++k) x = rk4_step(decay, k * dt, x, dt);
        return std::abs(x[0] - oracle::decay_exact(1.0));
    };
    const double coarse = global_error(0.1);
    const double fine = global_error(0.05);
    const double ratio = coarse / fine;
    return {ratio >= 12.0 && ratio <= 20.0, "error ratio " + fmt(ratio) + " (" + fmt(coarse) + " -> " + fmt(fine) + ")"};
}

CheckResult excitation_diagnostics() {
    const ExcitationReport r1 = excitation_report(builtin("example1").regressor, 0.0, 2.0 * kPi, 1e-3);
    const double expected[2][2] = {{2.0 * kPi, 0.0}, {0.0, kPi}};
    double worst = 0.0;
    for (std::size_t i = 0; i < 2; ++i)
        for (std::size_t j = 0; j < 2; ++j) worst = std::max(worst, std::abs(r1.gram(i, j) - expected[i][j]));
    const ExcitationReport r5 = excitation_report(builtin("example5").regressor, 100.0, 10.0, 1e-3);
    return {worst < 1e-4 && r5.min_eigenvalue < 1e-2,
            "example1 gram error " + fmt(worst) + ", example5 rho(100, 10) = " + fmt(r5.min_eigenvalue)};
}

std::string slurp(const std::filesystem::path& p) {
    std::ifstream in(p, std::ios::binary);
    return std::string(std::istreambuf_iterator<char>(in), {});
}

CheckResult determinism_roundtrip() {
    namespace fs = std::filesystem;
    const fs::path root = fs::temp_directory_path() / ("mge_verify_" + std::to_string(::getpid()));
    fs::create_directories(root / "a");
    fs::create_directories(root / "b");
    const ScenarioConfig cfg = builtin_scenario("example3");
    const ScenarioResult r1 = run_scenario(cfg);
    const ScenarioResult r2 = run_scenario(cfg);
    const auto fa = export_csv(r1, root / "a" / "example3");
    const auto fb = export_csv(r2, root / "b" / "example3");
    bool identical = fa.size() == fb.size();
    for (std::size_t i = 0; identical && i < fa.size(); ++i) identical = slurp(fa[i]) == slurp(fb[i]);

    bool roundtrip = true;
    for (std::size_t i = 0; i < fa.size(); ++i) {
        const Trajectory back = read_trajectory_csv(fa[i]);
        const Trajectory& mem = r1.estimators[i].trajectory;
        roundtrip = roundtrip && back.dimension == mem.dimension && back.times == mem.times &&
                    back.estimates == mem.estimates && back.err_norms == mem.err_norms &&
                    back.manifold_residuals == mem.manifold_residuals && back.storage_values == mem.storage_values;
    }
    std::error_code ec;
    fs::remove_all(root, ec);
    return {identical && roundtrip, std::string("byte-identical: ") + (identical ? "yes" : "no") +
                                        ", parse-back exact: " + (roundtrip ? "yes" : "no")};
}

// ---------------------------------------------------------------------------
// Module invariants

CheckResult error_vector_identity() {
    std::mt19937_64 rng(11);
    std::uniform_real_distribution<double> d(-1e3, 1e3);
    long long worst = 0;
    double worst_scaled = 0.0;
    for (int trial = 0; trial < 1000; ++trial) {
        const std::size_t q = 1 + trial % 5;
        Vector theta(q), hat(q);
        for (std::size_t i = 0; i < q; ++i) theta[i] = d(rng), hat[i] = d(rng);
        const EstimationProblem p(RegressorSpec(std::vector<SignalExpr>(q, E::constant(1.0))), theta);
        const Vector err = error_vector(p, EstimatorState{hat, std::nullopt});
        for (std::size_t i = 0; i < q; ++i) {
            // Cancellation in (theta - hat) + hat is only bounded in ulps of the largest operand.
            const double m = std::max({std::abs(theta[i]), std::abs(hat[i]), std::abs(err[i])});
            const double spacing = std::nextafter(m, std::numeric_limits<double>::infinity()) - m;
            worst_scaled = std::max(worst_scaled, std::abs(err[i] + hat[i] - theta[i]) / spacing);
            if (std::abs(hat[i]) <= std::abs(theta[i]) && std::abs(err[i]) <= std::abs(theta[i]))
                worst = std::max(worst, oracle::ulp_distance(err[i] + hat[i], theta[i]));
        }
    }
    return {worst <= 1 && worst_scaled <= 1.0,
            "max ulp " + std::to_string(worst) + " when theta dominates, " + fmt(worst_scaled) +
                " ulp of the largest operand overall"};
}

CheckResult equilibrium_all_variants() {
    double worst = 0.0;
    for (const char* name : {"example1", "example3", "example6"}) {
        const BuiltinProblem b = builtin(name);
        const EstimationProblem p(b.regressor, b.true_params);
        for (Variant v : {Variant::GE, Variant::MGE, Variant::MRE, Variant::MGE_MRE, Variant::DREM}) {
            const Trajectory tr = simulate(p, make_config(v, b.tau, b.mu, b.true_params), SimSettings{1e-3, 10.0, 10});
            worst = std::max(worst, *std::max_element(tr.err_norms.begin(), tr.err_norms.end()));
        }
    }
    return {worst <= 1e-12, "max |err| starting at the truth " + fmt(worst)};
}

CheckResult dt_robustness() {
    double worst = 0.0;
    std::string where;
    for (const auto& name : builtin_names()) {
        ScenarioConfig cfg = builtin_scenario(name);
        for (const auto& est : cfg.estimators) {
            const Trajectory a = simulate(cfg.problem, est, SimSettings{1e-3, cfg.settings.t_end, 1000});
            const Trajectory b = simulate(cfg.problem, est, SimSettings{5e-4, cfg.settings.t_end, 1000});
            Vector diff(a.estimates.back().size());
            for (std::size_t i = 0; i < diff.size(); ++i) diff[i] = a.estimates.back()[i] - b.estimates.back()[i];
            const double d = norm2(diff);
            if (d > worst) worst = d, where = name + "/" + est.display_label();
        }
    }
    return {worst < 1e-4, "max |theta_hat(dt) - theta_hat(dt/2)| = " + fmt(worst) + " (" + where + ")"};
}

CheckResult filter_consistency() {
    const BuiltinProblem b = builtin("example1");
    const EstimationProblem p(b.regressor, b.true_params);
    double residual = 0.0;
    simulate(p, make_config(Variant::MRE, b.tau, b.mu, Vector(2, 0.0)), SimSettings{1e-3, 10.0, 10},
             [&](double, const EstimatorState& s) {
                 const Vector om_theta = matvec(s.filter->omega, b.true_params);
                 Vector d(2);
                 for (std::size_t i = 0; i < 2; ++i) d[i] = s.filter->g[i] - om_theta[i];
                 residual = norm2(d);
             });

    // Linearity in g: G(omega, g1 + g2) = G(omega, g1) + G(omega, g2).
    const Vector w{0.7, -1.2};
    FilterState s1{Matrix(2), Vector(2)}, s2 = s1, s12 = s1;
    const double dt = 1e-2;
    for (int k = 0; k < 500; ++k) {
        const double t = k * dt;
        const double g1 = std::sin(t), g2 = std::exp(-0.3 * t);
        auto euler = [&](FilterState& s, double g) {
            const FilterState d = filter_rhs(s, w, g);
            for (std::size_t i = 0; i < 2; ++i) {
                s.g[i] += dt * d.g[i];
                for (std::size_t j = 0; j < 2; ++j) s.omega(i, j) += dt * d.omega(i, j);
            }
        };
        euler(s1, g1);
        euler(s2, g2);
        euler(s12, g1 + g2);
    }
    double lin = 0.0;
    for (std::size_t i = 0; i < 2; ++i) lin = std::max(lin, std::abs(s12.g[i] - s1.g[i] - s2.g[i]));
    return {residual <= 1e-6 && lin <= 1e-12,
            "|G - Omega theta| at t=10: " + fmt(residual) + ", linearity defect " + fmt(lin)};
}

CheckResult excitation_properties() {
    // Example 1 stays excited across window starts.
    double lowest = std::numeric_limits<double>::infinity();
    for (const auto& r : excitation_scan(builtin("example1").regressor, 0.0, 20.0, 0.5, 2.0 * kPi, 1e-3))
        lowest = std::min(lowest, r.min_eigenvalue);

    // Symmetric PSD Gram for random regressors and windows.
    std::mt19937_64 rng(3);
    std::uniform_real_distribution<double> start(0.0, 50.0), len(0.5, 10.0);
    double worst_neg = 0.0, worst_asym = 0.0;
    for (int i = 0; i < 30; ++i) {
        const EstimationProblem p = random_problem(rng);
        const double T = len(rng);
        const ExcitationReport r = excitation_report(p.regressor(), start(rng), T, T / 200.0);
        worst_neg = std::min(worst_neg, r.min_eigenvalue);
        worst_asym = std::max(worst_asym, asymmetry(r.gram));
    }

    // Trapezoid order: error vs. closed form shrinks ~4x when dt halves.
    const RegressorSpec s({E::exp_of(-0.5)});
    const double exact = 1.0 - std::exp(-3.0);  // int_0^3 e^{-t} dt
    const double e1 = std::abs(excitation_report(s, 0.0, 3.0, 0.1).gram(0, 0) - exact);
    const double e2 = std::abs(excitation_report(s, 0.0, 3.0, 0.05).gram(0, 0) - exact);
    const double ratio = e1 / e2;

    const bool ok = lowest >= 3.0 && worst_neg >= -1e-9 && worst_asym == 0.0 && ratio > 3.5 && ratio < 4.5;
    return {ok, "example1 min rho " + fmt(lowest) + ", random min eig " + fmt(worst_neg) + ", trapezoid ratio " +
                    fmt(ratio)};
}

CheckResult ge_energy() {
    const BuiltinProblem b = builtin("example3");
    const EstimationProblem p(b.regressor, b.true_params);
    double worst_sign = -std::numeric_limits<double>::infinity();
    double worst_mismatch = 0.0;
    simulate(p, make_config(Variant::GE, b.tau, 0.0, Vector(3, 0.0)), SimSettings{1e-3, 20.0, 10},
             [&](double t, const EstimatorState& s) {
                 const auto [w, g] = p.measure(t);
                 const Vector err = error_vector(p, s);
                 const Vector d = ge_rhs(s.theta_hat, w, g, b.tau);
                 const double rate = -dot(err, d);
                 const double pred = dot(w, err);
                 const double expected = -b.tau * pred * pred;
                 worst_sign = std::max(worst_sign, rate);
                 worst_mismatch = std::max(worst_mismatch, std::abs(rate - expected) / (1.0 + std::abs(expected)));
             });
    return {worst_sign <= 1e-12 && worst_mismatch <= 1e-10,
            "max d/dt |err|^2/2 = " + fmt(worst_sign) + ", mismatch " + fmt(worst_mismatch)};
}

CheckResult determinism() {
    const ScenarioConfig cfg = builtin_scenario("example6");
    SimSettings s{1e-3, 10.0, 10};
    for (const auto& est : cfg.estimators) {
        const Trajectory a = simulate(cfg.problem, est, s);
        const Trajectory b = simulate(cfg.problem, est, s);
        if (a.estimates != b.estimates || a.err_norms != b.err_norms)
            return {false, est.display_label() + " differs between runs"};
    }
    return {true, "bit-identical trajectories for " + std::to_string(cfg.estimators.size()) + " estimators"};
}

}  // namespace

const std::vector<Check>& acceptance_checks() {
    static const std::vector<Check> checks = {
        {"A1", "gain formula fidelity (q=2, q=3, filtered last row)", 1.0, gain_fidelity},
        {"A2", "GE error norm non-increasing", 30.0, ge_monotonicity},
        {"A3", "scalar GE matches closed form", 0.0, scalar_closed_form},
        {"A4", "estimate/error presentations agree", 0.0, estimate_error_duality},
        {"A5", "filter closed form, symmetry and PSD", 0.0, filter_correctness},
        {"A6", "example1 MGE convergence", 5.0, example1_convergence},
        {"A7", "example3 MGE faster than GE", 0.0, example3_comparison},
        {"A8", "examples 4-5 MGE+MRE faster than MRE", 0.0, examples45_comparison},
        {"A9", "example6 MGE+MRE no slower than GE, MRE, DREM", 0.0, example6_comparison},
        {"A10", "DREM per-coordinate monotonicity", 0.0, drem_monotonicity},
        {"A11", "RK4 fourth-order convergence", 0.0, rk4_order},
        {"A12", "excitation diagnostics", 0.0, excitation_diagnostics},
        {"A13", "deterministic CSV and exact round-trip", 0.0, determinism_roundtrip},
    };
    return checks;
}

const std::vector<Check>& invariant_checks() {
    static const std::vector<Check> checks = {
        {"I1", "error_vector + theta_hat reproduces theta", 0.0, error_vector_identity},
        {"I2", "truth is an equilibrium of every variant", 0.0, equilibrium_all_variants},
        {"I3", "builtin results insensitive to halving dt", 0.0, dt_robustness},
        {"I4", "filter consistency and linearity", 0.0, filter_consistency},
        {"I5", "excitation Gram properties", 0.0, excitation_properties},
        {"I6", "GE energy derivative", 0.0, ge_energy},
        {"I7", "simulation determinism", 0.0, determinism},
    };
    return checks;
}

Outcome execute(const Check& check) {
    Outcome o{check.id, check.name, false, 0.0, {}};
    const auto start = std::chrono::steady_clock::now();
    try {
        const CheckResult r = check.run();
        o.passed = r.passed;
        o.detail = r.detail;
    } catch (const std::exception& e) {
        o.passed = false;
        o.detail = std::string("exception: ") + e.what();
    }
    o.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    if (check.time_limit_s > 0.0 && o.seconds >= check.time_limit_s) {
        o.passed = false;
        o.detail += "; exceeded time limit of " + fmt(check.time_limit_s) + " s";
    }
    return o;
}

bool run_all(const std::vector<Check>& checks, std::ostream& out) {
    bool all = true;
    for (const auto& c : checks) {
        const Outcome o = execute(c);
        all = all && o.passed;
        char timing[32];
        std::snprintf(timing, sizeof timing, "%.2fs", o.seconds);
        out << (o.passed ? "PASS " : "FAIL ") << o.id << "  " << o.name << "  [" << timing << "]  " << o.detail
            << '\n'
            << std::flush;
    }
    return all;
}

void report_storage_sign(std::ostream& out) {
    for (const auto& name : builtin_names()) {
        const ScenarioConfig cfg = builtin_scenario(name);
        for (const auto& est : cfg.estimators) {
            if (!uses_manifold(est.variant)) continue;
            const Trajectory tr = simulate(cfg.problem, est, cfg.settings);
            const auto steps = static_cast<long long>(std::ceil(cfg.settings.t_end / cfg.settings.dt - 1e-9));
            out << "INFO " << name << "/" << est.display_label() << ": dS/dt > 1e-10 on "
                << tr.storage_increase_events << " of " << steps << " steps\n";
        }
    }
}

}  // namespace mge::verify
