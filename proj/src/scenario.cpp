#include "mge/scenario.hpp"

#include <cmath>
#include <fstream>
#include <future>
#include <numbers>
#include <set>
#include <sstream>

#include <json.hpp>

#include "mge/errors.hpp"

namespace mge {

using json = nlohmann::json;

void ScenarioConfig::validate() const {
    if (estimators.empty()) throw ConfigError("scenario '" + name + "' has no estimators");
    std::set<std::string> labels;
    for (const auto& e : estimators) {
        if (!labels.insert(e.display_label()).second)
            throw ConfigError("scenario '" + name + "': duplicate estimator label '" + e.display_label() + "'");
        e.validate(problem.dimension());
    }
    settings.validate();
}

double builtin_t_end(std::string_view name) {
    if (name == "example3" || name == "example4" || name == "example6") return 50.0;
    if (name == "example5") return 100.0;
    return 30.0;
}

namespace {

std::vector<Variant> builtin_variants(std::string_view name) {
    if (name == "example1" || name == "example2") return {Variant::MGE};
    if (name == "example3") return {Variant::GE, Variant::MGE};
    if (name == "example4" || name == "example5") return {Variant::MRE, Variant::MGE_MRE};
    return {Variant::GE, Variant::MRE, Variant::MGE_MRE, Variant::DREM};
}

}  // namespace

ScenarioConfig builtin_scenario(std::string_view name) {
    BuiltinProblem b = builtin(name);
    const std::size_t q = b.true_params.size();
    std::vector<EstimatorConfig> estimators;
    for (Variant v : builtin_variants(name)) {
        EstimatorConfig c;
        c.variant = v;
        c.tau = b.tau;
        c.mu = b.mu;
        c.theta_hat_0 = Vector(q, 0.0);
        estimators.push_back(c);
    }
    SimSettings settings;
    settings.t_end = builtin_t_end(name);
    return ScenarioConfig{b.name, EstimationProblem(b.regressor, b.true_params), std::move(estimators),
                          settings, {}};
}

namespace {

void reject_unknown_keys(const json& obj, std::initializer_list<std::string_view> allowed, const std::string& where) {
    for (auto it = obj.begin(); it != obj.end(); ++it) {
        bool ok = false;
        for (auto a : allowed) ok = ok || it.key() == a;
        if (!ok) throw ConfigError(where + ": unknown key '" + it.key() + "'");
    }
}

const json& require(const json& obj, const char* key, const std::string& where) {
    if (!obj.contains(key)) throw ConfigError(where + ": missing key '" + key + "'");
    return obj.at(key);
}

Vector read_vector(const json& j, const std::string& where) {
    if (!j.is_array()) throw ConfigError(where + ": expected an array of numbers");
    Vector v;
    for (const auto& x : j) {
        if (!x.is_number()) throw ConfigError(where + ": expected an array of numbers");
        v.push_back(x.get<double>());
    }
    return v;
}

double read_number(const json& j, const std::string& where) {
    if (!j.is_number()) throw ConfigError(where + ": expected a number");
    return j.get<double>();
}

}  // namespace

ScenarioConfig parse_scenario(std::string_view json_text) {
    json root;
    try {
        root = json::parse(json_text);
    } catch (const json::parse_error& e) {
        throw ConfigError(std::string("scenario file is not valid JSON: ") + e.what());
    }
    if (!root.is_object()) throw ConfigError("scenario file must contain a JSON object");
    reject_unknown_keys(root, {"name", "problem", "estimators", "settings", "outputs"}, "scenario");

    const json& name_j = require(root, "name", "scenario");
    if (!name_j.is_string()) throw ConfigError("scenario: 'name' must be a string");
    const std::string name = name_j.get<std::string>();

    const json& pj = require(root, "problem", "problem");
    if (!pj.is_object()) throw ConfigError("problem: expected an object");
    reject_unknown_keys(pj, {"builtin", "regressor", "true_params"}, "problem");

    std::optional<BuiltinProblem> base;
    std::optional<EstimationProblem> problem;
    if (pj.contains("builtin")) {
        if (pj.contains("regressor") || pj.contains("true_params"))
            throw ConfigError("problem: 'builtin' cannot be combined with an inline regressor");
        if (!pj.at("builtin").is_string()) throw ConfigError("problem: 'builtin' must be a string");
        base = builtin(pj.at("builtin").get<std::string>());
        problem.emplace(base->regressor, base->true_params);
    } else {
        const json& rj = require(pj, "regressor", "problem");
        if (!rj.is_array() || rj.empty()) throw ConfigError("problem.regressor: expected a non-empty array of expressions");
        std::vector<SignalExpr> comps;
        for (const auto& c : rj) {
            if (!c.is_string()) throw ConfigError("problem.regressor: entries must be expression strings");
            try {
                comps.push_back(SignalExpr::parse(c.get<std::string>()));
            } catch (const SignalError& e) {
                throw ConfigError(std::string("problem.regressor: ") + e.what());
            }
        }
        problem.emplace(RegressorSpec(std::move(comps)),
                        read_vector(require(pj, "true_params", "problem"), "problem.true_params"));
    }
    const std::size_t q = problem->dimension();

    const json& ej = require(root, "estimators", "scenario");
    if (!ej.is_array()) throw ConfigError("estimators: expected an array");
    std::vector<EstimatorConfig> estimators;
    for (std::size_t i = 0; i < ej.size(); ++i) {
        const json& e = ej[i];
        const std::string where = "estimators[" + std::to_string(i) + "]";
        if (!e.is_object()) throw ConfigError(where + ": expected an object");
        reject_unknown_keys(e, {"label", "variant", "tau", "mu", "theta_hat_0", "filter_init"}, where);
        EstimatorConfig c;
        const json& vj = require(e, "variant", where);
        if (!vj.is_string()) throw ConfigError(where + ".variant: expected a string");
        c.variant = parse_variant(vj.get<std::string>());
        if (e.contains("label")) {
            if (!e.at("label").is_string()) throw ConfigError(where + ".label: expected a string");
            c.label = e.at("label").get<std::string>();
        }
        if (e.contains("tau"))
            c.tau = read_number(e.at("tau"), where + ".tau");
        else if (base)
            c.tau = base->tau;
        else
            throw ConfigError(where + ": missing key 'tau'");
        if (e.contains("mu"))
            c.mu = read_number(e.at("mu"), where + ".mu");
        else if (base)
            c.mu = base->mu;
        else if (uses_manifold(c.variant))
            throw ConfigError(where + ": missing key 'mu'");
        c.theta_hat_0 = e.contains("theta_hat_0") ? read_vector(e.at("theta_hat_0"), where + ".theta_hat_0")
                                                   : Vector(q, 0.0);
        if (e.contains("filter_init")) c.filter_init = read_number(e.at("filter_init"), where + ".filter_init");
        estimators.push_back(std::move(c));
    }

    SimSettings settings;
    if (base) settings.t_end = builtin_t_end(base->name);
    if (root.contains("settings")) {
        const json& sj = root.at("settings");
        if (!sj.is_object()) throw ConfigError("settings: expected an object");
        reject_unknown_keys(sj, {"dt", "t_end", "record_every"}, "settings");
        if (sj.contains("dt")) settings.dt = read_number(sj.at("dt"), "settings.dt");
        if (sj.contains("t_end")) settings.t_end = read_number(sj.at("t_end"), "settings.t_end");
        if (sj.contains("record_every")) {
            const json& r = sj.at("record_every");
            if (!r.is_number_integer() || r.get<long long>() < 1)
                throw ConfigError("settings.record_every: expected a positive integer");
            settings.record_every = r.get<std::size_t>();
        }
    }

    ScenarioOutputs outputs;
    if (root.contains("outputs")) {
        const json& oj = root.at("outputs");
        if (!oj.is_object()) throw ConfigError("outputs: expected an object");
        reject_unknown_keys(oj, {"csv", "svg"}, "outputs");
        for (const char* key : {"csv", "svg"}) {
            if (!oj.contains(key)) continue;
            if (!oj.at(key).is_string()) throw ConfigError(std::string("outputs.") + key + ": expected a string");
            (std::string_view(key) == "csv" ? outputs.csv : outputs.svg) = oj.at(key).get<std::string>();
        }
    }

    ScenarioConfig cfg{name, std::move(*problem), std::move(estimators), settings, std::move(outputs)};
    cfg.validate();
    return cfg;
}

ScenarioConfig load_scenario_file(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw IoError("cannot open scenario file " + path.string());
    std::ostringstream ss;
    ss << in.rdbuf();
    try {
        return parse_scenario(ss.str());
    } catch (const ConfigError& e) {
        throw ConfigError(path.string() + ": " + e.what());
    }
}

ScenarioConfig resolve_scenario(std::string_view name_or_path) {
    for (const auto& n : builtin_names())
        if (n == name_or_path) return builtin_scenario(n);
    const std::filesystem::path p(name_or_path);
    std::error_code ec;
    if (std::filesystem::is_regular_file(p, ec)) return load_scenario_file(p);
    throw ScenarioNotFound("scenario not found: '" + std::string(name_or_path) +
                           "' is neither a builtin name nor a readable file");
}

namespace {

EstimatorResult run_one(const ScenarioConfig& config, const EstimatorConfig& est) {
    EstimatorResult r;
    r.label = est.display_label();
    r.config = est;
    try {
        r.trajectory = simulate(config.problem, est, config.settings);
    } catch (const DivergenceError&) {
        throw;  // already labelled by simulate
    } catch (const SignalError& e) {
        throw SignalError(r.label + ": " + e.what(), e.component());
    } catch (const ConfigError& e) {
        throw ConfigError(r.label + ": " + e.what());
    }
    r.convergence_01 = convergence_time(r.trajectory, 0.1);
    r.convergence_001 = convergence_time(r.trajectory, 0.01);
    r.mu_flagged = est.mu_outside_unit_interval();
    return r;
}

}  // namespace

ScenarioResult run_scenario(const ScenarioConfig& config) {
    config.validate();

    std::vector<std::future<EstimatorResult>> jobs;
    jobs.reserve(config.estimators.size());
    for (const auto& est : config.estimators)
        jobs.push_back(std::async(std::launch::async, run_one, std::cref(config), std::cref(est)));

    ScenarioResult result;
    result.name = config.name;
    result.true_params = config.problem.true_params();
    // get() in config order; the first failure (in that order) propagates.
    for (auto& j : jobs) result.estimators.push_back(j.get());

    const double window = 2.0 * std::numbers::pi;
    result.excitation_window = window;
    if (config.settings.t_end >= window) {
        const double quad_dt = std::min(config.settings.dt, window / 10.0);
        result.excitation = excitation_scan(config.problem.regressor(), 0.0, config.settings.t_end - window,
                                            window / 2.0, window, quad_dt);
    }
    return result;
}

}  // namespace mge
