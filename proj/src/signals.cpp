#include "mge/signals.hpp"

#include <cmath>

#include "mge/errors.hpp"

namespace mge {

Vector eval(const RegressorSpec& spec, double t) {
    if (!(t >= 0.0)) throw ConfigError("regressor evaluated at negative time " + std::to_string(t));
    const auto& comps = spec.components();
    Vector out(comps.size());
    for (std::size_t i = 0; i < comps.size(); ++i) {
        double v;
        try {
            v = comps[i](t);
        } catch (const SignalError& e) {
            throw SignalError("component " + std::to_string(i + 1) + ": " + e.what(), i);
        }
        if (!std::isfinite(v))
            throw SignalError("component " + std::to_string(i + 1) + " is not finite at t=" + std::to_string(t),
                              i);
        out[i] = v;
    }
    return out;
}

namespace {

using E = SignalExpr;

// (sin t + cos t)/(1+t)^0.5 - sin t/(2 (1+t)^1.5): bounded, square-integrable
// but not persistently exciting.
SignalExpr decaying_mix() {
    return (E::sin_of(1.0) + E::cos_of(1.0)) / E::power(0.5) -
           E::sin_of(1.0) / (E::constant(2.0) * E::power(1.5));
}

BuiltinProblem make(std::string name, std::string provenance, std::vector<SignalExpr> comps,
                    Vector theta, double tau, double mu) {
    return BuiltinProblem{std::move(name), std::move(provenance), RegressorSpec(std::move(comps)),
                          std::move(theta), tau, mu};
}

}  // namespace

const std::vector<std::string>& builtin_names() {
    static const std::vector<std::string> names = {"example1", "example2", "example3",
                                                   "example4", "example5", "example6"};
    return names;
}

BuiltinProblem builtin(std::string_view name) {
    if (name == "example1")
        return make("example1", "persistently exciting col(1, sin t); MGE, tau=1 mu=0.95",
                    {E::constant(1.0), E::sin_of(1.0)}, {-2.0, 2.0}, 1.0, 0.95);
    if (name == "example2")
        return make("example2", "non-PE decaying col(1, mix(t)); MGE, tau=1 mu=0.95",
                    {E::constant(1.0), decaying_mix()}, {-2.0, 2.0}, 1.0, 0.95);
    if (name == "example3")
        return make("example3", "persistently exciting col(sin t, cos t, sin 2t); GE vs MGE, tau=1 mu=0.55",
                    {E::sin_of(1.0), E::cos_of(1.0), E::sin_of(2.0)}, {1.0, 2.0, 3.0}, 1.0, 0.55);
    if (name == "example4")
        return make("example4", "non-PE decaying col(1, mix(t)); MRE vs MGE+MRE, tau=1 mu=0.75",
                    {E::constant(1.0), decaying_mix()}, {-2.0, 2.0}, 1.0, 0.75);
    if (name == "example5")
        return make("example5", "non-PE col(1, exp(-0.25t)); MRE vs MGE+MRE, tau=50 mu=0.75",
                    {E::constant(1.0), E::exp_of(-0.25)}, {-2.0, 2.0}, 50.0, 0.75);
    if (name == "example6")
        return make("example6",
                    "non-PE col(1, cos t, mix(t)); GE, MRE, MGE+MRE and DREM, tau=10 mu=0.95",
                    {E::constant(1.0), E::cos_of(1.0), decaying_mix()}, {1.0, 2.0, 3.0}, 10.0, 0.95);
    throw ScenarioNotFound("scenario not found: '" + std::string(name) + "'");
}

ExcitationReport excitation_report(const RegressorSpec& spec, double t, double T, double dt) {
    if (!(T > 0.0)) throw ConfigError("excitation window length must be positive");
    if (!(dt > 0.0)) throw ConfigError("quadrature step must be positive");
    if (dt > T / 10.0 * (1.0 + 1e-12)) throw ConfigError("quadrature step must be at most T/10");

    const auto n = static_cast<std::size_t>(std::ceil(T / dt - 1e-9));
    const double h = T / static_cast<double>(n);
    const std::size_t q = spec.dimension();

    ExcitationReport rep;
    rep.window_start = t;
    rep.window_length = T;
    rep.gram = Matrix(q);
    for (std::size_t k = 0; k <= n; ++k) {
        const double w = (k == 0 || k == n) ? 0.5 * h : h;
        const Vector omega = eval(spec, t + h * static_cast<double>(k));
        for (std::size_t i = 0; i < q; ++i)
            for (std::size_t j = i; j < q; ++j) rep.gram(i, j) += w * omega[i] * omega[j];
    }
    for (std::size_t i = 0; i < q; ++i)
        for (std::size_t j = 0; j < i; ++j) rep.gram(i, j) = rep.gram(j, i);
    rep.min_eigenvalue = symmetric_eigenvalues(rep.gram).front();
    return rep;
}

std::vector<ExcitationReport> excitation_scan(const RegressorSpec& spec, double start, double stop,
                                              double stride, double T, double dt) {
    if (!(stride > 0.0)) throw ConfigError("window stride must be positive");
    std::vector<ExcitationReport> out;
    for (std::size_t k = 0;; ++k) {
        const double t = start + stride * static_cast<double>(k);
        if (t > stop + 1e-9 * stride) break;
        out.push_back(excitation_report(spec, t, T, dt));
    }
    return out;
}

}  // namespace mge
