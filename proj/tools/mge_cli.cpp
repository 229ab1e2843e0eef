// mge: run estimator scenarios, inspect excitation, and run the verification suite.

#include <cstdio>
#include <filesystem>
#include <iostream>
#include <optional>
#include <string>

#include <CLI11.hpp>

#include "mge/errors.hpp"
#include "mge/export.hpp"
#include "mge/scenario.hpp"
#include "mge/signals.hpp"
#include "mge/verify.hpp"

namespace fs = std::filesystem;

namespace {

constexpr int kOk = 0;
constexpr int kValidation = 1;
constexpr int kDivergence = 2;

std::string fmt_time(const std::optional<double>& t) {
    if (!t) return "never";
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.3f", *t);
    return buf;
}

int cmd_list() {
    for (const auto& name : mge::builtin_names()) std::cout << name << "  " << mge::builtin(name).provenance << '\n';
    return kOk;
}

int cmd_run(const std::string& scenario, std::optional<double> dt, std::optional<double> t_end,
            const std::string& out_dir) {
    mge::ScenarioConfig cfg = mge::resolve_scenario(scenario);
    if (dt) cfg.settings.dt = *dt;
    if (t_end) cfg.settings.t_end = *t_end;

    const mge::ScenarioResult result = mge::run_scenario(cfg);

    const fs::path dir = out_dir.empty() ? fs::current_path() : fs::path(out_dir);
    fs::create_directories(dir);
    const fs::path csv_prefix = dir / cfg.outputs.csv.value_or(cfg.name);
    const fs::path svg_path = dir / cfg.outputs.svg.value_or(cfg.name + ".svg");
    const auto csvs = mge::export_csv(result, csv_prefix);
    mge::emit_plot(result, svg_path);

    std::printf("scenario %s  (q=%zu, dt=%g, t_end=%g)\n", result.name.c_str(), cfg.problem.dimension(),
                cfg.settings.dt, cfg.settings.t_end);
    std::printf("%-12s %14s %12s %12s %16s\n", "estimator", "final |err|", "t*(0.1)", "t*(0.01)", "dS/dt>0 steps");
    for (const auto& e : result.estimators) {
        const bool manifold = mge::uses_manifold(e.config.variant) && cfg.problem.dimension() >= 2;
        std::printf("%-12s %14.6e %12s %12s %16s%s\n", e.label.c_str(), e.trajectory.err_norms.back(),
                    fmt_time(e.convergence_01).c_str(), fmt_time(e.convergence_001).c_str(),
                    manifold ? std::to_string(e.trajectory.storage_increase_events).c_str() : "-",
                    e.mu_flagged ? "  (mu outside (0,1))" : "");
    }
    if (!result.excitation.empty()) {
        double lo = result.excitation.front().min_eigenvalue, hi = lo;
        for (const auto& r : result.excitation) {
            lo = std::min(lo, r.min_eigenvalue);
            hi = std::max(hi, r.min_eigenvalue);
        }
        std::printf("excitation rho over %zu windows of %.4g s: min %.4e, max %.4e\n", result.excitation.size(),
                    result.excitation_window, lo, hi);
    }
    for (const auto& p : csvs) std::printf("wrote %s\n", p.string().c_str());
    std::printf("wrote %s\n", svg_path.string().c_str());
    return kOk;
}

int cmd_check_pe(const std::string& scenario, double window, double stride, std::optional<double> t_end,
                 double dt) {
    const mge::ScenarioConfig cfg = mge::resolve_scenario(scenario);
    const double stop = t_end.value_or(cfg.settings.t_end);
    const auto reports = mge::excitation_scan(cfg.problem.regressor(), 0.0, stop, stride, window,
                                              std::min(dt, window / 10.0));
    std::printf("# scenario %s, window T=%g\n", cfg.name.c_str(), window);
    std::printf("%10s %16s\n", "t", "rho");
    for (const auto& r : reports) std::printf("%10.4f %16.8e\n", r.window_start, r.min_eigenvalue);
    return kOk;
}

int cmd_verify(bool acceptance_only) {
    bool ok = mge::verify::run_all(mge::verify::acceptance_checks(), std::cout);
    if (!acceptance_only) {
        ok = mge::verify::run_all(mge::verify::invariant_checks(), std::cout) && ok;
        mge::verify::report_storage_sign(std::cout);
    }
    std::cout << (ok ? "verify: all checks passed\n" : "verify: FAILURES\n");
    return ok ? kOk : kValidation;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Online parameter estimation benchmark: GE, MGE, MRE, MGE+MRE and DREM"};
    app.require_subcommand(1);

    auto* list = app.add_subcommand("list", "List builtin scenarios");

    auto* run = app.add_subcommand("run", "Run a builtin or file scenario and write CSV + SVG");
    std::string run_scenario;
    std::optional<double> run_dt, run_t_end;
    std::string run_out;
    run->add_option("--scenario", run_scenario, "Builtin name or path to a JSON scenario file")->required();
    run->add_option("--dt", run_dt, "Integration step [s]");
    run->add_option("--t-end", run_t_end, "Final time [s]");
    run->add_option("--out", run_out, "Output directory (default: current directory)");

    auto* pe = app.add_subcommand("check-pe", "Print the sliding minimum-eigenvalue table rho(t)");
    std::string pe_scenario;
    double pe_window = 0.0;
    double pe_stride = 0.5;
    double pe_dt = 1e-3;
    std::optional<double> pe_t_end;
    pe->add_option("--scenario", pe_scenario, "Builtin name or path to a JSON scenario file")->required();
    pe->add_option("--window", pe_window, "Window length T [s]")->required()->check(CLI::PositiveNumber);
    pe->add_option("--stride", pe_stride, "Spacing of window starts [s]")->check(CLI::PositiveNumber);
    pe->add_option("--dt", pe_dt, "Quadrature step [s]")->check(CLI::PositiveNumber);
    pe->add_option("--t-end", pe_t_end, "Last window start [s] (default: scenario horizon)");

    auto* ver = app.add_subcommand("verify", "Run the acceptance criteria and module invariants");
    bool acceptance_only = false;
    ver->add_flag("--acceptance-only", acceptance_only, "Skip module invariants and the storage report");

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        std::cerr << "error: " << e.what() << "\n\n" << app.help();
        return kValidation;
    }

    try {
        if (*list) return cmd_list();
        if (*run) return cmd_run(run_scenario, run_dt, run_t_end, run_out);
        if (*pe) return cmd_check_pe(pe_scenario, pe_window, pe_stride, pe_t_end, pe_dt);
        if (*ver) return cmd_verify(acceptance_only);
    } catch (const mge::DivergenceError& e) {
        std::cerr << "divergence: " << e.what() << '\n';
        return kDivergence;
    } catch (const mge::Error& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kValidation;
    } catch (const std::filesystem::filesystem_error& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kValidation;
    }
    return kValidation;
}
