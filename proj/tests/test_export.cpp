#include <filesystem>
#include <fstream>
#include <limits>
#include <random>
#include <sstream>

#include <gtest/gtest.h>

#include "mge/errors.hpp"
#include "mge/export.hpp"
#include "mge/scenario.hpp"

namespace fs = std::filesystem;

namespace {

fs::path scratch(const std::string& leaf) {
    const auto dir = fs::temp_directory_path() / "mge_export_tests";
    fs::create_directories(dir);
    return dir / leaf;
}

std::string slurp(const fs::path& p) {
    std::ifstream in(p, std::ios::binary);
    std::ostringstream s;
    s << in.rdbuf();
    return s.str();
}

mge::ScenarioResult single(mge::Trajectory traj, mge::Vector truth) {
    mge::ScenarioResult r;
    r.name = "single";
    r.true_params = std::move(truth);
    mge::EstimatorResult e;
    e.label = "MGE";
    e.config.variant = mge::Variant::MGE;
    e.trajectory = std::move(traj);
    r.estimators.push_back(std::move(e));
    return r;
}

std::size_t count(const std::string& text, const std::string& needle) {
    std::size_t n = 0;
    for (auto pos = text.find(needle); pos != std::string::npos; pos = text.find(needle, pos + 1)) ++n;
    return n;
}

}  // namespace

TEST(FormatDouble, ShortestRoundTrip) {
    EXPECT_EQ(mge::format_double(0.0), "0");
    EXPECT_EQ(mge::format_double(std::sqrt(8.0)), "2.8284271247461903");
    EXPECT_EQ(mge::format_double(-0.5), "-0.5");
}

TEST(Csv, Headers) {
    EXPECT_EQ(mge::csv_header(3), "t,theta_hat_1,theta_hat_2,theta_hat_3,err_norm,manifold_residual,storage");
}

TEST(Csv, FirstRowOfExample1) {
    auto cfg = mge::builtin_scenario("example1");
    cfg.settings.t_end = 0.05;
    const auto paths = mge::export_csv(mge::run_scenario(cfg), scratch("ex1"));
    ASSERT_EQ(paths.size(), 1u);
    EXPECT_EQ(paths[0].filename(), "ex1_MGE.csv");
    const std::string text = slurp(paths[0]);
    const auto second_line = text.substr(text.find('\n') + 1);
    EXPECT_EQ(second_line.rfind("0,0,0,2.8284271247461903,", 0), 0u) << second_line;
}

TEST(Csv, EmptyTrajectoryIsHeaderOnly) {
    mge::Trajectory t;
    t.dimension = 2;
    const auto p = scratch("empty.csv");
    mge::write_trajectory_csv(t, p);
    EXPECT_EQ(slurp(p), mge::csv_header(2) + "\n");
    EXPECT_EQ(mge::read_trajectory_csv(p).size(), 0u);
}

TEST(Csv, RoundTripIsExact) {
    std::mt19937_64 rng(21);
    std::uniform_real_distribution<double> d(-1e3, 1e3);
    mge::Trajectory t;
    t.dimension = 3;
    for (int i = 0; i < 200; ++i) {
        t.times.push_back(i * 0.1);
        t.estimates.push_back({d(rng), d(rng) * 1e-300, std::numeric_limits<double>::denorm_min()});
        t.err_norms.push_back(std::abs(d(rng)));
        t.manifold_residuals.push_back(d(rng));
        t.storage_values.push_back(d(rng) * 1e200);
    }
    const auto p = scratch("roundtrip.csv");
    mge::write_trajectory_csv(t, p);
    const auto back = mge::read_trajectory_csv(p);
    EXPECT_EQ(back.dimension, 3u);
    EXPECT_EQ(back.times, t.times);
    EXPECT_EQ(back.estimates, t.estimates);
    EXPECT_EQ(back.err_norms, t.err_norms);
    EXPECT_EQ(back.manifold_residuals, t.manifold_residuals);
    EXPECT_EQ(back.storage_values, t.storage_values);
}

TEST(Csv, MalformedFilesRejected) {
    const auto p = scratch("bad.csv");
    std::ofstream(p, std::ios::binary) << "t,x\n1,2\n";
    EXPECT_THROW(mge::read_trajectory_csv(p), mge::IoError);
    std::ofstream(p, std::ios::binary) << mge::csv_header(1) << "\n0,1,2\n";
    EXPECT_THROW(mge::read_trajectory_csv(p), mge::IoError);
    EXPECT_THROW(mge::read_trajectory_csv(scratch("missing.csv")), mge::IoError);
}

TEST(Svg, SingleEstimatorPolylineCount) {
    auto cfg = mge::builtin_scenario("example3");
    cfg.estimators.resize(1);
    cfg.settings.t_end = 1.0;
    const std::string svg = mge::render_plot(mge::run_scenario(cfg));
    EXPECT_EQ(svg.rfind("<?xml", 0), 0u);
    EXPECT_EQ(count(svg, "<polyline class=\"estimate\""), 3u);
    EXPECT_EQ(count(svg, "<polyline class=\"error\""), 1u);
}

TEST(Svg, ZeroErrorIsFloored) {
    mge::Trajectory t;
    t.dimension = 2;
    for (int i = 0; i < 5; ++i) {
        t.times.push_back(i);
        t.estimates.push_back({-2, 2});
        t.err_norms.push_back(0.0);
        t.manifold_residuals.push_back(0.0);
        t.storage_values.push_back(0.0);
    }
    const std::string svg = mge::render_plot(single(t, {-2, 2}));
    EXPECT_EQ(svg.find("nan"), std::string::npos);
    EXPECT_EQ(svg.find("inf"), std::string::npos);
    EXPECT_NE(svg.find("-16"), std::string::npos);
}

TEST(Svg, LabelsAreEscaped) {
    mge::Trajectory t;
    t.dimension = 1;
    t.times = {0, 1};
    t.estimates = {{0}, {1}};
    t.err_norms = {1, 0.5};
    t.manifold_residuals = {0, 0};
    t.storage_values = {0, 0};
    auto r = single(t, {1});
    r.estimators[0].label = "a<b&c";
    const std::string svg = mge::render_plot(r);
    EXPECT_EQ(svg.find("a<b"), std::string::npos);
    EXPECT_NE(svg.find("a&lt;b&amp;c"), std::string::npos);
}
