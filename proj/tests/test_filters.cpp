#include <cmath>

#include <gtest/gtest.h>

#include "mge/filters.hpp"
#include "mge/oracles.hpp"
#include "mge/sim.hpp"

namespace {

mge::FilterState zero_filter(std::size_t q) { return mge::FilterState{mge::Matrix(q), mge::Vector(q, 0.0)}; }

}  // namespace

TEST(FilterRhs, DirectSubstitution) {
    const std::vector<double> w{1.0, 0.0};
    const auto d = mge::filter_rhs(zero_filter(2), w, 0.0);
    EXPECT_EQ(d.omega(0, 0), 1.0);
    EXPECT_EQ(d.omega(0, 1), 0.0);
    EXPECT_EQ(d.omega(1, 1), 0.0);
    EXPECT_EQ(d.g, (mge::Vector{0, 0}));
}

TEST(FilterRhs, SteadyStateIsEquilibrium) {
    const std::vector<double> w{2.0, -1.0, 0.5};
    const double g = 1.25;
    mge::FilterState s{mge::Matrix::outer(w, w), {w[0] * g, w[1] * g, w[2] * g}};
    const auto d = mge::filter_rhs(s, w, g);
    for (double v : d.omega.data()) EXPECT_EQ(v, 0.0);
    for (double v : d.g) EXPECT_EQ(v, 0.0);
}

TEST(FilterRhs, ConstantRegressorClosedForm) {
    const std::vector<double> w{1.5, -0.5};
    std::vector<double> x(6, 0.0);  // Omega row-major then G
    const double g = 2.0;
    const mge::OdeRhs rhs = [&](double, std::span<const double> y) {
        mge::FilterState s{mge::Matrix(2), {y[4], y[5]}};
        for (std::size_t i = 0; i < 4; ++i) s.omega.data()[i] = y[i];
        const auto d = mge::filter_rhs(s, w, g);
        return mge::Vector{d.omega(0, 0), d.omega(0, 1), d.omega(1, 0), d.omega(1, 1), d.g[0], d.g[1]};
    };
    double t = 0.0;
    for (int i = 0; i < 1000; ++i, t = i * 1e-3) x = mge::rk4_step(rhs, t, x, 1e-3);
    for (std::size_t i = 0; i < 2; ++i)
        for (std::size_t j = 0; j < 2; ++j)
            EXPECT_NEAR(x[2 * i + j], mge::oracle::filter_closed_form(w[i], w[j], 1.0), 1e-12);
    EXPECT_NEAR(x[4], (1 - std::exp(-1.0)) * w[0] * g, 1e-12);
}
