#include <cmath>
#include <numbers>
#include <random>

#include <Eigen/Dense>
#include <gtest/gtest.h>

#include "mge/errors.hpp"
#include "mge/estimators.hpp"
#include "mge/oracles.hpp"
#include "mge/signals.hpp"

namespace {

using V = mge::Vector;

mge::EstimatorState filtered(V hat, mge::Matrix omega, V g) {
    return mge::EstimatorState{std::move(hat), mge::FilterState{std::move(omega), std::move(g)}};
}

mge::Matrix diag(V d) {
    mge::Matrix m(d.size());
    for (std::size_t i = 0; i < d.size(); ++i) m(i, i) = d[i];
    return m;
}

void expect_near(const V& a, const V& b, double tol) {
    ASSERT_EQ(a.size(), b.size());
    for (std::size_t i = 0; i < a.size(); ++i) EXPECT_NEAR(a[i], b[i], tol) << "index " << i;
}

}  // namespace

TEST(GeRhs, Examples) {
    const V w{1.0, 0.0};
    EXPECT_EQ(mge::ge_rhs(V{-2, 2}, w, -2.0, 1.0), (V{0, 0}));
    EXPECT_EQ(mge::ge_rhs(V{3, 4}, V{0, 0}, 17.0, 1.0), (V{0, 0}));
    EXPECT_EQ(mge::ge_rhs(V{0, 0}, V{1, 0.5}, -1.0, 1.0), (V{-1, -0.5}));
}

TEST(MgeGain, Examples) {
    expect_near(mge::mge_gain(V{1, 0.5}, 1.0, 0.95).k, V{1, 0.05}, 1e-15);
    EXPECT_EQ(mge::mge_gain(V{0, 1, 0}, 1.0, 0.55).k, (V{0, 1, 1}));
    EXPECT_EQ(mge::mge_gain(V{0.3, 0.7}, 2.0, 0.0).k, (V{0.6, 2.8}));
}

TEST(MgeGain, ScalarFallsBackToGradient) {
    EXPECT_EQ(mge::mge_gain(V{0.4}, 3.0, 0.9).k, (V{3.0 * 0.4}));
    EXPECT_THROW(mge::mge_gain(V{}, 1.0, 0.5), mge::ConfigError);
}

TEST(MgeGain, GeneralFormMatchesHandSpecializations) {
    std::mt19937_64 rng(5);
    std::uniform_real_distribution<double> d(-5.0, 5.0);
    for (int i = 0; i < 500; ++i) {
        const double w1 = d(rng), w2 = d(rng), w3 = d(rng), tau = std::abs(d(rng)) + 0.1, mu = d(rng);
        EXPECT_EQ(mge::mge_gain(V{w1, w2}, tau, mu).k, mge::oracle::mge_gain_q2(w1, w2, tau, mu));
        EXPECT_EQ(mge::mge_gain(V{w1, w2, w3}, tau, mu).k, mge::oracle::mge_gain_q3(w1, w2, w3, tau, mu));
    }
}

TEST(MgeGain, HigherDimensionPattern) {
    const V w{1, 2, 3, 4, 5};
    const auto k = mge::mge_gain(w, 1.0, 0.5).k;
    for (std::size_t i = 0; i < 4; ++i) EXPECT_EQ(k[i], w[i]);
    EXPECT_DOUBLE_EQ(k[4], 2 * 5 + (2 + 3 + 4) - 4 * 0.5 * 1);
}

TEST(MgeRhs, Examples) {
    expect_near(mge::mge_rhs(V{0, 0}, V{1, 0}, -2.0, 1.0, 0.95), V{-2, 1.9}, 1e-15);
    EXPECT_EQ(mge::mge_rhs(V{0, 0, 0}, V{0, 1, 0}, 2.0, 1.0, 0.55), (V{0, 2, 2}));
    EXPECT_EQ(mge::mge_rhs(V{1, 2, 3}, V{0.3, -1, 2}, 0.3 - 2 + 6, 1.0, 0.55), (V{0, 0, 0}));
}

TEST(MreRhs, Examples) {
    EXPECT_EQ(mge::mre_rhs(filtered(V{0.5, 0.5}, mge::Matrix(2), V{0, 0}), 1.0), (V{0, 0}));
    mge::Matrix om(2);
    om(0, 0) = 1.0;
    EXPECT_EQ(mge::mre_rhs(filtered(V{0, 0}, om, V{-2, 0}), 1.0), (V{-2, 0}));
    EXPECT_THROW(mge::mre_rhs(mge::EstimatorState{V{0, 0}, std::nullopt}, 1.0), mge::ConfigError);
}

TEST(MreRhs, MatchesEigenMatVec) {
    std::mt19937_64 rng(9);
    std::uniform_real_distribution<double> d(-2.0, 2.0);
    for (int trial = 0; trial < 100; ++trial) {
        const std::size_t q = 1 + trial % 4;
        mge::Matrix om(q);
        Eigen::MatrixXd eo(q, q);
        Eigen::VectorXd eg(q), eh(q);
        V g(q), hat(q);
        for (std::size_t i = 0; i < q; ++i) {
            g[i] = eg(i) = d(rng);
            hat[i] = eh(i) = d(rng);
            for (std::size_t j = 0; j < q; ++j) om(i, j) = eo(i, j) = d(rng);
        }
        const double tau = 3.0;
        const Eigen::VectorXd ref = tau * (eg - eo * eh);
        const V out = mge::mre_rhs(filtered(hat, om, g), tau);
        for (std::size_t i = 0; i < q; ++i) EXPECT_NEAR(out[i], ref(i), 1e-13);
    }
}

TEST(MreRhs, TruthIsEquilibrium) {
    mge::Matrix om(2);
    om(0, 0) = 2;
    om(0, 1) = om(1, 0) = 0.5;
    om(1, 1) = 1;
    const V theta{-2, 2};
    const V g{om(0, 0) * theta[0] + om(0, 1) * theta[1], om(1, 0) * theta[0] + om(1, 1) * theta[1]};
    EXPECT_EQ(mge::mre_rhs(filtered(theta, om, g), 4.0), (V{0, 0}));
    EXPECT_EQ(mge::mge_mre_rhs(filtered(theta, om, g), 4.0, 0.75), (V{0, 0}));
}

TEST(MgeMreRhs, LastRowMatchesHandForms) {
    std::mt19937_64 rng(13);
    std::uniform_int_distribution<int> d(-9, 9);
    for (int trial = 0; trial < 200; ++trial) {
        const double tau = 1 + trial % 5, mu = 0.25 * (trial % 4);
        // Integer entries keep eps = G - Omega theta_hat exact.
        for (std::size_t q : {2u, 3u}) {
            mge::Matrix om(q);
            V g(q), hat(q);
            for (std::size_t i = 0; i < q; ++i) {
                g[i] = d(rng);
                hat[i] = d(rng);
                for (std::size_t j = 0; j < q; ++j) om(i, j) = d(rng);
            }
            V eps(q);
            for (std::size_t i = 0; i < q; ++i) {
                eps[i] = g[i];
                for (std::size_t j = 0; j < q; ++j) eps[i] -= om(i, j) * hat[j];
            }
            const V out = mge::mge_mre_rhs(filtered(hat, om, g), tau, mu);
            for (std::size_t i = 0; i + 1 < q; ++i) EXPECT_EQ(out[i], tau * eps[i]);
            const double last = q == 2 ? mge::oracle::mge_mre_last_row_q2(eps[0], eps[1], tau, mu)
                                       : mge::oracle::mge_mre_last_row_q3(eps[0], eps[1], eps[2], tau, mu);
            EXPECT_EQ(out[q - 1], last);
        }
    }
}

TEST(DremRhs, Examples) {
    EXPECT_EQ(mge::drem_rhs(filtered(V{1, 1}, mge::Matrix(2), V{0, 0}), 1.0), (V{0, 0}));
    EXPECT_EQ(mge::drem_rhs(filtered(V{0, 0}, diag({2, 1}), V{-4, 2}), 1.0), (V{-8, 8}));
    const V theta{1, 2, 3}, hat{0.5, 0, 4};
    expect_near(mge::drem_rhs(filtered(hat, mge::Matrix::identity(3), theta), 2.0), V{1, 4, -2}, 1e-15);
}

TEST(DremRhs, MatchesEigenOracle) {
    std::mt19937_64 rng(17);
    std::uniform_real_distribution<double> d(-2.0, 2.0);
    for (int trial = 0; trial < 100; ++trial) {
        const std::size_t q = 2 + trial % 3;
        mge::Matrix om(q);
        Eigen::MatrixXd eo(q, q);
        Eigen::VectorXd eg(q), eh(q);
        V g(q), hat(q);
        for (std::size_t i = 0; i < q; ++i) {
            g[i] = eg(i) = d(rng);
            hat[i] = eh(i) = d(rng);
            for (std::size_t j = 0; j < q; ++j) om(i, j) = eo(i, j) = d(rng);
        }
        const double det = eo.determinant();
        const Eigen::VectorXd y = det * eo.inverse() * eg;
        const Eigen::VectorXd ref = 1.5 * det * (y - det * eh);
        const V out = mge::drem_rhs(filtered(hat, om, g), 1.5);
        for (std::size_t i = 0; i < q; ++i) EXPECT_NEAR(out[i], ref(i), 1e-9 * (1 + std::abs(ref(i))));
    }
}

TEST(Manifold, ResidualExamples) {
    EXPECT_NEAR(mge::manifold_residual(V{1, 0.95}, 0.95), 0.0, 1e-15);
    EXPECT_EQ(mge::manifold_residual(V{1, 1, 1}, 0.5), 1.0);
    EXPECT_EQ(mge::manifold_residual(V{0, 0, 0}, 0.3), 0.0);
    EXPECT_THROW(mge::manifold_residual(V{1}, 0.5), mge::ConfigError);
    EXPECT_EQ(mge::manifold_coefficients(4, 0.5), (V{-1.5, 1, 1, 1}));
}

TEST(Manifold, StorageExamples) {
    EXPECT_EQ(mge::storage(0.0), 0.0);
    EXPECT_EQ(mge::storage(2.0), 2.0);
    EXPECT_EQ(mge::storage(-3.0), 4.5);
}

TEST(Manifold, StorageRateIsChainRule) {
    // Central difference of S(Phi(err - h * theta_hat_dot)) in h.
    const V err{0.4, -1.2, 0.7}, dot{0.3, 0.1, -0.5};
    const double mu = 0.55, h = 1e-6;
    auto s_at = [&](double step) {
        V e(3);
        for (std::size_t i = 0; i < 3; ++i) e[i] = err[i] - step * dot[i];
        return mge::storage(mge::manifold_residual(e, mu));
    };
    const double fd = (s_at(h) - s_at(-h)) / (2 * h);
    EXPECT_NEAR(mge::storage_rate(err, dot, mu), fd, 1e-8);
}

TEST(ClosedForm, ScalarExamples) {
    const mge::RegressorSpec one({mge::SignalExpr::constant(1.0)});
    EXPECT_NEAR(mge::ge_closed_form_scalar(one, 1.0, 1.0, 1.0, 1e-3), std::exp(-1.0), 1e-12);
    const mge::RegressorSpec zero({mge::SignalExpr::constant(0.0)});
    EXPECT_EQ(mge::ge_closed_form_scalar(zero, 5.0, 0.7, 12.0, 1e-2), 0.7);
    const mge::RegressorSpec sine({mge::SignalExpr::sin_of(1.0)});
    EXPECT_NEAR(mge::ge_closed_form_scalar(sine, 1.0, 1.0, 2 * std::numbers::pi, 1e-3), std::exp(-std::numbers::pi),
                1e-9);
    EXPECT_THROW(mge::ge_closed_form_scalar(mge::builtin("example1").regressor, 1.0, 1.0, 1.0, 1e-3),
                 mge::ConfigError);
}

TEST(Dispatch, EstimatorRhsRoutesVariants) {
    mge::EstimatorConfig c;
    c.tau = 1.0;
    c.mu = 0.95;
    const V w{1, 0};
    const auto plain = mge::EstimatorState{V{0, 0}, std::nullopt};
    c.variant = mge::Variant::GE;
    EXPECT_EQ(mge::estimator_rhs(c, plain, w, -2.0), mge::ge_rhs(V{0, 0}, w, -2.0, 1.0));
    c.variant = mge::Variant::MGE;
    EXPECT_EQ(mge::estimator_rhs(c, plain, w, -2.0), mge::mge_rhs(V{0, 0}, w, -2.0, 1.0, 0.95));
    const auto f = filtered(V{0, 0}, diag({2, 1}), V{-4, 2});
    c.variant = mge::Variant::DREM;
    EXPECT_EQ(mge::estimator_rhs(c, f, w, -2.0), (V{-8, 8}));
    c.variant = mge::Variant::MRE;
    EXPECT_EQ(mge::estimator_rhs(c, f, w, -2.0), (V{-4, 2}));
}
