#include <cmath>
#include <numbers>
#include <random>

#include <gtest/gtest.h>

#include "mge/errors.hpp"
#include "mge/signals.hpp"

using mge::SignalExpr;

TEST(Builtin, RegressorsAtTimeZero) {
    EXPECT_EQ(mge::eval(mge::builtin("example1").regressor, 0.0), (mge::Vector{1, 0}));
    EXPECT_EQ(mge::eval(mge::builtin("example3").regressor, 0.0), (mge::Vector{0, 1, 0}));
    EXPECT_EQ(mge::eval(mge::builtin("example5").regressor, 0.0), (mge::Vector{1, 1}));
}

TEST(Builtin, CatalogGains) {
    struct Row {
        const char* name;
        mge::Vector theta;
        double tau, mu;
        std::size_t q;
    };
    const Row rows[] = {
        {"example1", {-2, 2}, 1, 0.95, 2},   {"example2", {-2, 2}, 1, 0.95, 2},
        {"example3", {1, 2, 3}, 1, 0.55, 3}, {"example4", {-2, 2}, 1, 0.75, 2},
        {"example5", {-2, 2}, 50, 0.75, 2},  {"example6", {1, 2, 3}, 10, 0.95, 3},
    };
    ASSERT_EQ(mge::builtin_names().size(), 6u);
    for (const auto& r : rows) {
        const auto b = mge::builtin(r.name);
        EXPECT_EQ(b.true_params, r.theta) << r.name;
        EXPECT_EQ(b.tau, r.tau) << r.name;
        EXPECT_EQ(b.mu, r.mu) << r.name;
        EXPECT_EQ(b.regressor.dimension(), r.q) << r.name;
    }
    EXPECT_THROW(mge::builtin("example7"), mge::ScenarioNotFound);
}

TEST(Builtin, DecayingMixMatchesHandFormula) {
    const auto spec = mge::builtin("example2").regressor;
    for (double t : {0.0, 0.3, 1.0, 7.5, 42.0}) {
        const double ref = (std::sin(t) + std::cos(t)) / std::sqrt(1 + t) - std::sin(t) / (2 * std::pow(1 + t, 1.5));
        EXPECT_NEAR(mge::eval(spec, t)[1], ref, 1e-14);
    }
    const auto six = mge::eval(mge::builtin("example6").regressor, 2.0);
    EXPECT_DOUBLE_EQ(six[1], std::cos(2.0));
}

TEST(Eval, NegativeTimeRejected) {
    EXPECT_THROW(mge::eval(mge::builtin("example1").regressor, -1.0), mge::ConfigError);
}

TEST(Eval, NonFiniteNamesComponent) {
    const mge::RegressorSpec spec({SignalExpr::constant(1.0), SignalExpr::exp_of(1000.0)});
    try {
        mge::eval(spec, 1.0);
        FAIL() << "expected SignalError";
    } catch (const mge::SignalError& e) {
        EXPECT_EQ(e.component(), 1u);
    }
}

TEST(Parser, PaperStyleExpression) {
    const auto e = SignalExpr::parse("(sin(t)+cos(t))/pow(1+t,0.5) - sin(t)/(2*pow(1+t,1.5))");
    const auto ref = mge::builtin("example2").regressor.components()[1];
    for (double t : {0.0, 0.5, 3.0, 19.0}) EXPECT_EQ(e(t), ref(t));
}

TEST(Parser, PrecedenceAndUnaryMinus) {
    EXPECT_DOUBLE_EQ(SignalExpr::parse("1+2*3")(0), 7.0);
    EXPECT_DOUBLE_EQ(SignalExpr::parse("(1+2)*3")(0), 9.0);
    EXPECT_DOUBLE_EQ(SignalExpr::parse("8/4/2")(0), 1.0);
    EXPECT_DOUBLE_EQ(SignalExpr::parse("2-3-4")(0), -5.0);
    EXPECT_DOUBLE_EQ(SignalExpr::parse("-t*2")(1.5), -3.0);
    EXPECT_DOUBLE_EQ(SignalExpr::parse("exp(-0.25*t)")(4.0), std::exp(-1.0));
    EXPECT_DOUBLE_EQ(SignalExpr::parse("1e-1 * t")(10.0), 1.0);
}

TEST(Parser, MalformedInput) {
    for (const char* bad : {"", "sin(t", "t +", "foo(t)", "pow(t)", "2**t", "x", "1 2", "sin t"})
        EXPECT_THROW(SignalExpr::parse(bad), mge::SignalError) << bad;
}

TEST(Parser, DivisionByZeroAtEvaluation) {
    const auto e = SignalExpr::parse("1/(t-1)");
    EXPECT_DOUBLE_EQ(e(0.0), -1.0);
    EXPECT_THROW(e(1.0), mge::SignalError);
}

TEST(Parser, ToStringRoundTrip) {
    std::mt19937_64 rng(11);
    std::uniform_int_distribution<int> pick(0, 9);
    std::uniform_real_distribution<double> coef(-3.0, 3.0);
    std::function<SignalExpr(int)> gen = [&](int depth) -> SignalExpr {
        const int k = depth <= 0 ? pick(rng) % 5 : pick(rng);
        switch (k) {
            case 0: return SignalExpr::constant(coef(rng));
            case 1: return SignalExpr::sin_of(coef(rng));
            case 2: return SignalExpr::cos_of(coef(rng));
            case 3: return SignalExpr::exp_of(-std::abs(coef(rng)));
            case 4: return SignalExpr::power(coef(rng));
            case 5: return gen(depth - 1) + gen(depth - 1);
            case 6: return gen(depth - 1) - gen(depth - 1);
            case 7: return gen(depth - 1) * gen(depth - 1);
            case 8: return -gen(depth - 1);
            default: return gen(depth - 1) * SignalExpr::time();
        }
    };
    for (int i = 0; i < 200; ++i) {
        const SignalExpr e = gen(4);
        const SignalExpr back = SignalExpr::parse(e.to_string());
        for (double t : {0.0, 0.7, 5.0}) EXPECT_EQ(back(t), e(t)) << e.to_string();
    }
}

TEST(Excitation, SineWindowGram) {
    const auto r = mge::excitation_report(mge::builtin("example1").regressor, 0.0, 2 * std::numbers::pi, 1e-3);
    EXPECT_NEAR(r.gram(0, 0), 2 * std::numbers::pi, 1e-4);
    EXPECT_NEAR(r.gram(0, 1), 0.0, 1e-4);
    EXPECT_NEAR(r.gram(1, 1), std::numbers::pi, 1e-4);
    EXPECT_NEAR(r.min_eigenvalue, std::numbers::pi, 1e-4);
}

TEST(Excitation, ConstantRegressorIsNotPersistent) {
    const mge::RegressorSpec spec({SignalExpr::constant(1.0), SignalExpr::constant(0.0)});
    const auto r = mge::excitation_report(spec, 3.0, 5.0, 0.01);
    EXPECT_NEAR(r.gram(0, 0), 5.0, 1e-12);
    EXPECT_EQ(r.gram(1, 1), 0.0);
    EXPECT_NEAR(r.min_eigenvalue, 0.0, 1e-12);
}

TEST(Excitation, DecayingComponentBoundedByTailIntegral) {
    const auto r = mge::excitation_report(mge::builtin("example5").regressor, 100.0, 10.0, 1e-3);
    const double tail = 2.0 * (std::exp(-50.0) - std::exp(-55.0));
    EXPECT_NEAR(r.gram(1, 1), tail, 1e-6 * tail);
    EXPECT_LE(r.min_eigenvalue, tail * (1 + 1e-6));
    EXPECT_LT(r.min_eigenvalue, 1e-2);
}

TEST(Excitation, Preconditions) {
    const auto spec = mge::builtin("example1").regressor;
    EXPECT_THROW(mge::excitation_report(spec, 0.0, 0.0, 1e-3), mge::ConfigError);
    EXPECT_THROW(mge::excitation_report(spec, 0.0, 1.0, 0.5), mge::ConfigError);
    EXPECT_THROW(mge::excitation_report(spec, 0.0, 1.0, -1e-3), mge::ConfigError);
}

TEST(Excitation, ScanCoversRange) {
    const auto scan = mge::excitation_scan(mge::builtin("example1").regressor, 0.0, 20.0, 0.5, 2 * std::numbers::pi, 1e-2);
    ASSERT_EQ(scan.size(), 41u);
    EXPECT_DOUBLE_EQ(scan.back().window_start, 20.0);
    for (const auto& r : scan) {
        EXPECT_GE(r.min_eigenvalue, 3.0);
        EXPECT_EQ(mge::asymmetry(r.gram), 0.0);
    }
}
