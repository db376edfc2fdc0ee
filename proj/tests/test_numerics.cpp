#include "zzq/numerics.hpp"

#include <gtest/gtest.h>

#include <chrono>
#include <cmath>
#include <limits>
#include <random>
#include <stdexcept>
#include <vector>

#include "oracle.hpp"

using namespace zzq;
using oracle::kPi;
using oracle::kTwoPi;

TEST(Quadrature, ZeroIntegrand) {
    const auto r = integrate([](double) { return 0.0; }, 0.0, kTwoPi);
    EXPECT_EQ(r.value, 0.0);
    EXPECT_TRUE(r.converged);
}

TEST(Quadrature, PolynomialExact) {
    EXPECT_NEAR(integrate([](double t) { return t; }, 0.0, 1.0).value, 0.5, 1e-15);
    EXPECT_NEAR(integrate([](double t) { return t * t * t; }, -1.0, 2.0).value, 15.0 / 4.0, 1e-13);
}

TEST(Quadrature, ChangeOfVariableOracle) {
    const double got = integrate([](double t) { return std::sin(0.5 * t) * std::exp(2.0 * std::cos(t)); }, 0.0, kTwoPi).value;
    const double ref = 2.0 * std::exp(-2.0) * oracle::integral([](double u) { return std::exp(4.0 * u * u); }, -1.0, 1.0);
    EXPECT_NEAR(got, ref, 1e-10);
}

TEST(Quadrature, Oscillatory) {
    const double got = integrate([](double t) { return std::cos(40.0 * t) * std::exp(-t); }, 0.0, 3.0).value;
    const double ref = oracle::integral([](double t) { return std::cos(40.0 * t) * std::exp(-t); }, 0.0, 3.0);
    EXPECT_NEAR(got, ref, 1e-10);
}

TEST(Quadrature, EmptyInterval) { EXPECT_EQ(integrate([](double) { return 1.0; }, 2.0, 2.0).value, 0.0); }

TEST(Quadrature, RejectsReversedLimitsAndNonFinite) {
    EXPECT_THROW(integrate([](double) { return 1.0; }, 1.0, 0.0), std::invalid_argument);
    EXPECT_THROW(integrate([](double) { return std::numeric_limits<double>::quiet_NaN(); }, 0.0, 1.0),
                 std::domain_error);
    QuadratureConfig bad;
    bad.abs_tol = 0.0;
    EXPECT_THROW(integrate([](double) { return 1.0; }, 0.0, 1.0, bad), std::invalid_argument);
}

TEST(Quadrature, SubdivisionLimitFlagged) {
    QuadratureConfig cfg;
    cfg.max_subdivisions = 1;
    cfg.abs_tol = 1e-15;
    cfg.rel_tol = 1e-15;
    const auto r = integrate([](double t) { return std::sin(200.0 * t); }, 0.0, 10.0, cfg);
    EXPECT_FALSE(r.converged);
    EXPECT_TRUE(std::isfinite(r.value));
    EXPECT_GT(r.err_estimate, 0.0);
}

TEST(Quadrature, Linearity) {
    std::mt19937_64 gen(2024);
    std::uniform_real_distribution<double> coef(-3.0, 3.0);
    for (int trial = 0; trial < 25; ++trial) {
        const double a = coef(gen), b = coef(gen), k1 = coef(gen), k2 = coef(gen);
        auto f = [k1](double x) { return std::exp(k1 * std::sin(x)); };
        auto g = [k2](double x) { return std::cos(k2 * x * x); };
        const double lo = 0.0, hi = 2.0;
        const auto rf = integrate(f, lo, hi);
        const auto rg = integrate(g, lo, hi);
        const auto rs = integrate([&](double x) { return a * f(x) + b * g(x); }, lo, hi);
        const double tol = std::abs(a) * rf.err_estimate + std::abs(b) * rg.err_estimate + rs.err_estimate + 1e-12;
        EXPECT_NEAR(rs.value, a * rf.value + b * rg.value, tol);
    }
}

TEST(PairwiseSum, ManySmallTerms) {
    std::vector<double> v(1 << 20, 0.1);
    EXPECT_NEAR(pairwise_sum(v), 0.1 * (1 << 20), 1e-9);
    EXPECT_EQ(pairwise_sum(std::vector<double>{}), 0.0);
    EXPECT_EQ(pairwise_sum_terms(0, 100, [](std::size_t i) { return static_cast<double>(i); }), 4950.0);
}

TEST(Erfi, Zero) { EXPECT_EQ(erfi(0.0), 0.0); }

TEST(Erfi, QuadratureOracle) {
    for (double z : {0.1, 0.5, 1.0, 2.0, 3.0, 4.5, 5.9, 6.0, 6.1, 7.0, 9.0, 12.0}) {
        const double ref = 2.0 / std::sqrt(kPi) * oracle::integral([](double u) { return std::exp(u * u); }, 0.0, z);
        EXPECT_NEAR(erfi(z) / ref, 1.0, 1e-12) << "z=" << z;
    }
}

TEST(Erfi, Asymptote) {
    const double z = 10.0;
    EXPECT_NEAR(erfi(z) * std::sqrt(kPi) * z * std::exp(-z * z), 1.0, 0.01);
}

TEST(Erfi, StrictlyIncreasing) {
    double prev = -1.0;
    for (int i = 0; i <= 50; ++i) {
        const double v = erfi(0.1 * i);
        EXPECT_GT(v, prev);
        prev = v;
    }
}

TEST(Erfi, ScaledStaysFinite) {
    for (double z : {0.5, 2.0, 6.5, 20.0, 40.0, 1e4}) {
        const double ref =
            2.0 / std::sqrt(kPi) * oracle::integral([z](double u) { return std::exp(u * u - z * z); }, 0.0, z, 1e-15);
        if (z <= 40.0) {
            EXPECT_NEAR(scaled_erfi(z) / ref, 1.0, 1e-11) << "z=" << z;
        }
        EXPECT_TRUE(std::isfinite(scaled_erfi(z)));
    }
    EXPECT_NEAR(scaled_erfi(1e4) * std::sqrt(kPi) * 1e4, 1.0, 1e-8);
}

TEST(Erfi, Errors) {
    EXPECT_THROW(erfi(-1.0), std::domain_error);
    EXPECT_THROW(erfi(30.0), std::overflow_error);
}

TEST(NormalTail, KnownValues) {
    EXPECT_DOUBLE_EQ(normal_tail(0.0), 0.5);
    EXPECT_NEAR(normal_tail(1.959963984540054), 0.025, 1e-15);
    EXPECT_NEAR(normal_tail(-1.0) + normal_tail(1.0), 1.0, 1e-15);
}

TEST(Lambda, RootAndPaperValue) {
    const auto lc = solve_lambda();
    EXPECT_NEAR(lc.lambda, 0.7246, 5e-5);
    EXPECT_LE(std::abs(std::sin(lc.phi) - lc.lambda), 1e-12);
    EXPECT_LE(std::abs((1.0 - std::cos(lc.phi)) / lc.phi - lc.lambda), 1e-12);
    EXPECT_LE(std::abs(lc.residual), 1e-12);
    EXPECT_GT(lc.phi, 0.0);
    EXPECT_LT(lc.phi, kPi);
    EXPECT_GT(lc.lambda, 0.0);
    EXPECT_LT(lc.lambda, 1.0);
    EXPECT_NEAR(lc.lambda, oracle::lambda_by_bisection(), 1e-13);
}

TEST(Lambda, Deterministic) {
    const auto a = solve_lambda();
    const auto b = solve_lambda();
    EXPECT_EQ(a.lambda, b.lambda);
    EXPECT_EQ(a.phi, b.phi);
}

TEST(Lambda, EnvelopeInequality) {
    const double lambda = solve_lambda().lambda;
    for (int i = 0; i <= 2000; ++i) {
        const double theta = -kPi + kTwoPi * i / 2000.0;
        EXPECT_GE(std::cos(theta), 1.0 - lambda * std::abs(theta) - 1e-12);
    }
}

TEST(FindRoot, Basic) {
    EXPECT_NEAR(find_root([](double x) { return std::cos(x) - x; }, 0.0, 1.0), 0.7390851332151607, 1e-14);
    EXPECT_NEAR(find_root([](double x) { return x * x * x - 2.0; }, 0.0, 2.0), std::cbrt(2.0), 1e-14);
    EXPECT_THROW(find_root([](double x) { return x * x + 1.0; }, -1.0, 1.0), std::invalid_argument);
}

namespace {
std::vector<double> values(const std::vector<Sample> &s) {
    std::vector<double> v;
    for (const auto &x : s) {
        v.push_back(x.value);
    }
    return v;
}
std::vector<Sample> samples(const std::vector<double> &v) {
    std::vector<Sample> s;
    for (std::size_t i = 0; i < v.size(); ++i) {
        s.push_back({static_cast<double>(i), v[i]});
    }
    return s;
}
}  // namespace

TEST(ValleyFill, Examples) {
    EXPECT_EQ(values(valley_fill(samples({1, 0.2, 0.5, 0.1}))), (std::vector<double>{1, 0.5, 0.5, 0.1}));
    EXPECT_EQ(values(valley_fill(samples({3, 2, 2, 1}))), (std::vector<double>{3, 2, 2, 1}));
    EXPECT_EQ(values(valley_fill(samples({0.4, 0.4, 0.4}))), (std::vector<double>{0.4, 0.4, 0.4}));
    EXPECT_TRUE(valley_fill(std::vector<Sample>{}).empty());
}

TEST(ValleyFill, RejectsUnorderedTau) {
    std::vector<Sample> s = {{0.0, 1.0}, {0.0, 0.5}};
    EXPECT_THROW(valley_fill(s), std::invalid_argument);
}

TEST(ValleyFill, IdempotentAndDominating) {
    RandomStream rng(99);
    for (int trial = 0; trial < 50; ++trial) {
        std::vector<double> v(40);
        for (auto &x : v) {
            x = rng.uniform();
        }
        const auto once = valley_fill(samples(v));
        const auto twice = valley_fill(once);
        EXPECT_EQ(values(once), values(twice));
        for (std::size_t i = 0; i < v.size(); ++i) {
            EXPECT_GE(once[i].value, v[i]);
            if (i > 0) {
                EXPECT_LE(once[i].value, once[i - 1].value);
            }
        }
    }
}

TEST(RandomStream, ReproducibleAndDistributed) {
    RandomStream a(7), b(7), c(8);
    bool differs = false;
    double sum = 0.0, sumsq = 0.0;
    const int n = 200000;
    for (int i = 0; i < n; ++i) {
        const double u = a.uniform();
        EXPECT_EQ(u, b.uniform());
        differs |= u != c.uniform();
        ASSERT_GE(u, 0.0);
        ASSERT_LT(u, 1.0);
        const double z = a.normal();
        b.normal();
        c.normal();
        sum += z;
        sumsq += z * z;
    }
    EXPECT_TRUE(differs);
    EXPECT_NEAR(sum / n, 0.0, 0.01);
    EXPECT_NEAR(sumsq / n, 1.0, 0.01);
}
