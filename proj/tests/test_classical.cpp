#include "zzq/classical.hpp"

#include <gtest/gtest.h>

#include <cmath>
#include <stdexcept>

#include "oracle.hpp"

using namespace zzq;

TEST(ErrorProb, GaussianShiftRangeAndMonotone) {
    const auto pe = gaussian_shift_error_prob(GaussianShift{0.3});
    for (double p0 : {0.5, 0.2, 0.9}) {
        double last = 1.0;
        for (int i = 0; i <= 200; ++i) {
            const double v = pe.eval(0.0, 0.01 * i, p0);
            EXPECT_GE(v, 0.0);
            EXPECT_LE(v, 0.5);
            EXPECT_LE(v, last + 1e-15);
            last = v;
        }
    }
    EXPECT_DOUBLE_EQ(pe.eval(0.0, 0.0, 0.5), 0.5);
    EXPECT_NEAR(pe.eval(0.0, 0.6, 0.5), normal_tail(1.0), 1e-15);
    EXPECT_THROW(gaussian_shift_error_prob(GaussianShift{0.0}), std::domain_error);
}

TEST(ErrorProb, FidelityPathUsesHelstrom) {
    const auto pe = fidelity_error_prob(FidelityModel::coherent(1.0));
    EXPECT_NEAR(pe.eval(0.0, oracle::kPi, 0.5), oracle::helstrom_eigen(std::exp(-4.0), 0.5), 1e-12);
}

TEST(ClassicalZzb, TrivialErrorProbabilities) {
    const UniformWindow prior{0.0, 3.0};
    for (auto variant : {ZzbVariant::Weighted, ZzbVariant::EqualPrior}) {
        EXPECT_NEAR(classical_zzb(prior, constant_error_prob(0.5), variant, false).value, 0.75, 1e-10);
        EXPECT_NEAR(classical_zzb(prior, constant_error_prob(0.0), variant, false).value, 0.0, 1e-15);
    }
}

TEST(ClassicalZzb, IdenticalStatesGivePriorVariance) {
    const auto pe = fidelity_error_prob(FidelityModel::rectangle(0));
    for (double w : {1.0, oracle::kTwoPi}) {
        EXPECT_NEAR(classical_zzb(UniformWindow{0.0, w}, pe, ZzbVariant::Weighted, false).value, w * w / 12.0, 1e-10);
        EXPECT_NEAR(classical_zzb(UniformWindow{0.0, w}, pe, ZzbVariant::Weighted, true).value, w * w / 12.0, 1e-10);
    }
}

TEST(ClassicalZzb, GaussianShiftWideWindow) {
    const double sigma = 0.01;
    const auto r = classical_zzb(UniformWindow{0.0, 100.0 * sigma}, gaussian_shift_error_prob(GaussianShift{sigma}),
                                 ZzbVariant::EqualPrior, false);
    EXPECT_GE(r.value, 0.95 * sigma * sigma);
    EXPECT_LE(r.value, sigma * sigma);
    // Literal finite-W form: (1/2) int tau * 2(W - tau)/W * Q(tau / 2 sigma).
    const double w = 100.0 * sigma;
    const double ref = oracle::integral(
        [=](double t) { return t * (w - t) / w * 0.5 * std::erfc(t / (2.0 * sigma) / std::sqrt(2.0)); }, 0.0, w);
    EXPECT_NEAR(r.value, ref, 1e-12);
}

TEST(ClassicalZzb, GaussianPriorConstantErrorGivesVariance) {
    const GaussianPrior prior{0.4, 0.09};
    for (auto variant : {ZzbVariant::Weighted, ZzbVariant::EqualPrior}) {
        EXPECT_NEAR(classical_zzb(prior, constant_error_prob(0.5), variant, false).value, 0.09, 1e-9);
    }
}

TEST(ClassicalZzb, VariantsAgreeForUniformWindow) {
    const auto report =
        equal_prior_variant_equivalence(UniformWindow{0.0, 1.0}, gaussian_shift_error_prob(GaussianShift{0.01}));
    EXPECT_TRUE(report.agree) << report.difference;
    EXPECT_LE(report.difference, 1e-9);
    const auto half = equal_prior_variant_equivalence(UniformWindow{2.0, 5.0}, constant_error_prob(0.5));
    EXPECT_NEAR(half.weighted, 25.0 / 12.0, 1e-10);
    EXPECT_NEAR(half.equal_prior, 25.0 / 12.0, 1e-10);
}

TEST(ClassicalZzb, ValleyFilling) {
    const auto pe = gaussian_shift_error_prob(GaussianShift{0.1});
    const UniformWindow prior{0.0, 2.0};
    const double raw = classical_zzb(prior, pe, ZzbVariant::EqualPrior, false).value;
    const double filled = classical_zzb(prior, pe, ZzbVariant::EqualPrior, true).value;
    EXPECT_NEAR(filled, raw, 1e-9 * raw);

    const auto wiggly = fidelity_error_prob(FidelityModel::rectangle(3));
    const UniformWindow window{0.0, oracle::kTwoPi};
    for (auto variant : {ZzbVariant::Weighted, ZzbVariant::EqualPrior}) {
        const double off = classical_zzb(window, wiggly, variant, false).value;
        const double on = classical_zzb(window, wiggly, variant, true).value;
        EXPECT_GE(on, off);
        EXPECT_GT(on - off, 1e-4);
    }
}

TEST(MonteCarlo, SharpLikelihood) {
    const double sigma = 1e-4;
    const auto r = monte_carlo_mmse(UniformWindow{0.0, 1.0}, GaussianShift{sigma}, 20000, 1);
    EXPECT_NEAR(r.mse / (sigma * sigma), 1.0, 0.05);
    EXPECT_EQ(r.degenerate, 0u);
}

TEST(MonteCarlo, FlatLikelihoodReturnsPriorVariance) {
    const auto r = monte_carlo_mmse(UniformWindow{0.0, 1.0}, GaussianShift{100.0}, 20000, 2);
    EXPECT_NEAR(r.mse, 1.0 / 12.0, 4.0 * r.stderr_mse + 1e-4);
}

TEST(MonteCarlo, GaussianPriorMatchesConjugateMmse) {
    const double v = 0.5, s = 0.7;
    const auto r = monte_carlo_mmse(GaussianPrior{0.0, v}, GaussianShift{s}, 40000, 3);
    const double exact = v * s * s / (v + s * s);
    EXPECT_NEAR(r.mse, exact, 4.0 * r.stderr_mse);
}

TEST(MonteCarlo, Deterministic) {
    const auto a = monte_carlo_mmse(UniformWindow{0.0, 2.0}, GaussianShift{0.2}, 10000, 42);
    const auto b = monte_carlo_mmse(UniformWindow{0.0, 2.0}, GaussianShift{0.2}, 10000, 42);
    const auto c = monte_carlo_mmse(UniformWindow{0.0, 2.0}, GaussianShift{0.2}, 10000, 43);
    EXPECT_EQ(a.mse, b.mse);
    EXPECT_EQ(a.stderr_mse, b.stderr_mse);
    EXPECT_NE(a.mse, c.mse);
}

TEST(MonteCarlo, RejectsTooFewTrials) {
    EXPECT_THROW(monte_carlo_mmse(UniformWindow{0.0, 1.0}, GaussianShift{0.1}, 999, 1), std::invalid_argument);
}

TEST(MonteCarlo, AboveClassicalBound) {
    for (double sigma : {0.02, 0.2, 1.0}) {
        for (double w : {0.5, 2.0}) {
            const UniformWindow prior{0.0, w};
            const auto mc = monte_carlo_mmse(prior, GaussianShift{sigma}, 20000, 9);
            const double zzb =
                classical_zzb(prior, gaussian_shift_error_prob(GaussianShift{sigma}), ZzbVariant::Weighted, true).value;
            EXPECT_GE(mc.mse, zzb - 3.0 * mc.stderr_mse) << "sigma=" << sigma << " W=" << w;
        }
    }
}
