#include "zzq/spectra.hpp"

#include <gtest/gtest.h>

#include <cmath>
#include <stdexcept>
#include <vector>

#include "oracle.hpp"
#include "zzq/numerics.hpp"

using namespace zzq;

namespace {

double total(const NumberDistribution &d) {
    double s = 0.0;
    for (double p : d.weights()) {
        s += p;
    }
    return s;
}

void expect_valid(const NumberDistribution &d) {
    for (double p : d.weights()) {
        EXPECT_GE(p, 0.0);
    }
    EXPECT_NEAR(total(d), 1.0, 1e-12);
    EXPECT_EQ(d.cutoff() + 1, d.weights().size());
}

NumberDistribution random_distribution(RandomStream &rng, std::size_t size) {
    std::vector<double> w(size);
    for (auto &x : w) {
        x = rng.uniform();
    }
    return NumberDistribution::from_weights(w);
}

}  // namespace

TEST(Distribution, FromWeightsValidates) {
    EXPECT_THROW(NumberDistribution::from_weights({}), std::invalid_argument);
    EXPECT_THROW(NumberDistribution::from_weights({0.5, -0.1}), std::invalid_argument);
    EXPECT_THROW(NumberDistribution::from_weights({0.0, 0.0}), std::invalid_argument);
    const auto d = NumberDistribution::from_weights({1.0, 3.0});
    EXPECT_DOUBLE_EQ(d[0], 0.25);
    EXPECT_DOUBLE_EQ(d[1], 0.75);
    EXPECT_EQ(d[5], 0.0);
}

TEST(Distribution, RectangleVacuum) {
    const auto d = build_distribution(Rectangle{0});
    EXPECT_EQ(d.cutoff(), 0u);
    EXPECT_EQ(d[0], 1.0);
}

TEST(Distribution, RivasLuisWeights) {
    const auto d = build_distribution(RivasLuis{0.1, 19});
    EXPECT_EQ(d.cutoff(), 19u);
    EXPECT_NEAR(d[0], 0.9, 1e-15);
    for (std::size_t n = 1; n <= 19; ++n) {
        EXPECT_NEAR(d[n], 0.1 / 19.0, 1e-16);
    }
}

TEST(Distribution, CoherentPoissonTermwise) {
    const auto d = build_distribution(Coherent{1.0}, 1e-15);
    double fact = 1.0;
    for (std::size_t n = 0; n <= d.cutoff(); ++n) {
        if (n > 0) {
            fact *= static_cast<double>(n);
        }
        EXPECT_NEAR(d[n], std::exp(-1.0) / fact, 1e-15) << "n=" << n;
    }
    double tail = 0.0;
    for (std::size_t n = d.cutoff() + 1; n < d.cutoff() + 40; ++n) {
        tail += oracle::poisson(1.0, n)[n];
    }
    EXPECT_LT(tail, 1e-15);
}

TEST(Distribution, DomainErrors) {
    EXPECT_THROW(build_distribution(Coherent{-1.0}), std::domain_error);
    EXPECT_THROW(build_distribution(RivasLuis{1.5, 3}), std::domain_error);
    EXPECT_THROW(build_distribution(RivasLuis{0.1, 0}), std::domain_error);
}

TEST(Distribution, RandomizedSpecsSatisfyInvariants) {
    RandomStream rng(11);
    for (int trial = 0; trial < 60; ++trial) {
        expect_valid(build_distribution(Coherent{200.0 * rng.uniform()}));
        expect_valid(build_distribution(Rectangle{static_cast<std::size_t>(300 * rng.uniform())}));
        expect_valid(build_distribution(RivasLuis{rng.uniform(), 1 + static_cast<std::size_t>(50 * rng.uniform())}));
    }
}

TEST(Moments, Examples) {
    const auto r = moments(build_distribution(Rectangle{19}));
    EXPECT_NEAR(r.mean, 9.5, 1e-12);
    EXPECT_NEAR(r.variance, 33.25, 1e-11);
    EXPECT_NEAR(r.ground_offset_mean, 9.5, 1e-12);

    const auto c = moments(build_distribution(Coherent{2.0}));
    EXPECT_NEAR(c.mean, 2.0, 1e-10);
    EXPECT_NEAR(c.variance, 2.0, 1e-10);

    const auto rl = moments(build_distribution(RivasLuis{0.1, 19}));
    EXPECT_NEAR(rl.mean, 1.0, 1e-12);
    EXPECT_NEAR(rl.variance, 12.0, 1e-11);
    EXPECT_NEAR(rivas_luis_gamma(19), 0.3, 1e-15);
    const auto generic = rivas_luis_moments(0.1, 10.0, 0.3);
    EXPECT_NEAR(generic.mean, 1.0, 1e-12);
    EXPECT_NEAR(generic.variance, 12.0, 1e-11);
}

TEST(Moments, RivasLuisGenericMatchesDirect) {
    for (double eps : {0.05, 0.3, 0.9}) {
        for (std::size_t m : {1, 2, 7, 40}) {
            const auto direct = moments(build_distribution(RivasLuis{eps, m}));
            const auto generic = rivas_luis_moments(eps, 0.5 * static_cast<double>(m + 1), rivas_luis_gamma(m));
            EXPECT_NEAR(generic.mean, direct.mean, 1e-12);
            EXPECT_NEAR(generic.variance, direct.variance, 1e-10 * std::max(1.0, direct.variance));
        }
    }
}

TEST(Moments, GroundOffset) {
    const auto d = NumberDistribution::from_weights({0.0, 0.0, 0.5, 0.5});
    const auto m = moments(d);
    EXPECT_EQ(d.lowest_occupied(), 2u);
    EXPECT_NEAR(m.mean, 2.5, 1e-15);
    EXPECT_NEAR(m.ground_offset_mean, 0.5, 1e-15);
    EXPECT_NEAR(m.variance, 0.25, 1e-15);
}

TEST(Convolve, VacuumAndDelta) {
    const auto v = convolve(build_distribution(Rectangle{0}), build_distribution(Rectangle{0}));
    EXPECT_EQ(v.cutoff(), 0u);
    EXPECT_EQ(v[0], 1.0);
    const auto s = convolve(NumberDistribution::delta(2), NumberDistribution::delta(3));
    EXPECT_EQ(s.lowest_occupied(), 5u);
    EXPECT_EQ(s[5], 1.0);
}

TEST(Convolve, MomentsAdd) {
    RandomStream rng(5);
    for (int trial = 0; trial < 30; ++trial) {
        const auto a = random_distribution(rng, 1 + static_cast<std::size_t>(20 * rng.uniform()));
        const auto b = random_distribution(rng, 1 + static_cast<std::size_t>(20 * rng.uniform()));
        const auto ma = moments(a), mb = moments(b), mc = moments(convolve(a, b));
        EXPECT_NEAR(mc.mean, ma.mean + mb.mean, 1e-9);
        EXPECT_NEAR(mc.variance, ma.variance + mb.variance, 1e-9);
    }
}

TEST(Convolve, CommutativeAndAssociative) {
    RandomStream rng(6);
    for (int trial = 0; trial < 20; ++trial) {
        const auto a = random_distribution(rng, 1 + static_cast<std::size_t>(8 * rng.uniform()));
        const auto b = random_distribution(rng, 1 + static_cast<std::size_t>(8 * rng.uniform()));
        const auto c = random_distribution(rng, 1 + static_cast<std::size_t>(8 * rng.uniform()));
        const auto ab = convolve(a, b), ba = convolve(b, a);
        const auto l = convolve(ab, c), r = convolve(a, convolve(b, c));
        ASSERT_EQ(ab.cutoff(), ba.cutoff());
        ASSERT_EQ(l.cutoff(), r.cutoff());
        for (std::size_t n = 0; n <= ab.cutoff(); ++n) {
            EXPECT_NEAR(ab[n], ba[n], 1e-12);
        }
        for (std::size_t n = 0; n <= l.cutoff(); ++n) {
            EXPECT_NEAR(l[n], r[n], 1e-12);
        }
    }
}

TEST(Convolve, CoherentCopiesArePoisson) {
    const auto two = convolve_power(build_distribution(Coherent{1.5}), 4);
    const auto direct = oracle::poisson(6.0, two.cutoff());
    for (std::size_t n = 0; n <= two.cutoff(); ++n) {
        EXPECT_NEAR(two[n], direct[n], 1e-13);
    }
    EXPECT_THROW(convolve_power(two, 0), std::invalid_argument);
}
