#pragma once

#include <cstddef>
#include <cstdint>
#include <functional>
#include <string>

#include "zzq/bounds.hpp"
#include "zzq/numerics.hpp"

namespace zzq {

/// Y = X + noise with standard deviation sigma.
struct GaussianShift {
    double sigma = 1.0;
};

using LikelihoodSpec = GaussianShift;

/// Minimum error probability of the binary test X = x against X = x + tau, with prior
/// probability p0 on the first hypothesis. Values lie in [0, 1/2].
struct ErrorProbFn {
    std::function<double(double x, double tau, double p0)> eval;
    std::string label;
};

/// Optimal likelihood-ratio test between N(x, sigma^2) and N(x + tau, sigma^2).
ErrorProbFn gaussian_shift_error_prob(const GaussianShift &like);

/// Observation-independent error probability: `value` at equal priors, scaled by
/// 2 min(p0, 1 - p0) otherwise. 1/2 means indistinguishable hypotheses.
ErrorProbFn constant_error_prob(double value);

/// Pure-state discrimination error for a phase-encoded state with fidelity F(tau).
ErrorProbFn fidelity_error_prob(FidelityModel fidelity);

enum class ZzbVariant {
    /// Weights [P(x) + P(x+tau)] with the prior-weighted error probability.
    Weighted,
    /// Weights 2 min[P(x), P(x+tau)] with the equal-prior error probability.
    EqualPrior,
};

BoundResult classical_zzb(const PriorSpec &prior, const ErrorProbFn &pe, ZzbVariant variant, bool use_valley_fill,
                          const QuadratureConfig &cfg = {});

struct VariantEquivalenceReport {
    double weighted = 0.0;
    double equal_prior = 0.0;
    double difference = 0.0;
    bool agree = false;
};

/// For a uniform window both variants coincide; reports both values and whether they
/// agree within `tolerance`.
VariantEquivalenceReport equal_prior_variant_equivalence(const UniformWindow &prior, const ErrorProbFn &pe,
                                                         const QuadratureConfig &cfg = {}, double tolerance = 1e-9);

struct MonteCarloResult {
    double mse = 0.0;
    double stderr_mse = 0.0;
    std::size_t trials = 0;
    std::size_t degenerate = 0;
};

/// Sample mean-square error of the posterior-mean estimator. Throws std::invalid_argument
/// for fewer than 1e4 trials and std::runtime_error when more than 0.1% of posteriors
/// are numerically degenerate.
MonteCarloResult monte_carlo_mmse(const PriorSpec &prior, const LikelihoodSpec &like, std::size_t trials,
                                  std::uint64_t seed);

}  // namespace zzq
