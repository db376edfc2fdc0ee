#pragma once

#include <cstddef>
#include <span>
#include <variant>
#include <vector>

namespace zzq {

/// Normalized photon-number distribution p_0 .. p_cutoff, stored densely from n = 0.
class NumberDistribution {
public:
    /// Validates non-negativity and renormalizes. Throws std::invalid_argument on
    /// empty, negative, non-finite, or all-zero weights.
    static NumberDistribution from_weights(std::vector<double> weights);

    /// Point mass at photon number n.
    static NumberDistribution delta(std::size_t n);

    std::span<const double> weights() const { return weights_; }
    double operator[](std::size_t n) const { return n < weights_.size() ? weights_[n] : 0.0; }
    std::size_t cutoff() const { return weights_.size() - 1; }

    /// Smallest n with p_n > 0 (the occupied ground level).
    std::size_t lowest_occupied() const;

private:
    explicit NumberDistribution(std::vector<double> weights) : weights_(std::move(weights)) {}

    std::vector<double> weights_;
};

struct Coherent {
    double n_mean = 0.0;
};

struct Rectangle {
    std::size_t m = 0;
};

/// sqrt(1-epsilon)|0> + sqrt(epsilon/M) sum_{n=1}^{M} |n>.
struct RivasLuis {
    double epsilon = 0.0;
    std::size_t m = 1;
};

using StateFamilySpec = std::variant<Coherent, Rectangle, RivasLuis>;

/// Throws std::domain_error when a family parameter is out of range.
void validate(const StateFamilySpec &spec);

constexpr double kDefaultTailTolerance = 1e-14;

/// Photon-number distribution of a state family. Coherent weights are truncated at the
/// smallest cutoff whose discarded Poisson tail is below tail_tol.
NumberDistribution build_distribution(const StateFamilySpec &spec, double tail_tol = kDefaultTailTolerance);

struct Moments {
    double mean = 0.0;
    double variance = 0.0;
    /// mean minus the lowest occupied level (H_+ for H = n).
    double ground_offset_mean = 0.0;
};

Moments moments(const NumberDistribution &d);

/// Distribution of the total photon number of two independent modes.
NumberDistribution convolve(const NumberDistribution &a, const NumberDistribution &b);

/// Total photon-number distribution of `copies` independent copies (copies >= 1).
NumberDistribution convolve_power(const NumberDistribution &d, std::size_t copies);

/// Relative variance gamma = Var/N_s^2 of the uniform superposition over 1..M.
double rivas_luis_gamma(std::size_t m);

/// Single-copy Rivas-Luis moments from the generic parametrization: N_j = eps*N_s and
/// Var_j = [(1 + gamma)/eps - 1] N_j^2.
Moments rivas_luis_moments(double epsilon, double n_s, double gamma);

}  // namespace zzq
