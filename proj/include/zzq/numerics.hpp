#pragma once

#include <cstddef>
#include <cstdint>
#include <functional>
#include <random>
#include <span>
#include <vector>

namespace zzq {

/// Tolerances governing every adaptive integral in the library.
struct QuadratureConfig {
    double abs_tol = 1e-10;
    double rel_tol = 1e-9;
    std::size_t max_subdivisions = 2000;

    /// Throws std::invalid_argument when a field is out of range.
    void validate() const;
};

/// Outcome of an adaptive integration. When `converged` is false the value is
/// the best available estimate and `err_estimate` exceeds the requested target.
struct QuadratureResult {
    double value = 0.0;
    double err_estimate = 0.0;
    std::size_t subdivisions = 0;
    bool converged = true;
};

using RealFunction = std::function<double(double)>;

/// Globally adaptive 7/15-point Gauss-Kronrod integration with bisection of the
/// interval carrying the largest error. Requires a <= b.
QuadratureResult integrate(const RealFunction &f, double a, double b, const QuadratureConfig &cfg = {});

/// Fixed-order pairwise summation; the result depends only on the sequence.
double pairwise_sum(std::span<const double> values);

/// Pairwise summation of term(0) .. term(n-1) without materializing the terms.
template <class Term>
double pairwise_sum_terms(std::size_t begin, std::size_t end, const Term &term) {
    constexpr std::size_t kBlock = 16;
    if (end - begin <= kBlock) {
        double s = 0.0;
        for (std::size_t i = begin; i < end; ++i) {
            s += term(i);
        }
        return s;
    }
    const std::size_t mid = begin + (end - begin) / 2;
    return pairwise_sum_terms(begin, mid, term) + pairwise_sum_terms(mid, end, term);
}

/// Imaginary error function erfi(z) = (2/sqrt(pi)) * int_0^z exp(u^2) du for z >= 0.
/// Throws std::domain_error for negative or non-finite z and std::overflow_error
/// once the result exceeds the double range (z above roughly 26.6).
double erfi(double z);

/// exp(-z^2) * erfi(z), finite for every z >= 0. Equals 2/sqrt(pi) times Dawson's integral.
double scaled_erfi(double z);

/// Upper tail of the standard normal distribution, Q(x) = Pr(Z > x).
double normal_tail(double x);

/// The constant in cos(theta) >= 1 - lambda*|theta|: lambda = sin(phi) = (1 - cos(phi))/phi.
struct LambdaConstant {
    double lambda = 0.0;
    double phi = 0.0;
    double residual = 0.0;
};

LambdaConstant solve_lambda();

/// Bracketed bisection/secant hybrid for a sign change of f on [lo, hi].
/// Throws std::invalid_argument when f(lo) and f(hi) share a sign.
double find_root(const RealFunction &f, double lo, double hi, double x_tol = 1e-14, int max_iter = 200);

struct Sample {
    double tau = 0.0;
    double value = 0.0;
};

/// Suffix maximum over samples ordered by strictly increasing tau.
std::vector<Sample> valley_fill(std::span<const Sample> samples);

/// Deterministic random stream: mt19937_64 bits with library-defined conversion
/// to doubles, so a seed reproduces the same numbers on every platform.
class RandomStream {
public:
    explicit RandomStream(std::uint64_t seed);

    /// Uniform on [0, 1) with 53 random bits.
    double uniform();
    /// Standard normal via the Marsaglia polar method.
    double normal();

private:
    std::mt19937_64 engine_;
    double spare_normal_ = 0.0;
    bool has_spare_ = false;
};

}  // namespace zzq
