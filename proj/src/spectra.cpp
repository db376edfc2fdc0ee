#include "zzq/spectra.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "zzq/numerics.hpp"

namespace zzq {

NumberDistribution NumberDistribution::from_weights(std::vector<double> weights) {
    if (weights.empty()) {
        throw std::invalid_argument("distribution needs at least one weight");
    }
    for (double w : weights) {
        if (!std::isfinite(w) || w < 0.0) {
            throw std::invalid_argument("distribution weights must be finite and non-negative");
        }
    }
    const double total = pairwise_sum(weights);
    if (!(total > 0.0)) {
        throw std::invalid_argument("distribution weights sum to zero");
    }
    for (double &w : weights) {
        w /= total;
    }
    return NumberDistribution(std::move(weights));
}

NumberDistribution NumberDistribution::delta(std::size_t n) {
    std::vector<double> w(n + 1, 0.0);
    w[n] = 1.0;
    return NumberDistribution(std::move(w));
}

std::size_t NumberDistribution::lowest_occupied() const {
    for (std::size_t n = 0; n < weights_.size(); ++n) {
        if (weights_[n] > 0.0) {
            return n;
        }
    }
    return 0;
}

void validate(const StateFamilySpec &spec) {
    struct Check {
        void operator()(const Coherent &c) const {
            if (!std::isfinite(c.n_mean) || c.n_mean < 0.0) {
                throw std::domain_error("coherent n_mean must be finite and >= 0");
            }
        }
        void operator()(const Rectangle &) const {}
        void operator()(const RivasLuis &r) const {
            if (!(r.epsilon >= 0.0 && r.epsilon <= 1.0)) {
                throw std::domain_error("Rivas-Luis epsilon must lie in [0, 1]");
            }
            if (r.m < 1) {
                throw std::domain_error("Rivas-Luis m must be positive");
            }
        }
    };
    std::visit(Check{}, spec);
}

namespace {

std::vector<double> poisson_weights(double n_mean, double tail_tol) {
    if (n_mean == 0.0) {
        return {1.0};
    }
    const double log_mean = std::log(n_mean);
    std::vector<double> w;
    for (std::size_t n = 0;; ++n) {
        const double dn = static_cast<double>(n);
        w.push_back(std::exp(-n_mean + dn * log_mean - std::lgamma(dn + 1.0)));
        // Past the mode the term ratios N/(k+1) shrink, so the tail is bounded by a geometric series.
        const double ratio = n_mean / (dn + 2.0);
        if (ratio < 1.0) {
            const double next = w.back() * n_mean / (dn + 1.0);
            if (next / (1.0 - ratio) < tail_tol) {
                break;
            }
        }
    }
    return w;
}

}  // namespace

NumberDistribution build_distribution(const StateFamilySpec &spec, double tail_tol) {
    validate(spec);
    if (!(tail_tol > 0.0)) {
        throw std::invalid_argument("tail_tol must be positive");
    }
    struct Build {
        double tail_tol;
        NumberDistribution operator()(const Coherent &c) const {
            return NumberDistribution::from_weights(poisson_weights(c.n_mean, tail_tol));
        }
        NumberDistribution operator()(const Rectangle &r) const {
            return NumberDistribution::from_weights(std::vector<double>(r.m + 1, 1.0));
        }
        NumberDistribution operator()(const RivasLuis &r) const {
            std::vector<double> w(r.m + 1, r.epsilon / static_cast<double>(r.m));
            w[0] = 1.0 - r.epsilon;
            return NumberDistribution::from_weights(std::move(w));
        }
    };
    return std::visit(Build{tail_tol}, spec);
}

Moments moments(const NumberDistribution &d) {
    const auto p = d.weights();
    const double mean = pairwise_sum_terms(0, p.size(), [&p](std::size_t n) { return static_cast<double>(n) * p[n]; });
    const double variance = pairwise_sum_terms(0, p.size(), [&p, mean](std::size_t n) {
        const double dev = static_cast<double>(n) - mean;
        return dev * dev * p[n];
    });
    const double offset = mean - static_cast<double>(d.lowest_occupied());
    return {mean, variance, std::max(0.0, offset)};
}

NumberDistribution convolve(const NumberDistribution &a, const NumberDistribution &b) {
    const auto pa = a.weights();
    const auto pb = b.weights();
    std::vector<double> out(pa.size() + pb.size() - 1);
    for (std::size_t n = 0; n < out.size(); ++n) {
        const std::size_t k_lo = n >= pb.size() ? n - pb.size() + 1 : 0;
        const std::size_t k_hi = std::min(n, pa.size() - 1);
        out[n] = pairwise_sum_terms(k_lo, k_hi + 1, [&](std::size_t k) { return pa[k] * pb[n - k]; });
    }
    return NumberDistribution::from_weights(std::move(out));
}

NumberDistribution convolve_power(const NumberDistribution &d, std::size_t copies) {
    if (copies < 1) {
        throw std::invalid_argument("convolve_power needs at least one copy");
    }
    NumberDistribution result = d;
    for (std::size_t i = 1; i < copies; ++i) {
        result = convolve(result, d);
    }
    return result;
}

double rivas_luis_gamma(std::size_t m) {
    const double dm = static_cast<double>(m);
    return (dm - 1.0) / (3.0 * (dm + 1.0));
}

Moments rivas_luis_moments(double epsilon, double n_s, double gamma) {
    if (!(epsilon > 0.0 && epsilon <= 1.0)) {
        throw std::domain_error("Rivas-Luis moments need epsilon in (0, 1]");
    }
    const double n_j = epsilon * n_s;
    return {n_j, ((1.0 + gamma) / epsilon - 1.0) * n_j * n_j, n_j};
}

}  // namespace zzq
