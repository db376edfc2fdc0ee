#include "zzq/classical.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <stdexcept>
#include <vector>

namespace zzq {

namespace {

constexpr double kGaussianSupportSigmas = 8.0;
constexpr double kLikelihoodWindowSigmas = 10.0;
constexpr std::size_t kPosteriorGridPoints = 2048;
constexpr std::size_t kValleyFillSamples = 1025;

struct Support {
    double lo;
    double hi;
};

Support prior_support(const PriorSpec &prior) {
    if (const auto *u = std::get_if<UniformWindow>(&prior)) {
        return {u->mu - 0.5 * u->w, u->mu + 0.5 * u->w};
    }
    const auto &g = std::get<GaussianPrior>(prior);
    const double half = kGaussianSupportSigmas * std::sqrt(g.variance);
    return {g.mean - half, g.mean + half};
}

QuadratureConfig inner_config(const QuadratureConfig &cfg) {
    QuadratureConfig inner = cfg;
    inner.abs_tol *= 0.1;
    inner.rel_tol *= 0.1;
    return inner;
}

// Integral over x of the hypothesis-pair weight times the error probability, at separation tau.
class InnerIntegral {
public:
    InnerIntegral(const PriorSpec &prior, const ErrorProbFn &pe, ZzbVariant variant, const QuadratureConfig &cfg)
        : prior_(prior), pe_(pe), variant_(variant), cfg_(inner_config(cfg)), support_(prior_support(prior)) {}

    double operator()(double tau) {
        if (variant_ == ZzbVariant::EqualPrior) {
            if (const auto *u = std::get_if<UniformWindow>(&prior_)) {
                // Overlap of the window with its shift has length W - tau and density 1/W;
                // the error probability of a shift family does not depend on x.
                if (tau >= u->w) {
                    return 0.0;
                }
                return 2.0 * (u->w - tau) / u->w * pe_.eval(u->mu, tau, 0.5);
            }
        }

        std::vector<double> cuts = {support_.lo - tau, support_.hi};
        if (std::holds_alternative<UniformWindow>(prior_)) {
            cuts.push_back(support_.lo);
            cuts.push_back(support_.hi - tau);
        } else if (variant_ == ZzbVariant::EqualPrior) {
            cuts.push_back(std::get<GaussianPrior>(prior_).mean - 0.5 * tau);
        }
        std::sort(cuts.begin(), cuts.end());

        auto integrand = [this, tau](double x) { return weighted_error(x, tau); };
        double total = 0.0;
        for (std::size_t i = 0; i + 1 < cuts.size(); ++i) {
            if (cuts[i + 1] <= cuts[i]) {
                continue;
            }
            const QuadratureResult q = integrate(integrand, cuts[i], cuts[i + 1], cfg_);
            converged_ = converged_ && q.converged;
            total += q.value;
        }
        return total;
    }

    bool converged() const { return converged_; }

private:
    double weighted_error(double x, double tau) const {
        const double p_x = prior_density(prior_, x);
        const double p_shift = prior_density(prior_, x + tau);
        if (variant_ == ZzbVariant::EqualPrior) {
            const double w = 2.0 * std::min(p_x, p_shift);
            return w > 0.0 ? w * pe_.eval(x, tau, 0.5) : 0.0;
        }
        const double w = p_x + p_shift;
        if (!(p_x > 0.0) || !(p_shift > 0.0)) {
            return 0.0;  // one hypothesis is certain, so the test never errs
        }
        return w * pe_.eval(x, tau, p_x / w);
    }

    const PriorSpec &prior_;
    const ErrorProbFn &pe_;
    ZzbVariant variant_;
    QuadratureConfig cfg_;
    Support support_;
    bool converged_ = true;
};

}  // namespace

ErrorProbFn gaussian_shift_error_prob(const GaussianShift &like) {
    if (!std::isfinite(like.sigma) || !(like.sigma > 0.0)) {
        throw std::domain_error("Gaussian shift sigma must be positive");
    }
    const double sigma = like.sigma;
    return {[sigma](double, double tau, double p0) {
                const double p1 = 1.0 - p0;
                if (p0 <= 0.0 || p1 <= 0.0) {
                    return 0.0;
                }
                if (tau <= 0.0) {
                    return std::min(p0, p1);
                }
                const double d = tau / sigma;
                const double llr = std::log(p0 / p1);
                return p0 * normal_tail(0.5 * d + llr / d) + p1 * normal_tail(0.5 * d - llr / d);
            },
            "gaussian_shift"};
}

ErrorProbFn constant_error_prob(double value) {
    if (!(value >= 0.0 && value <= 0.5)) {
        throw std::domain_error("error probability must lie in [0, 1/2]");
    }
    return {[value](double, double, double p0) { return 2.0 * value * std::min(p0, 1.0 - p0); }, "constant"};
}

ErrorProbFn fidelity_error_prob(FidelityModel fidelity) {
    return {[f = std::move(fidelity)](double, double tau, double p0) { return helstrom_pure(eval_fidelity(f, tau), p0); },
            "pure_state_fidelity"};
}

BoundResult classical_zzb(const PriorSpec &prior, const ErrorProbFn &pe, ZzbVariant variant, bool use_valley_fill,
                          const QuadratureConfig &cfg) {
    validate(prior);
    cfg.validate();
    if (!pe.eval) {
        throw std::invalid_argument("error probability function is empty");
    }

    const Support support = prior_support(prior);
    const double tau_max = support.hi - support.lo;
    InnerIntegral inner(prior, pe, variant, cfg);

    std::vector<Sample> filled;
    if (use_valley_fill) {
        std::vector<Sample> samples(kValleyFillSamples);
        for (std::size_t i = 0; i < samples.size(); ++i) {
            const double tau = tau_max * static_cast<double>(i) / static_cast<double>(samples.size() - 1);
            samples[i] = {tau, inner(tau)};
        }
        filled = valley_fill(samples);
    }

    auto outer = [&](double tau) {
        double v = inner(tau);
        if (use_valley_fill) {
            // Largest sampled value strictly beyond tau; never below the raw value.
            auto next = std::upper_bound(filled.begin(), filled.end(), tau,
                                         [](double t, const Sample &s) { return t < s.tau; });
            if (next != filled.end()) {
                v = std::max(v, next->value);
            }
        }
        return tau * v;
    };

    const QuadratureResult q = integrate(outer, 0.0, tau_max, cfg);
    BoundResult r;
    r.value = std::max(0.0, 0.5 * q.value);
    r.method = BoundMethod::ClassicalZzb;
    r.err_estimate = 0.5 * q.err_estimate;
    r.validity.quadrature_converged = q.converged && inner.converged();
    return r;
}

VariantEquivalenceReport equal_prior_variant_equivalence(const UniformWindow &prior, const ErrorProbFn &pe,
                                                         const QuadratureConfig &cfg, double tolerance) {
    VariantEquivalenceReport report;
    report.weighted = classical_zzb(prior, pe, ZzbVariant::Weighted, false, cfg).value;
    report.equal_prior = classical_zzb(prior, pe, ZzbVariant::EqualPrior, false, cfg).value;
    report.difference = std::abs(report.weighted - report.equal_prior);
    report.agree = report.difference <= tolerance;
    return report;
}

namespace {

// Posterior mean of X given y on a uniform midpoint grid. The log posterior is quadratic in x,
// so consecutive weight ratios follow a geometric progression and need no exp per point.
class PosteriorMean {
public:
    PosteriorMean(const PriorSpec &prior, double sigma)
        : support_(prior_support(prior)), sigma_(sigma), weights_(kPosteriorGridPoints), moments_(kPosteriorGridPoints) {
        if (const auto *g = std::get_if<GaussianPrior>(&prior)) {
            prior_mean_ = g->mean;
            prior_precision_ = 1.0 / g->variance;
        }
    }

    /// Returns false when the posterior cannot be resolved on the grid.
    bool operator()(double y, double &estimate) {
        const double lo = std::max(support_.lo, y - kLikelihoodWindowSigmas * sigma_);
        const double hi = std::min(support_.hi, y + kLikelihoodWindowSigmas * sigma_);
        if (!(hi > lo)) {
            estimate = std::clamp(y, support_.lo, support_.hi);
            return false;
        }
        // log posterior q(x) = a x^2 + b x up to a constant.
        const double like_precision = 1.0 / (sigma_ * sigma_);
        const double a = -0.5 * (like_precision + prior_precision_);
        const double b = y * like_precision + prior_mean_ * prior_precision_;
        auto q = [a, b](double x) { return a * x * x + b * x; };

        const std::size_t n = weights_.size();
        const double h = (hi - lo) / static_cast<double>(n);
        const double x0 = lo + 0.5 * h;
        const double x_last = x0 + h * static_cast<double>(n - 1);
        const double vertex = std::clamp(-b / (2.0 * a), x0, x_last);
        const double q_max = std::max({q(x0), q(x_last), q(vertex)});

        double w = std::exp(q(x0) - q_max);
        double step = std::exp(a * (2.0 * x0 * h + h * h) + b * h);
        const double step_ratio = std::exp(2.0 * a * h * h);
        for (std::size_t i = 0; i < n; ++i) {
            weights_[i] = w;
            moments_[i] = w * (x0 + h * static_cast<double>(i));
            w *= step;
            step *= step_ratio;
        }
        const double mass = pairwise_sum(weights_);
        if (!(mass > 0.0) || !std::isfinite(mass)) {
            estimate = std::clamp(y, support_.lo, support_.hi);
            return false;
        }
        estimate = pairwise_sum(moments_) / mass;
        return true;
    }

private:
    Support support_;
    double sigma_;
    double prior_mean_ = 0.0;
    double prior_precision_ = 0.0;
    std::vector<double> weights_;
    std::vector<double> moments_;
};

double sample_prior(const PriorSpec &prior, RandomStream &rng) {
    if (const auto *u = std::get_if<UniformWindow>(&prior)) {
        return u->mu + u->w * (rng.uniform() - 0.5);
    }
    const auto &g = std::get<GaussianPrior>(prior);
    return g.mean + std::sqrt(g.variance) * rng.normal();
}

}  // namespace

MonteCarloResult monte_carlo_mmse(const PriorSpec &prior, const LikelihoodSpec &like, std::size_t trials,
                                  std::uint64_t seed) {
    validate(prior);
    if (!std::isfinite(like.sigma) || !(like.sigma > 0.0)) {
        throw std::domain_error("Gaussian shift sigma must be positive");
    }
    if (trials < 10000) {
        throw std::invalid_argument("monte_carlo_mmse needs at least 1e4 trials");
    }

    RandomStream rng(seed);
    PosteriorMean posterior_mean(prior, like.sigma);
    std::vector<double> squared_errors(trials);
    std::size_t degenerate = 0;

    for (std::size_t t = 0; t < trials; ++t) {
        const double x = sample_prior(prior, rng);
        const double y = x + like.sigma * rng.normal();
        double estimate = 0.0;
        if (!posterior_mean(y, estimate)) {
            ++degenerate;
        }
        const double e = estimate - x;
        squared_errors[t] = e * e;
    }
    if (static_cast<double>(degenerate) > 1e-3 * static_cast<double>(trials)) {
        throw std::runtime_error("monte_carlo_mmse: " + std::to_string(degenerate) + " of " + std::to_string(trials) +
                                 " posteriors were degenerate");
    }

    const double n = static_cast<double>(trials);
    const double mse = pairwise_sum(squared_errors) / n;
    const double spread =
        pairwise_sum_terms(0, trials, [&](std::size_t i) { return (squared_errors[i] - mse) * (squared_errors[i] - mse); });
    MonteCarloResult r;
    r.mse = mse;
    r.stderr_mse = std::sqrt(spread / (n - 1.0) / n);
    r.trials = trials;
    r.degenerate = degenerate;
    return r;
}

}  // namespace zzq
