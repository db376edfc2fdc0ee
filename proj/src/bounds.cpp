#include "zzq/bounds.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <stdexcept>
#include <string>

namespace zzq {

namespace {

constexpr double kPi = std::numbers::pi;

void require_positive_finite(double v, const char *what) {
    if (!std::isfinite(v) || !(v > 0.0)) {
        throw std::domain_error(std::string(what) + " must be finite and positive");
    }
}

void require_positive_window(double w) {
    if (std::isnan(w) || !(w > 0.0)) {
        throw std::domain_error("window width must be positive");
    }
}

// 1 - sqrt(1 - x) without cancellation for small x; x is clamped to [0, 1].
double one_minus_sqrt_one_minus(double x) {
    x = std::clamp(x, 0.0, 1.0);
    return x / (1.0 + std::sqrt(1.0 - x));
}

}  // namespace

void validate(const PriorSpec &prior) {
    if (const auto *u = std::get_if<UniformWindow>(&prior)) {
        require_positive_finite(u->w, "window width");
        if (!std::isfinite(u->mu)) {
            throw std::domain_error("window center must be finite");
        }
    } else {
        const auto &g = std::get<GaussianPrior>(prior);
        require_positive_finite(g.variance, "prior variance");
        if (!std::isfinite(g.mean)) {
            throw std::domain_error("prior mean must be finite");
        }
    }
}

double prior_density(const PriorSpec &prior, double x) {
    if (const auto *u = std::get_if<UniformWindow>(&prior)) {
        return std::abs(x - u->mu) <= 0.5 * u->w ? 1.0 / u->w : 0.0;
    }
    const auto &g = std::get<GaussianPrior>(prior);
    const double d = x - g.mean;
    return std::exp(-0.5 * d * d / g.variance) / std::sqrt(2.0 * kPi * g.variance);
}

double prior_variance(const PriorSpec &prior) {
    if (const auto *u = std::get_if<UniformWindow>(&prior)) {
        return u->w * u->w / 12.0;
    }
    return std::get<GaussianPrior>(prior).variance;
}

PriorFisherInfo prior_fisher_info(const PriorSpec &prior) {
    validate(prior);
    return {1.0 / prior_variance(prior)};
}

PriorFisherInfo window_fisher_info(double w) {
    require_positive_finite(w, "window width");
    return {12.0 / (w * w)};
}

std::string_view to_string(BoundMethod method) {
    switch (method) {
    case BoundMethod::QzzbNumeric:
        return "qzzb_numeric";
    case BoundMethod::QzzbClosed:
        return "qzzb_closed";
    case BoundMethod::Qcrb:
        return "qcrb";
    case BoundMethod::HLimit:
        return "h_limit";
    case BoundMethod::VarianceLimit:
        return "variance_limit";
    case BoundMethod::Floor:
        return "floor";
    case BoundMethod::ClassicalZzb:
        return "classical_zzb";
    }
    return "unknown";
}

BoundResult qzzb_numeric(const FidelityModel &fidelity, double w, const QuadratureConfig &cfg) {
    require_positive_finite(w, "window width");
    auto integrand = [&fidelity, w](double tau) {
        return tau * (1.0 - tau / w) * one_minus_sqrt_one_minus(eval_fidelity(fidelity, tau));
    };
    const QuadratureResult q = integrate(integrand, 0.0, w, cfg);
    BoundResult r;
    r.value = std::max(0.0, 0.5 * q.value);
    r.method = BoundMethod::QzzbNumeric;
    r.err_estimate = 0.5 * q.err_estimate;
    r.validity.quadrature_converged = q.converged;
    return r;
}

BoundResult qzzb_coherent_closed(double n_mean) {
    require_positive_finite(n_mean, "mean photon number");
    const double root = std::sqrt(n_mean);
    BoundResult r;
    r.value = std::pow(kPi, 1.5) / (8.0 * root) * scaled_erfi(2.0 * root);
    r.method = BoundMethod::QzzbClosed;
    return r;
}

double rectangle_integral_recursive(long m) {
    if (m < -1) {
        throw std::domain_error("rectangle integral needs M >= -1");
    }
    long k = (m % 2 == 0) ? 0 : -1;
    double value = (k == 0) ? 4.0 : 0.0;
    while (k < m) {
        k += 2;
        const double dk = static_cast<double>(k);
        value += 4.0 * (1.0 / (2.0 * (dk - 1.0) + 1.0) + 1.0 / (2.0 * dk + 1.0));
    }
    return value;
}

double rectangle_integral_direct(long m) {
    if (m < -1) {
        throw std::domain_error("rectangle integral needs M >= -1");
    }
    const auto count = static_cast<std::size_t>(m + 1);
    return 4.0 * pairwise_sum_terms(0, count, [](std::size_t k) { return 1.0 / (2.0 * static_cast<double>(k) + 1.0); });
}

BoundResult qzzb_rectangle_closed(std::size_t m) {
    const auto ml = static_cast<long>(m);
    const double direct = rectangle_integral_direct(ml);
    const double recursive = rectangle_integral_recursive(ml);
    if (std::abs(direct - recursive) > 1e-12 * direct) {
        throw std::logic_error("rectangle closed form: direct sum and recursion disagree");
    }
    const double m1 = static_cast<double>(m) + 1.0;
    const double scale = kPi / (8.0 * m1 * m1);
    BoundResult r;
    r.value = scale * direct;
    r.method = BoundMethod::QzzbClosed;
    r.err_estimate = scale * std::abs(direct - recursive);
    return r;
}

BoundResult rivas_luis_floor_bound(double epsilon, std::size_t copies, double w) {
    require_positive_finite(w, "window width");
    if (copies < 1) {
        throw std::domain_error("copies must be at least 1");
    }
    // The polynomial floor turns negative for eps > 1/3, where F >= 0 is the better bound.
    const double floor = std::max(0.0, rivas_luis_fidelity_floor(epsilon));
    BoundResult r;
    r.value = w * w / 12.0 * one_minus_sqrt_one_minus(std::pow(floor, static_cast<double>(copies)));
    r.method = BoundMethod::Floor;
    return r;
}

BoundResult qcrb(double variance, PriorFisherInfo pi) {
    if (!std::isfinite(variance) || variance < 0.0 || !std::isfinite(pi.pi) || pi.pi < 0.0) {
        throw std::domain_error("QCRB needs finite variance >= 0 and prior information >= 0");
    }
    const double denom = 4.0 * variance + pi.pi;
    if (!(denom > 0.0)) {
        throw std::domain_error("QCRB undefined: zero variance and zero prior information");
    }
    BoundResult r;
    r.value = 1.0 / denom;
    r.method = BoundMethod::Qcrb;
    return r;
}

BoundResult h_limit(double h_plus, double w) { return h_limit(h_plus, w, solve_lambda().lambda); }

BoundResult h_limit(double h_plus, double w, double lambda) {
    require_positive_finite(h_plus, "H_+");
    require_positive_window(w);
    require_positive_finite(lambda, "lambda");
    const double lh = lambda * h_plus;
    const double correction = std::isinf(w) ? 0.0 : 1.0 / (336.0 * lh * lh * lh * w);
    BoundResult r;
    r.value = 1.0 / (80.0 * lh * lh) - correction;
    r.method = BoundMethod::HLimit;
    r.validity.window_precondition_met = w >= 1.0 / (2.0 * lh);
    r.value = std::max(0.0, r.value);
    return r;
}

BoundResult variance_limit(double delta_h, double w) {
    require_positive_finite(delta_h, "Delta H");
    require_positive_window(w);
    const double d2 = delta_h * delta_h;
    const double asymptotic = (kPi * kPi / 16.0 - 0.5) / d2;
    const double correction =
        std::isinf(w) ? 0.0 : (1.0 + kPi * kPi * kPi / 48.0 - kPi / 2.0) / (w * d2 * delta_h);
    BoundResult r;
    r.value = std::max(0.0, asymptotic - correction);
    r.method = BoundMethod::VarianceLimit;
    r.validity.window_precondition_met = w >= kPi / (2.0 * delta_h);
    return r;
}

double helstrom_pure(double fidelity, double p0) {
    if (!(fidelity >= 0.0 && fidelity <= 1.0) || !(p0 >= 0.0 && p0 <= 1.0)) {
        throw std::domain_error("helstrom_pure needs fidelity and p0 in [0, 1]");
    }
    return 0.5 * one_minus_sqrt_one_minus(4.0 * p0 * (1.0 - p0) * fidelity);
}

}  // namespace zzq
