#include "zzq/fidelity.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <stdexcept>
#include <string>

#include "zzq/numerics.hpp"

namespace zzq {

namespace {

constexpr double kTwoPi = 2.0 * std::numbers::pi;

void require_positive(double v, const char *what) {
    if (!std::isfinite(v) || !(v > 0.0)) {
        throw std::domain_error(std::string(what) + " must be finite and positive");
    }
}

double sinc(double x) {
    if (std::abs(x) < 1e-4) {
        const double x2 = x * x;
        return 1.0 - x2 / 6.0 + x2 * x2 / 120.0;
    }
    return std::sin(x) / x;
}

// sin(a x) / (a sin x); the sinc form takes over where sin x is too small to divide by.
double dirichlet_ratio(double a, double x) {
    const double s = std::sin(x);
    if (std::abs(s) < 1e-6) {
        return sinc(a * x) / sinc(x);
    }
    return std::sin(a * x) / (a * s);
}

double clamp_unit(double f) { return std::clamp(f, 0.0, 1.0); }

double spectrum_fidelity(const NumberDistribution &d, double r) {
    const auto p = d.weights();
    const double c = pairwise_sum_terms(0, p.size(), [&](std::size_t n) { return p[n] * std::cos(n * r); });
    const double s = pairwise_sum_terms(0, p.size(), [&](std::size_t n) { return p[n] * std::sin(n * r); });
    return clamp_unit(c * c + s * s);
}

double rivas_luis_closed(double epsilon, std::size_t m, double r) {
    const double x = 0.5 * r;
    const double dm = static_cast<double>(m);
    const double ratio = dirichlet_ratio(dm, x);
    // (1/M) sum_{n=1}^{M} cos(n r) and |(1/M) sum e^{-i n r}|^2.
    const double mean_cos = std::cos((dm + 1.0) * x) * ratio;
    const double f_s = ratio * ratio;
    const double vac = 1.0 - epsilon;
    return clamp_unit(vac * vac + 2.0 * epsilon * vac * mean_cos + epsilon * epsilon * f_s);
}

double eval_reduced(const FidelityModel &model, double tau, double r);

double power_of(double f, std::size_t copies) {
    if (copies == 1) {
        return f;
    }
    return f > 1e-300 ? std::exp(static_cast<double>(copies) * std::log(f)) : 0.0;
}

double eval_reduced(const FidelityModel &model, double tau, double r) {
    struct Eval {
        double tau;
        double r;
        double operator()(const FidelityModel::Spectrum &s) const { return spectrum_fidelity(s.distribution, r); }
        double operator()(const FidelityModel::CoherentClosed &c) const {
            return clamp_unit(std::exp(2.0 * c.n_mean * (std::cos(r) - 1.0)));
        }
        double operator()(const FidelityModel::RectangleClosed &rect) const {
            const double ratio = dirichlet_ratio(static_cast<double>(rect.m + 1), 0.5 * r);
            return clamp_unit(ratio * ratio);
        }
        double operator()(const FidelityModel::RivasLuisClosed &rl) const { return rivas_luis_closed(rl.epsilon, rl.m, r); }
        double operator()(const FidelityModel::Product &p) const {
            double f = 1.0;
            for (std::size_t i = 0; i < p.factors.size(); ++i) {
                f *= power_of(eval_reduced(p.factors[i], tau, r), p.multiplicity[i]);
            }
            return f;
        }
        double operator()(const FidelityModel::LinearEnvelope &e) const { return linear_envelope(e.h_plus, tau); }
        double operator()(const FidelityModel::CosineEnvelope &e) const {
            return tau <= std::numbers::pi / (2.0 * e.delta_h) ? cosine_envelope(e.delta_h, tau) : 0.0;
        }
    };
    return std::visit(Eval{tau, r}, model.variant());
}

}  // namespace

FidelityModel FidelityModel::spectrum(NumberDistribution d) { return FidelityModel(Spectrum{std::move(d)}); }

FidelityModel FidelityModel::coherent(double n_mean) {
    validate(Coherent{n_mean});
    return FidelityModel(CoherentClosed{n_mean});
}

FidelityModel FidelityModel::rectangle(std::size_t m) { return FidelityModel(RectangleClosed{m}); }

FidelityModel FidelityModel::rivas_luis(double epsilon, std::size_t m) {
    validate(RivasLuis{epsilon, m});
    return FidelityModel(RivasLuisClosed{epsilon, m});
}

FidelityModel FidelityModel::closed_form(const StateFamilySpec &spec) {
    struct Make {
        FidelityModel operator()(const Coherent &c) const { return coherent(c.n_mean); }
        FidelityModel operator()(const Rectangle &r) const { return rectangle(r.m); }
        FidelityModel operator()(const RivasLuis &r) const { return rivas_luis(r.epsilon, r.m); }
    };
    return std::visit(Make{}, spec);
}

FidelityModel FidelityModel::product(std::vector<FidelityModel> factors) {
    if (factors.empty()) {
        throw std::invalid_argument("product fidelity needs at least one factor");
    }
    std::vector<std::size_t> multiplicity(factors.size(), 1);
    return FidelityModel(Product{std::move(factors), std::move(multiplicity)});
}

FidelityModel FidelityModel::power(FidelityModel factor, std::size_t copies) {
    if (copies < 1) {
        throw std::invalid_argument("product fidelity needs at least one copy");
    }
    std::vector<FidelityModel> factors;
    factors.push_back(std::move(factor));
    return FidelityModel(Product{std::move(factors), {copies}});
}

FidelityModel FidelityModel::linear_envelope(double h_plus) {
    require_positive(h_plus, "h_plus");
    return FidelityModel(LinearEnvelope{h_plus});
}

FidelityModel FidelityModel::cosine_envelope(double delta_h) {
    require_positive(delta_h, "delta_h");
    return FidelityModel(CosineEnvelope{delta_h});
}

double eval_fidelity(const FidelityModel &model, double tau) {
    if (!std::isfinite(tau) || tau < 0.0) {
        throw std::domain_error("fidelity needs a finite tau >= 0");
    }
    if (tau == 0.0) {
        return 1.0;
    }
    // Integer spectra are 2 pi periodic; reducing first keeps large tau accurate.
    return eval_reduced(model, tau, std::remainder(tau, kTwoPi));
}

double linear_envelope(double h_plus, double tau) {
    require_positive(h_plus, "h_plus");
    if (!(tau >= 0.0)) {
        throw std::domain_error("linear envelope needs tau >= 0");
    }
    return std::max(0.0, 1.0 - 2.0 * solve_lambda().lambda * h_plus * tau);
}

double cosine_envelope(double delta_h, double tau) {
    require_positive(delta_h, "delta_h");
    if (!(tau >= 0.0) || tau > std::numbers::pi / (2.0 * delta_h)) {
        throw std::domain_error("cosine envelope is only valid for 0 <= tau <= pi/(2 delta_h)");
    }
    const double c = std::cos(delta_h * tau);
    return c * c;
}

double rivas_luis_fidelity_floor(double epsilon) {
    if (!(epsilon >= 0.0 && epsilon <= 1.0)) {
        throw std::domain_error("Rivas-Luis epsilon must lie in [0, 1]");
    }
    return 1.0 - 4.0 * epsilon + 3.0 * epsilon * epsilon;
}

}  // namespace zzq
