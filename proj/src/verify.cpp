#include "zzq/verify.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <numbers>

#include "zzq/bounds.hpp"
#include "zzq/classical.hpp"
#include "zzq/fidelity.hpp"
#include "zzq/numerics.hpp"
#include "zzq/spectra.hpp"

namespace zzq {

namespace {

constexpr double kPi = std::numbers::pi;
constexpr double kTwoPi = 2.0 * kPi;

const QuadratureConfig kOracleQuad{1e-13, 1e-12, 4000};

class Suite {
public:
    /// Passes when discrepancy <= tolerance.
    void record(std::string name, double discrepancy, double tolerance) {
        const bool ok = std::isfinite(discrepancy) && discrepancy <= tolerance;
        outcomes_.push_back({std::move(name), ok, discrepancy, tolerance});
    }

    std::vector<CheckOutcome> take() { return std::move(outcomes_); }

private:
    std::vector<CheckOutcome> outcomes_;
};

double oracle_integral(const RealFunction &f, double a, double b) { return integrate(f, a, b, kOracleQuad).value; }

std::vector<double> uniform_grid(double lo, double hi, std::size_t n) {
    std::vector<double> g(n);
    for (std::size_t i = 0; i < n; ++i) {
        g[i] = lo + (hi - lo) * static_cast<double>(i) / static_cast<double>(n - 1);
    }
    return g;
}

double max_abs_diff(const FidelityModel &a, const FidelityModel &b) {
    double worst = 0.0;
    for (double tau : uniform_grid(0.0, kTwoPi, 1000)) {
        worst = std::max(worst, std::abs(eval_fidelity(a, tau) - eval_fidelity(b, tau)));
    }
    return worst;
}

// Minimum error probability from the trace norm of p0|a><a| - p1|b><b| for real unit vectors
// a = (1, 0), b = (c, s) with c^2 = F.
double helstrom_trace_norm(double fidelity, double p0) {
    const double c = std::sqrt(fidelity);
    const double s = std::sqrt(1.0 - fidelity);
    const double p1 = 1.0 - p0;
    const double m00 = p0 - p1 * c * c;
    const double m01 = -p1 * c * s;
    const double m11 = -p1 * s * s;
    const double half_trace = 0.5 * (m00 + m11);
    const double radius = std::hypot(0.5 * (m00 - m11), m01);
    const double norm = std::abs(half_trace + radius) + std::abs(half_trace - radius);
    return 0.5 * (1.0 - norm);
}

void numerics_checks(Suite &suite, const VerifyOptions &opt) {
    const LambdaConstant lc = solve_lambda();
    suite.record("numerics.lambda.value", std::abs(lc.lambda - 0.7246), 5e-5);
    suite.record("numerics.lambda.residual",
                 std::max(std::abs(std::sin(lc.phi) - lc.lambda), std::abs((1.0 - std::cos(lc.phi)) / lc.phi - lc.lambda)),
                 1e-12);

    const double direct = integrate([](double t) { return std::sin(0.5 * t) * std::exp(2.0 * std::cos(t)); }, 0.0, kTwoPi).value;
    suite.record("numerics.integrate.substitution_oracle", std::abs(direct - std::sqrt(kPi) * std::exp(-2.0) * erfi(2.0)),
                 1e-10);

    double worst = 0.0;
    for (double z : {0.1, 0.5, 1.0, 2.0, 3.0, 5.0, 6.5, 8.0, 10.0}) {
        const double ref = 2.0 / std::sqrt(kPi) * oracle_integral([](double u) { return std::exp(u * u); }, 0.0, z);
        worst = std::max(worst, std::abs(erfi(z) - ref) / ref);
    }
    suite.record("numerics.erfi.quadrature_oracle", worst, 1e-10);

    RandomStream rng(opt.seed);
    std::vector<Sample> samples(64);
    for (std::size_t i = 0; i < samples.size(); ++i) {
        samples[i] = {static_cast<double>(i), rng.uniform()};
    }
    const auto once = valley_fill(samples);
    const auto twice = valley_fill(once);
    double idem = 0.0;
    for (std::size_t i = 0; i < once.size(); ++i) {
        idem = std::max(idem, std::abs(once[i].value - twice[i].value));
    }
    suite.record("numerics.valley_fill.idempotent", idem, 0.0);
}

void spectra_checks(Suite &suite) {
    const Moments rl = moments(build_distribution(RivasLuis{0.1, 19}));
    suite.record("spectra.rivas_luis.moments", std::abs(rl.mean - 1.0) + std::abs(rl.variance - 12.0), 1e-12);

    const auto poisson = build_distribution(Coherent{1.0}, 1e-15);
    double worst = 0.0;
    double factorial = 1.0;
    for (std::size_t n = 0; n <= poisson.cutoff(); ++n) {
        factorial *= n == 0 ? 1.0 : static_cast<double>(n);
        worst = std::max(worst, std::abs(poisson[n] - std::exp(-1.0) / factorial));
    }
    suite.record("spectra.coherent.factorial_series", worst, 1e-15);

    const Moments five = moments(convolve_power(build_distribution(RivasLuis{0.1, 19}), 5));
    suite.record("spectra.convolution.moment_additivity", std::abs(five.mean - 5.0) + std::abs(five.variance - 60.0), 1e-9);
}

void fidelity_checks(Suite &suite) {
    suite.record("fidelity.coherent.closed_vs_spectrum",
                 max_abs_diff(FidelityModel::coherent(4.0), FidelityModel::spectrum(build_distribution(Coherent{4.0}))),
                 1e-10);
    suite.record("fidelity.rectangle.closed_vs_spectrum",
                 max_abs_diff(FidelityModel::rectangle(19), FidelityModel::spectrum(build_distribution(Rectangle{19}))),
                 1e-10);
    suite.record(
        "fidelity.rivas_luis.closed_vs_spectrum",
        max_abs_diff(FidelityModel::rivas_luis(0.1, 19), FidelityModel::spectrum(build_distribution(RivasLuis{0.1, 19}))),
        1e-10);

    double linear = 0.0;
    double cosine = 0.0;
    for (const StateFamilySpec &spec : {StateFamilySpec{Rectangle{4}}, StateFamilySpec{Coherent{1.0}},
                                        StateFamilySpec{RivasLuis{0.1, 19}}}) {
        const auto d = build_distribution(spec);
        const Moments mom = moments(d);
        const auto exact = FidelityModel::spectrum(d);
        const double dh = std::sqrt(mom.variance);
        for (double tau : uniform_grid(0.0, kTwoPi, 200)) {
            linear = std::max(linear, linear_envelope(mom.ground_offset_mean, tau) - eval_fidelity(exact, tau));
        }
        for (double tau : uniform_grid(0.0, kPi / (2.0 * dh), 200)) {
            cosine = std::max(cosine, cosine_envelope(dh, tau) - eval_fidelity(exact, tau));
        }
    }
    suite.record("fidelity.linear_envelope.domination", std::max(0.0, linear), 1e-12);
    suite.record("fidelity.cosine_envelope.domination", std::max(0.0, cosine), 1e-12);

    double floor_gap = 0.0;
    for (std::size_t m : {1u, 2u, 5u, 19u, 50u}) {
        for (double eps : {0.05, 0.1, 0.3}) {
            const auto model = FidelityModel::rivas_luis(eps, m);
            for (double tau : uniform_grid(0.0, kTwoPi, 2001)) {
                floor_gap = std::max(floor_gap, rivas_luis_fidelity_floor(eps) - eval_fidelity(model, tau));
            }
        }
    }
    suite.record("fidelity.rivas_luis.floor_domination", std::max(0.0, floor_gap), 1e-12);
}

void bound_checks(Suite &suite, const VerifyOptions &opt) {
    const double lambda = solve_lambda().lambda;
    double h_worst = 0.0;
    double v_worst = 0.0;
    for (double h : {0.5, 1.0, 5.0}) {
        for (double w : {kTwoPi, 1e3}) {
            const double edge = 1.0 / (2.0 * lambda * h);
            const double oracle = 0.5 * oracle_integral(
                                            [=](double t) { return t * (1.0 - t / w) * (1.0 - std::sqrt(2.0 * lambda * h * t)); },
                                            0.0, edge);
            h_worst = std::max(h_worst, std::abs(h_limit(h, w, lambda + opt.lambda_perturbation).value - oracle));

            const double vedge = kPi / (2.0 * h);
            const double voracle =
                0.5 * oracle_integral([=](double t) { return t * (1.0 - t / w) * (1.0 - std::sin(h * t)); }, 0.0, vedge);
            v_worst = std::max(v_worst, std::abs(variance_limit(h, w).value - voracle));
        }
        h_worst = std::max(h_worst, std::abs(h_limit(h, INFINITY, lambda + opt.lambda_perturbation).value -
                                             1.0 / (80.0 * lambda * lambda * h * h)));
    }
    suite.record("bounds.h_limit.quadrature_oracle", h_worst, 1e-10);
    suite.record("bounds.variance_limit.quadrature_oracle", v_worst, 1e-10);

    double env_worst = 0.0;
    for (double h : {0.5, 1.0, 5.0}) {
        env_worst = std::max(env_worst,
                             std::abs(qzzb_numeric(FidelityModel::linear_envelope(h), kTwoPi).value - h_limit(h, kTwoPi).value));
        env_worst = std::max(env_worst, std::abs(qzzb_numeric(FidelityModel::cosine_envelope(h), kTwoPi).value -
                                                 variance_limit(h, kTwoPi).value));
    }
    suite.record("bounds.envelope_integrals_match_closed_forms", env_worst, 1e-9);

    double coh_worst = 0.0;
    for (double n : {0.25, 1.0, 4.0, 16.0}) {
        const double oracle =
            0.25 * kPi * oracle_integral([n](double u) { return std::exp(4.0 * n * (u * u - 1.0)); }, -1.0, 1.0);
        coh_worst = std::max(coh_worst, std::abs(qzzb_coherent_closed(n).value - oracle));
    }
    suite.record("bounds.coherent_closed.substitution_oracle", coh_worst, 1e-8);

    double sine_worst = 0.0;
    for (double n : {0.5, 1.0, 2.0, 5.0, 10.0}) {
        const double oracle = kPi / 8.0 * oracle_integral(
                                              [n](double t) { return std::sin(0.5 * t) * std::exp(2.0 * n * (std::cos(t) - 1.0)); },
                                              0.0, kTwoPi);
        sine_worst = std::max(sine_worst, std::abs(qzzb_coherent_closed(n).value - oracle));
    }
    suite.record("bounds.coherent_closed.sine_weighted_oracle", sine_worst, 1e-8);
    suite.record("bounds.coherent_closed.asymptote", std::abs(1000.0 * qzzb_coherent_closed(1000.0).value * 16.0 / kPi - 1.0),
                 1e-2);

    double rect_worst = 0.0;
    for (long m = 0; m <= 200; ++m) {
        const double d = rectangle_integral_direct(m);
        rect_worst = std::max(rect_worst, std::abs(d - rectangle_integral_recursive(m)) / d);
    }
    suite.record("bounds.rectangle.recursion_vs_direct", rect_worst, 1e-12);

    double order = 0.0;
    for (double n : {0.25, 0.5, 1.0, 2.0, 4.0, 8.0, 16.0, 24.0, 32.0}) {
        const double numeric = qzzb_numeric(FidelityModel::coherent(n), kTwoPi).value;
        order = std::max({order, qzzb_coherent_closed(n).value - numeric, numeric - kTwoPi * kTwoPi / 12.0});
    }
    suite.record("bounds.coherent.ordering_chain", std::max(0.0, order), 1e-9);

    double floor_violation = 0.0;
    for (std::size_t nu : {1u, 2u, 5u, 10u, 20u}) {
        const double numeric =
            qzzb_numeric(FidelityModel::power(FidelityModel::rivas_luis(0.1, 19), nu), kTwoPi).value;
        floor_violation = std::max(floor_violation, rivas_luis_floor_bound(0.1, nu, kTwoPi).value - numeric);
    }
    suite.record("bounds.rivas_luis.floor_below_numeric", std::max(0.0, floor_violation), 1e-9);

    const auto gaussian = convolve_power(build_distribution(Coherent{5.0}), 5);
    const double var = moments(gaussian).variance;
    const double gauss_numeric = qzzb_numeric(FidelityModel::spectrum(gaussian), kTwoPi).value;
    suite.record("bounds.gaussian_spectrum.factor_two", std::max(0.0, 1.0 / (8.0 * var) - gauss_numeric), 1e-9);

    RandomStream rng(opt.seed ^ 0x9e3779b97f4a7c15ULL);
    double hel = 0.0;
    for (int i = 0; i < 1000; ++i) {
        const double f = rng.uniform();
        const double p0 = rng.uniform();
        hel = std::max(hel, std::abs(helstrom_pure(f, p0) - helstrom_trace_norm(f, p0)));
    }
    suite.record("bounds.helstrom.trace_norm_oracle", hel, 1e-12);
}

void classical_checks(Suite &suite, const VerifyOptions &opt) {
    const QuadratureConfig cfg{1e-11, 1e-10, 2000};
    const auto report = equal_prior_variant_equivalence(UniformWindow{0.0, 1.0}, gaussian_shift_error_prob({0.01}), cfg);
    suite.record("classical.uniform_variant_equivalence", report.difference, 1e-9);

    const double w = kTwoPi;
    const auto indist = classical_zzb(UniformWindow{0.0, w}, fidelity_error_prob(FidelityModel::rectangle(0)),
                                      ZzbVariant::EqualPrior, false, cfg);
    suite.record("classical.identical_states_give_prior_variance", std::abs(indist.value - w * w / 12.0), 1e-9);

    const auto pe_rect = fidelity_error_prob(FidelityModel::rectangle(4));
    const double raw = classical_zzb(UniformWindow{0.0, w}, pe_rect, ZzbVariant::EqualPrior, false, cfg).value;
    const double filled = classical_zzb(UniformWindow{0.0, w}, pe_rect, ZzbVariant::EqualPrior, true, cfg).value;
    suite.record("classical.valley_fill_never_decreases", std::max(0.0, raw - filled), 1e-9);

    double direction = 0.0;
    std::uint64_t cell = 0;
    for (double sigma : {0.01, 0.1, 1.0}) {
        for (double width : {0.5, 1.0, 4.0}) {
            const UniformWindow prior{0.0, width};
            const auto mc = monte_carlo_mmse(prior, GaussianShift{sigma}, 20000, opt.seed + cell++);
            const double bound =
                classical_zzb(prior, gaussian_shift_error_prob({sigma}), ZzbVariant::EqualPrior, false, cfg).value;
            direction = std::max(direction, bound - (mc.mse + 3.0 * mc.stderr_mse));
        }
    }
    suite.record("classical.monte_carlo_bound_direction", std::max(0.0, direction), 0.0);
}

}  // namespace

std::vector<CheckOutcome> run_verification(const VerifyOptions &options) {
    Suite suite;
    numerics_checks(suite, options);
    spectra_checks(suite);
    fidelity_checks(suite);
    bound_checks(suite, options);
    classical_checks(suite, options);
    return suite.take();
}

std::string format_report(const std::vector<CheckOutcome> &outcomes) {
    std::string out;
    std::size_t failed = 0;
    char buf[256];
    for (const auto &c : outcomes) {
        std::snprintf(buf, sizeof(buf), "[%s] %-48s discrepancy=%.3e tolerance=%.1e\n", c.passed ? "PASS" : "FAIL",
                      c.name.c_str(), c.discrepancy, c.tolerance);
        out += buf;
        failed += c.passed ? 0 : 1;
    }
    std::snprintf(buf, sizeof(buf), "%zu checks, %zu failed\n", outcomes.size(), failed);
    out += buf;
    return out;
}

bool all_passed(const std::vector<CheckOutcome> &outcomes) {
    return std::all_of(outcomes.begin(), outcomes.end(), [](const CheckOutcome &c) { return c.passed; });
}

}  // namespace zzq
