#include "zzq/numerics.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <limits>
#include <numbers>
#include <stdexcept>
#include <string>

namespace zzq {

void QuadratureConfig::validate() const {
    if (!(abs_tol > 0.0) || !(rel_tol > 0.0)) {
        throw std::invalid_argument("quadrature tolerances must be positive");
    }
    if (max_subdivisions < 1) {
        throw std::invalid_argument("max_subdivisions must be at least 1");
    }
}

namespace {

// Gauss-Kronrod 7/15 abscissae and weights (QUADPACK qk15).
constexpr std::array<double, 8> kXgk = {
    0.991455371120812639206854697526329, 0.949107912342758524526189684047851,
    0.864864423359769072789712788640926, 0.741531185599394439863864773280788,
    0.586087235467691130294144838258730, 0.405845151377397166906606412076961,
    0.207784955007898467600689403773245, 0.0};
constexpr std::array<double, 8> kWgk = {
    0.022935322010529224963732008058970, 0.063092092629978553290700663189204,
    0.104790010322250183839876322541518, 0.140653259715525918745189590510238,
    0.169004726639267902826583426598550, 0.190350578064785409913256402421014,
    0.204432940075298892414161999234649, 0.209482141084727828012999174891714};
constexpr std::array<double, 4> kWg = {
    0.129484966168869693270611432679082, 0.279705391489276667901467771423780,
    0.381830050505118944950369775488975, 0.417959183673469387755102040816327};

struct Segment {
    double a;
    double b;
    double value;
    double error;
};

double checked_eval(const RealFunction &f, double x) {
    const double y = f(x);
    if (!std::isfinite(y)) {
        throw std::domain_error("integrand is not finite at x = " + std::to_string(x));
    }
    return y;
}

Segment gauss_kronrod_15(const RealFunction &f, double a, double b) {
    const double center = 0.5 * (a + b);
    const double half = 0.5 * (b - a);
    const double fc = checked_eval(f, center);

    double res_g = fc * kWg[3];
    double res_k = fc * kWgk[7];
    double res_abs = std::abs(res_k);
    std::array<double, 7> f1{};
    std::array<double, 7> f2{};

    for (std::size_t j = 0; j < 7; ++j) {
        const double dx = half * kXgk[j];
        f1[j] = checked_eval(f, center - dx);
        f2[j] = checked_eval(f, center + dx);
        const double fsum = f1[j] + f2[j];
        res_k += kWgk[j] * fsum;
        res_abs += kWgk[j] * (std::abs(f1[j]) + std::abs(f2[j]));
        if (j % 2 == 1) {
            res_g += kWg[j / 2] * fsum;
        }
    }

    const double mean = 0.5 * res_k;
    double res_asc = kWgk[7] * std::abs(fc - mean);
    for (std::size_t j = 0; j < 7; ++j) {
        res_asc += kWgk[j] * (std::abs(f1[j] - mean) + std::abs(f2[j] - mean));
    }

    const double scale = std::abs(half);
    res_abs *= scale;
    res_asc *= scale;
    double err = std::abs((res_k - res_g) * half);
    if (res_asc != 0.0 && err != 0.0) {
        err = res_asc * std::min(1.0, std::pow(200.0 * err / res_asc, 1.5));
    }
    constexpr double eps = std::numeric_limits<double>::epsilon();
    if (res_abs > std::numeric_limits<double>::min() / (50.0 * eps)) {
        err = std::max(50.0 * eps * res_abs, err);
    }
    return {a, b, res_k * half, err};
}

}  // namespace

QuadratureResult integrate(const RealFunction &f, double a, double b, const QuadratureConfig &cfg) {
    cfg.validate();
    if (!std::isfinite(a) || !std::isfinite(b) || a > b) {
        throw std::invalid_argument("integrate requires finite limits with a <= b");
    }
    if (a == b) {
        return {};
    }

    std::vector<Segment> segments;
    segments.reserve(cfg.max_subdivisions);
    segments.push_back(gauss_kronrod_15(f, a, b));

    auto totals = [&segments]() {
        std::vector<double> values(segments.size());
        std::vector<double> errors(segments.size());
        for (std::size_t i = 0; i < segments.size(); ++i) {
            values[i] = segments[i].value;
            errors[i] = segments[i].error;
        }
        return std::pair{pairwise_sum(values), pairwise_sum(errors)};
    };

    auto [value, error] = totals();
    auto target = [&cfg](double v) { return std::max(cfg.abs_tol, cfg.rel_tol * std::abs(v)); };

    while (error > target(value) && segments.size() < cfg.max_subdivisions) {
        auto worst = std::max_element(segments.begin(), segments.end(),
                                      [](const Segment &l, const Segment &r) { return l.error < r.error; });
        const double mid = 0.5 * (worst->a + worst->b);
        if (!(mid > worst->a && mid < worst->b)) {
            break;  // interval exhausted at machine resolution
        }
        const Segment left = gauss_kronrod_15(f, worst->a, mid);
        const Segment right = gauss_kronrod_15(f, mid, worst->b);
        *worst = left;
        segments.push_back(right);
        std::tie(value, error) = totals();
    }

    // Report in left-to-right order so the final reduction is independent of refinement history.
    std::sort(segments.begin(), segments.end(), [](const Segment &l, const Segment &r) { return l.a < r.a; });
    std::tie(value, error) = totals();
    return {value, error, segments.size(), error <= target(value)};
}

double pairwise_sum(std::span<const double> values) {
    return pairwise_sum_terms(0, values.size(), [&values](std::size_t i) { return values[i]; });
}

namespace {

constexpr double kSeriesLimit = 7.0;

double erfi_series(double z) {
    const double z2 = z * z;
    double term = z;
    double sum = z;
    for (int n = 1; n < 1000; ++n) {
        term *= z2 / n;
        const double contribution = term / (2 * n + 1);
        sum += contribution;
        if (contribution < 1e-17 * sum) {
            break;
        }
    }
    return 2.0 / std::sqrt(std::numbers::pi) * sum;
}

// exp(-z^2) erfi(z) ~ 1/(sqrt(pi) z) * sum_k (2k-1)!! / (2z^2)^k, truncated at the smallest term.
double scaled_erfi_asymptotic(double z) {
    const double x = 2.0 * z * z;
    double term = 1.0;
    double sum = 1.0;
    for (int k = 1; k < 1000; ++k) {
        const double next = term * (2 * k - 1) / x;
        if (next >= term) {
            // Smallest term reached; it bounds the truncation error.
            if (term > 1e-15 * sum) {
                throw std::logic_error("erfi asymptotic series diverged before reaching tolerance");
            }
            break;
        }
        term = next;
        sum += term;
        if (term < 1e-17 * sum) {
            break;
        }
    }
    return sum / (std::sqrt(std::numbers::pi) * z);
}

void check_erfi_argument(double z) {
    if (!std::isfinite(z) || z < 0.0) {
        throw std::domain_error("erfi is implemented for finite z >= 0");
    }
}

}  // namespace

double erfi(double z) {
    check_erfi_argument(z);
    if (z <= kSeriesLimit) {
        return erfi_series(z);
    }
    const double log_value = z * z + std::log(scaled_erfi_asymptotic(z));
    if (log_value >= std::log(std::numeric_limits<double>::max())) {
        throw std::overflow_error("erfi(" + std::to_string(z) +
                                  ") exceeds the double range; use scaled_erfi for large arguments");
    }
    return std::exp(log_value);
}

double scaled_erfi(double z) {
    check_erfi_argument(z);
    if (z <= kSeriesLimit) {
        return erfi_series(z) * std::exp(-z * z);
    }
    return scaled_erfi_asymptotic(z);
}

double normal_tail(double x) { return 0.5 * std::erfc(x / std::numbers::sqrt2); }

double find_root(const RealFunction &f, double lo, double hi, double x_tol, int max_iter) {
    double f_lo = f(lo);
    double f_hi = f(hi);
    if (f_lo == 0.0) {
        return lo;
    }
    if (f_hi == 0.0) {
        return hi;
    }
    if ((f_lo > 0.0) == (f_hi > 0.0)) {
        throw std::invalid_argument("find_root: bracket does not straddle a sign change");
    }

    double best = lo;
    double f_best = f_lo;
    for (int iter = 0; iter < max_iter && hi - lo > x_tol; ++iter) {
        const double width = hi - lo;
        double x = lo - f_lo * (hi - lo) / (f_hi - f_lo);
        // Fall back to bisection whenever the secant point hugs an end of the bracket.
        if (!(x > lo + 0.1 * width && x < hi - 0.1 * width) || iter % 3 == 2) {
            x = 0.5 * (lo + hi);
        }
        const double fx = f(x);
        if (std::abs(fx) < std::abs(f_best)) {
            best = x;
            f_best = fx;
        }
        if (fx == 0.0) {
            return x;
        }
        if ((fx > 0.0) == (f_lo > 0.0)) {
            lo = x;
            f_lo = fx;
        } else {
            hi = x;
            f_hi = fx;
        }
    }
    if (std::abs(f_lo) < std::abs(f_best)) {
        best = lo;
        f_best = f_lo;
    }
    if (std::abs(f_hi) < std::abs(f_best)) {
        best = hi;
    }
    return best;
}

LambdaConstant solve_lambda() {
    static const LambdaConstant cached = [] {
        auto gap = [](double phi) { return std::sin(phi) - (1.0 - std::cos(phi)) / phi; };
        const double phi = find_root(gap, 0.1, std::numbers::pi - 0.1);
        return LambdaConstant{std::sin(phi), phi, gap(phi)};
    }();
    return cached;
}

std::vector<Sample> valley_fill(std::span<const Sample> samples) {
    for (std::size_t i = 1; i < samples.size(); ++i) {
        if (!(samples[i].tau > samples[i - 1].tau)) {
            throw std::invalid_argument("valley_fill requires strictly increasing tau");
        }
    }
    std::vector<Sample> out(samples.begin(), samples.end());
    for (std::size_t i = out.size(); i-- > 1;) {
        out[i - 1].value = std::max(out[i - 1].value, out[i].value);
    }
    return out;
}

RandomStream::RandomStream(std::uint64_t seed) : engine_(seed) {}

double RandomStream::uniform() { return static_cast<double>(engine_() >> 11) * 0x1.0p-53; }

double RandomStream::normal() {
    if (has_spare_) {
        has_spare_ = false;
        return spare_normal_;
    }
    double u = 0.0;
    double v = 0.0;
    double s = 0.0;
    do {
        u = 2.0 * uniform() - 1.0;
        v = 2.0 * uniform() - 1.0;
        s = u * u + v * v;
    } while (s >= 1.0 || s == 0.0);
    const double factor = std::sqrt(-2.0 * std::log(s) / s);
    spare_normal_ = v * factor;
    has_spare_ = true;
    return u * factor;
}

}  // namespace zzq
