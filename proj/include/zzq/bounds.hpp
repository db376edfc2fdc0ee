#pragma once

#include <cstddef>
#include <string_view>
#include <variant>

#include "zzq/fidelity.hpp"
#include "zzq/numerics.hpp"

namespace zzq {

struct UniformWindow {
    double mu = 0.0;
    double w = 1.0;
};

struct GaussianPrior {
    double mean = 0.0;
    double variance = 1.0;
};

using PriorSpec = std::variant<UniformWindow, GaussianPrior>;

/// Throws std::domain_error for a non-positive width or variance.
void validate(const PriorSpec &prior);

/// Prior probability density at x.
double prior_density(const PriorSpec &prior, double x);

/// Prior variance: W^2/12 for the window, the variance for a Gaussian.
double prior_variance(const PriorSpec &prior);

struct PriorFisherInfo {
    double pi = 0.0;
};

/// A uniform window has no Fisher information; it is replaced by a Gaussian of the same
/// variance W^2/12, giving 12/W^2. A Gaussian prior gives 1/variance, which is the same rule.
PriorFisherInfo prior_fisher_info(const PriorSpec &prior);
PriorFisherInfo window_fisher_info(double w);

enum class BoundMethod { QzzbNumeric, QzzbClosed, Qcrb, HLimit, VarianceLimit, Floor, ClassicalZzb };

std::string_view to_string(BoundMethod method);

struct BoundValidity {
    /// Window-size precondition of the H and variance limits.
    bool window_precondition_met = true;
    bool quadrature_converged = true;
};

struct BoundResult {
    double value = 0.0;  // mean-square error lower bound, rad^2
    BoundMethod method = BoundMethod::QzzbNumeric;
    double err_estimate = 0.0;
    BoundValidity validity;
};

/// (1/2) int_0^W tau (1 - tau/W) [1 - sqrt(1 - F(tau))] dtau, without valley filling.
BoundResult qzzb_numeric(const FidelityModel &fidelity, double w, const QuadratureConfig &cfg = {});

/// Closed-form lower bound on the coherent-state QZZB for W = 2 pi:
/// pi^{3/2}/(8 sqrt(N)) exp(-4N) erfi(2 sqrt(N)).
BoundResult qzzb_coherent_closed(double n_mean);

/// I_M = int_0^{2pi} sin^2((M+1)tau/2)/sin(tau/2) dtau by the two-step recursion from
/// I_{-1} = 0 and I_0 = 4. Pass m = -1 for the base case.
double rectangle_integral_recursive(long m);

/// I_M = 4 sum_{k=0}^{M} 1/(2k+1).
double rectangle_integral_direct(long m);

/// Closed-form lower bound on the rectangle-state QZZB for W = 2 pi:
/// pi/(2(M+1)^2) sum_{k=0}^{M} 1/(2k+1). err_estimate holds the disagreement between the
/// direct sum and the recursion, which is asserted to stay below 1e-12 relative.
BoundResult qzzb_rectangle_closed(std::size_t m);

/// (W^2/12)[1 - sqrt(1 - floor^nu)] with floor = max(0, 1 - 4 eps + 3 eps^2).
BoundResult rivas_luis_floor_bound(double epsilon, std::size_t copies, double w);

/// 1/(4 variance + pi). Throws std::domain_error if both terms vanish.
BoundResult qcrb(double variance, PriorFisherInfo pi);

/// 1/(80 lambda^2 H^2) - 1/(336 lambda^3 W H^3); W may be +infinity. The validity flag
/// records W >= 1/(2 lambda H). The lambda overload exists for sensitivity checks.
BoundResult h_limit(double h_plus, double w);
BoundResult h_limit(double h_plus, double w, double lambda);

/// (pi^2/16 - 1/2)/dH^2 - (1 + pi^3/48 - pi/2)/(W dH^3); W may be +infinity. The validity
/// flag records W >= pi/(2 dH).
BoundResult variance_limit(double delta_h, double w);

/// Minimum error probability for discriminating two pure states with overlap
/// |<a|b>|^2 = fidelity and prior p0 on the first.
double helstrom_pure(double fidelity, double p0);

}  // namespace zzq
