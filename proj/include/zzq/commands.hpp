#pragma once

#include <cstddef>
#include <cstdint>
#include <numbers>
#include <stdexcept>
#include <string>
#include <vector>

#include "zzq/csv.hpp"
#include "zzq/numerics.hpp"

namespace zzq {

enum class StateFamily { Coherent, Rectangle, RivasLuis };

/// Parses "coherent", "rectangle" or "rivas-luis"; throws UsageError otherwise.
StateFamily parse_state_family(const std::string &name);

struct UsageError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct RunConfig {
    StateFamily state = StateFamily::Coherent;
    double n_mean = 1.0;
    std::size_t m = 19;
    double epsilon = 0.1;
    std::size_t copies = 1;
    double window = 2.0 * std::numbers::pi;
    double tau_min = 0.0;
    double tau_max = 2.0 * std::numbers::pi;
    std::size_t points = 201;
    /// Mean photon numbers (coherent, rectangle) or copy counts (rivas-luis). Empty selects
    /// the default grid of the family.
    std::vector<double> n_grid;
    std::uint64_t seed = 1;
    QuadratureConfig quadrature;
    /// Worker threads for grid evaluation; output does not depend on this.
    std::size_t threads = 1;

    /// Throws UsageError describing the first invalid field.
    void validate() const;
};

/// Columns: tau, fidelity.
CsvTable cmd_fidelity(const RunConfig &cfg);

/// Columns: n_total, qzzb_numeric, qzzb_closed_or_floor, qcrb, h_limit, variance_limit,
/// h_limit_valid, variance_limit_valid, quadrature_converged.
CsvTable cmd_bound(const RunConfig &cfg);

/// Panels a-f: fidelity curves (a, c, e) and bound tables (b, d, f) for coherent,
/// rectangle and Rivas-Luis states.
CsvTable cmd_figure(char panel, const RunConfig &cfg);

/// Default grids used by the figure panels.
std::vector<double> default_n_grid(StateFamily family);
inline const std::vector<double> kFigureCurveParameters = {1.0, 5.0, 25.0};

}  // namespace zzq
