#include "zzq/commands.hpp"

#include <cmath>
#include <functional>
#include <optional>
#include <thread>

#include "zzq/bounds.hpp"
#include "zzq/fidelity.hpp"
#include "zzq/spectra.hpp"

namespace zzq {

namespace {

constexpr double kTwoPi = 2.0 * std::numbers::pi;

// Evaluates rows[i] = fn(i) on `threads` workers; rows land in index order.
std::vector<CsvTable::Row> parallel_rows(std::size_t count, std::size_t threads,
                                         const std::function<CsvTable::Row(std::size_t)> &fn) {
    std::vector<CsvTable::Row> rows(count);
    threads = std::max<std::size_t>(1, std::min(threads, count));
    if (threads == 1) {
        for (std::size_t i = 0; i < count; ++i) {
            rows[i] = fn(i);
        }
        return rows;
    }
    std::vector<std::exception_ptr> errors(threads);
    std::vector<std::thread> pool;
    for (std::size_t t = 0; t < threads; ++t) {
        pool.emplace_back([&, t] {
            try {
                for (std::size_t i = t; i < count; i += threads) {
                    rows[i] = fn(i);
                }
            } catch (...) {
                errors[t] = std::current_exception();
            }
        });
    }
    for (auto &th : pool) {
        th.join();
    }
    for (auto &e : errors) {
        if (e) {
            std::rethrow_exception(e);
        }
    }
    return rows;
}

std::vector<double> tau_grid(const RunConfig &cfg) {
    std::vector<double> taus(cfg.points);
    for (std::size_t i = 0; i < cfg.points; ++i) {
        taus[i] = cfg.points == 1 ? cfg.tau_min
                                  : cfg.tau_min + (cfg.tau_max - cfg.tau_min) * static_cast<double>(i) /
                                                      static_cast<double>(cfg.points - 1);
    }
    return taus;
}

StateFamilySpec family_spec(const RunConfig &cfg) {
    switch (cfg.state) {
    case StateFamily::Coherent:
        return Coherent{cfg.n_mean};
    case StateFamily::Rectangle:
        return Rectangle{cfg.m};
    case StateFamily::RivasLuis:
        return RivasLuis{cfg.epsilon, cfg.m};
    }
    throw UsageError("unknown state family");
}

FidelityModel copies_of(FidelityModel single, std::size_t copies) {
    return copies == 1 ? single : FidelityModel::power(std::move(single), copies);
}

bool is_two_pi(double w) { return std::abs(w - kTwoPi) <= 1e-12 * kTwoPi; }

std::size_t as_count(double v, const char *what) {
    const double r = std::round(v);
    if (!(std::abs(v - r) <= 1e-9) || r < 0.0) {
        throw UsageError(std::string(what) + " must be a non-negative integer, got " + format_real(v));
    }
    return static_cast<std::size_t>(r);
}

// One bound-table row for a grid value: N for coherent/rectangle, copies for rivas-luis.
CsvTable::Row bound_row(const RunConfig &cfg, double g) {
    const PriorFisherInfo pi = window_fisher_info(cfg.window);
    double n_total = 0.0;
    double variance = 0.0;
    double h_plus = 0.0;
    std::optional<double> closed;
    std::optional<FidelityModel> model;

    switch (cfg.state) {
    case StateFamily::Coherent:
        n_total = g;
        variance = g;
        h_plus = g;
        model = FidelityModel::coherent(g);
        if (is_two_pi(cfg.window)) {
            closed = qzzb_coherent_closed(g).value;
        }
        break;
    case StateFamily::Rectangle: {
        const std::size_t m = as_count(2.0 * g, "2N for the rectangle state");
        const Moments mom = moments(build_distribution(Rectangle{m}));
        n_total = mom.mean;
        variance = mom.variance;
        h_plus = mom.ground_offset_mean;
        model = FidelityModel::rectangle(m);
        if (is_two_pi(cfg.window)) {
            closed = qzzb_rectangle_closed(m).value;
        }
        break;
    }
    case StateFamily::RivasLuis: {
        const std::size_t copies = as_count(g, "copies");
        const auto nu = static_cast<double>(copies);
        const Moments single = moments(build_distribution(RivasLuis{cfg.epsilon, cfg.m}));
        n_total = nu * single.mean;
        variance = nu * single.variance;
        h_plus = nu * single.ground_offset_mean;
        model = copies_of(FidelityModel::rivas_luis(cfg.epsilon, cfg.m), copies);
        closed = rivas_luis_floor_bound(cfg.epsilon, copies, cfg.window).value;
        break;
    }
    }

    const BoundResult numeric = qzzb_numeric(*model, cfg.window, cfg.quadrature);
    std::optional<double> h_value, h_valid, v_value, v_valid;
    if (h_plus > 0.0) {
        const BoundResult h = h_limit(h_plus, cfg.window);
        h_value = h.value;
        h_valid = h.validity.window_precondition_met ? 1.0 : 0.0;
    }
    if (variance > 0.0) {
        const BoundResult v = variance_limit(std::sqrt(variance), cfg.window);
        v_value = v.value;
        v_valid = v.validity.window_precondition_met ? 1.0 : 0.0;
    }
    return {n_total,
            numeric.value,
            closed,
            qcrb(variance, pi).value,
            h_value,
            v_value,
            h_valid,
            v_valid,
            numeric.validity.quadrature_converged ? 1.0 : 0.0};
}

CsvTable bound_table(const RunConfig &cfg) {
    const std::vector<double> grid = cfg.n_grid.empty() ? default_n_grid(cfg.state) : cfg.n_grid;
    // Validate every grid value before any computation.
    for (double g : grid) {
        if (!std::isfinite(g)) {
            throw UsageError("grid values must be finite");
        }
        switch (cfg.state) {
        case StateFamily::Coherent:
            if (!(g > 0.0)) {
                throw UsageError("coherent grid values must be positive");
            }
            break;
        case StateFamily::Rectangle:
            as_count(2.0 * g, "2N for the rectangle state");
            break;
        case StateFamily::RivasLuis:
            if (as_count(g, "copies") < 1) {
                throw UsageError("copies must be at least 1");
            }
            break;
        }
    }
    CsvTable table({"n_total", "qzzb_numeric", "qzzb_closed_or_floor", "qcrb", "h_limit", "variance_limit",
                    "h_limit_valid", "variance_limit_valid", "quadrature_converged"});
    for (auto &row : parallel_rows(grid.size(), cfg.threads, [&](std::size_t i) { return bound_row(cfg, grid[i]); })) {
        table.add_row(std::move(row));
    }
    return table;
}

std::string parameter_label(double v) {
    const double r = std::round(v);
    if (std::abs(v - r) < 1e-12) {
        return std::to_string(static_cast<long long>(r));
    }
    return format_real(v);
}

CsvTable fidelity_curves(const RunConfig &cfg, const std::string &prefix, const std::vector<FidelityModel> &models,
                         const std::vector<double> &params) {
    std::vector<std::string> header = {"tau"};
    for (double p : params) {
        header.push_back("fidelity_" + prefix + parameter_label(p));
    }
    const std::vector<double> taus = tau_grid(cfg);
    CsvTable table(std::move(header));
    for (auto &row : parallel_rows(taus.size(), cfg.threads, [&](std::size_t i) {
             CsvTable::Row row = {taus[i]};
             for (const auto &model : models) {
                 row.emplace_back(eval_fidelity(model, taus[i]));
             }
             return row;
         })) {
        table.add_row(std::move(row));
    }
    return table;
}

}  // namespace

StateFamily parse_state_family(const std::string &name) {
    if (name == "coherent") {
        return StateFamily::Coherent;
    }
    if (name == "rectangle") {
        return StateFamily::Rectangle;
    }
    if (name == "rivas-luis") {
        return StateFamily::RivasLuis;
    }
    throw UsageError("unknown state family '" + name + "' (expected coherent, rectangle or rivas-luis)");
}

void RunConfig::validate() const {
    if (!std::isfinite(window) || !(window > 0.0)) {
        throw UsageError("--window must be positive");
    }
    if (points < 1) {
        throw UsageError("--points must be at least 1");
    }
    if (!std::isfinite(tau_min) || !std::isfinite(tau_max) || tau_min < 0.0 || tau_max < tau_min) {
        throw UsageError("tau grid needs 0 <= --tau-min <= --tau-max");
    }
    if (!std::isfinite(n_mean) || n_mean < 0.0) {
        throw UsageError("--n-mean must be >= 0");
    }
    if (!(epsilon >= 0.0 && epsilon <= 1.0)) {
        throw UsageError("--epsilon must lie in [0, 1]");
    }
    if (state == StateFamily::RivasLuis && m < 1) {
        throw UsageError("--m must be positive for rivas-luis");
    }
    if (copies < 1) {
        throw UsageError("--copies must be at least 1");
    }
    if (threads < 1) {
        throw UsageError("--threads must be at least 1");
    }
    try {
        quadrature.validate();
    } catch (const std::invalid_argument &e) {
        throw UsageError(e.what());
    }
}

std::vector<double> default_n_grid(StateFamily family) {
    switch (family) {
    case StateFamily::Coherent:
        return {0.25, 0.5, 1.0, 2.0, 4.0, 8.0, 16.0, 32.0, 64.0, 128.0};
    case StateFamily::Rectangle:
        return {0.5, 1.0, 2.0, 4.0, 8.0, 16.0, 32.0, 64.0, 128.0};
    case StateFamily::RivasLuis:
        return {1, 2, 3, 5, 7, 10, 15, 20, 30, 50, 70, 100};
    }
    return {};
}

CsvTable cmd_fidelity(const RunConfig &cfg) {
    cfg.validate();
    const FidelityModel model = copies_of(FidelityModel::closed_form(family_spec(cfg)), cfg.copies);
    const std::vector<double> taus = tau_grid(cfg);
    CsvTable table({"tau", "fidelity"});
    for (auto &row : parallel_rows(taus.size(), cfg.threads, [&](std::size_t i) {
             return CsvTable::Row{taus[i], eval_fidelity(model, taus[i])};
         })) {
        table.add_row(std::move(row));
    }
    return table;
}

CsvTable cmd_bound(const RunConfig &cfg) {
    cfg.validate();
    if (cfg.state != StateFamily::RivasLuis && cfg.copies != 1) {
        throw UsageError("--copies applies to rivas-luis only; use --n-grid for the photon number");
    }
    return bound_table(cfg);
}

CsvTable cmd_figure(char panel, const RunConfig &base) {
    base.validate();
    RunConfig cfg = base;
    const auto &params = kFigureCurveParameters;
    switch (panel) {
    case 'a': {
        std::vector<FidelityModel> models;
        for (double n : params) {
            models.push_back(FidelityModel::coherent(n));
        }
        return fidelity_curves(cfg, "n", models, params);
    }
    case 'c': {
        std::vector<FidelityModel> models;
        for (double n : params) {
            models.push_back(FidelityModel::rectangle(static_cast<std::size_t>(2.0 * n)));
        }
        return fidelity_curves(cfg, "n", models, params);
    }
    case 'e': {
        std::vector<FidelityModel> models;
        for (double nu : params) {
            models.push_back(copies_of(FidelityModel::rivas_luis(cfg.epsilon, cfg.m), static_cast<std::size_t>(nu)));
        }
        return fidelity_curves(cfg, "nu", models, params);
    }
    case 'b':
        cfg.state = StateFamily::Coherent;
        return bound_table(cfg);
    case 'd':
        cfg.state = StateFamily::Rectangle;
        return bound_table(cfg);
    case 'f':
        cfg.state = StateFamily::RivasLuis;
        return bound_table(cfg);
    default:
        throw UsageError(std::string("unknown panel '") + panel + "' (expected a-f)");
    }
}

}  // namespace zzq
