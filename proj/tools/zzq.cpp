// zzq: Ziv-Zakai and Cramer-Rao error bounds for optical phase estimation.
//
//   zzq fidelity --state coherent --n-mean 4 --points 101
//   zzq bound --state rivas-luis --epsilon 0.1 --m 19 --n-grid 1,10,100
//   zzq figure --panel f --out panel_f.csv
//   zzq verify --seed 7
//
// Exit status: 0 success, 1 verification failure, 2 usage error, 3 I/O error.

#include <CLI11.hpp>

#include <iostream>
#include <thread>

#include "zzq/commands.hpp"
#include "zzq/verify.hpp"

namespace {

constexpr int kExitVerifyFailed = 1;
constexpr int kExitUsage = 2;
constexpr int kExitIo = 3;

void emit(const std::string &text, const std::string &out) {
    if (out.empty()) {
        std::cout << text;
        std::cout.flush();
        if (!std::cout) {
            throw zzq::IoError("failed writing to stdout");
        }
    } else {
        zzq::write_text_file(out, text);
    }
}

}  // namespace

int main(int argc, char **argv) {
    CLI::App app{"Quantum Ziv-Zakai and Cramer-Rao bounds for phase estimation"};
    app.require_subcommand(1);
    app.fallthrough();
    app.set_config("--config", "", "Flat key=value file; command-line flags take precedence");

    zzq::RunConfig cfg;
    cfg.threads = std::max(1u, std::thread::hardware_concurrency());
    std::string state = "coherent";
    std::string out;
    std::string panel;

    app.add_option("--state", state, "State family: coherent | rectangle | rivas-luis")->capture_default_str();
    app.add_option("--n-mean", cfg.n_mean, "Mean photon number of the coherent state")->capture_default_str();
    app.add_option("--m", cfg.m, "Rectangle cutoff M or Rivas-Luis support size M")->capture_default_str();
    app.add_option("--epsilon", cfg.epsilon, "Rivas-Luis non-vacuum weight")->capture_default_str();
    app.add_option("--copies", cfg.copies, "Number of product copies (fidelity; rivas-luis)")->capture_default_str();
    app.add_option("--window", cfg.window, "Prior window width W in radians")->capture_default_str();
    app.add_option("--tau-min", cfg.tau_min, "First phase difference of the tau grid")->capture_default_str();
    app.add_option("--tau-max", cfg.tau_max, "Last phase difference of the tau grid")->capture_default_str();
    app.add_option("--points", cfg.points, "Number of tau grid points")->capture_default_str();
    app.add_option("--n-grid", cfg.n_grid,
                   "Comma-separated mean photon numbers (coherent, rectangle) or copy counts (rivas-luis)")
        ->delimiter(',');
    app.add_option("--out", out, "Output path; stdout when omitted");
    app.add_option("--seed", cfg.seed, "Seed for randomized verification checks")->capture_default_str();
    app.add_option("--abs-tol", cfg.quadrature.abs_tol, "Quadrature absolute tolerance")->capture_default_str();
    app.add_option("--rel-tol", cfg.quadrature.rel_tol, "Quadrature relative tolerance")->capture_default_str();
    app.add_option("--threads", cfg.threads, "Worker threads for grid evaluation (output is identical for any value)");

    auto *fidelity = app.add_subcommand("fidelity", "Fidelity F(tau) of a state (or product of copies) on a tau grid");
    auto *bound = app.add_subcommand("bound", "QZZB, closed forms, QCRB, H and variance limits over an N grid");
    auto *figure = app.add_subcommand(
        "figure", "Figure panels: a/c/e fidelity curves for coherent N, rectangle N and Rivas-Luis copies in {1, 5, 25}; "
                  "b/d/f bound tables (f uses copies 1,2,3,5,7,10,15,20,30,50,70,100)");
    figure->add_option("--panel", panel, "Panel letter a-f")->required();
    auto *verify = app.add_subcommand("verify", "Run the oracle and invariant suites");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError &e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : kExitUsage;
    }

    try {
        cfg.state = zzq::parse_state_family(state);
        if (verify->parsed()) {
            zzq::VerifyOptions options;
            options.seed = cfg.seed;
            const auto outcomes = zzq::run_verification(options);
            emit(zzq::format_report(outcomes), out);
            return zzq::all_passed(outcomes) ? 0 : kExitVerifyFailed;
        }
        if (fidelity->parsed()) {
            emit(zzq::cmd_fidelity(cfg).to_string(), out);
        } else if (bound->parsed()) {
            emit(zzq::cmd_bound(cfg).to_string(), out);
        } else if (figure->parsed()) {
            if (panel.size() != 1) {
                throw zzq::UsageError("--panel takes a single letter a-f");
            }
            emit(zzq::cmd_figure(panel[0], cfg).to_string(), out);
        }
    } catch (const zzq::IoError &e) {
        std::cerr << "zzq: " << e.what() << '\n';
        return kExitIo;
    } catch (const std::exception &e) {
        std::cerr << "zzq: " << e.what() << '\n';
        return kExitUsage;
    }
    return 0;
}
