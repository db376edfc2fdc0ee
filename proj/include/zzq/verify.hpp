#pragma once

#include <cstdint>
#include <string>
#include <vector>

namespace zzq {

struct VerifyOptions {
    std::uint64_t seed = 1;
    /// Added to lambda on the implementation side of the H-limit check; used to
    /// confirm that the suite detects a corrupted constant.
    double lambda_perturbation = 0.0;
};

struct CheckOutcome {
    std::string name;
    bool passed = false;
    double discrepancy = 0.0;
    double tolerance = 0.0;
};

/// Runs the oracle cross-checks and invariant suites of every module.
std::vector<CheckOutcome> run_verification(const VerifyOptions &options);

/// One line per check plus a summary; byte-identical for identical options.
std::string format_report(const std::vector<CheckOutcome> &outcomes);

bool all_passed(const std::vector<CheckOutcome> &outcomes);

}  // namespace zzq
