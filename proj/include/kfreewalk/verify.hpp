#pragma once

#include <string>
#include <vector>

namespace kfreewalk {

struct CheckResult {
    std::string name;
    bool passed = false;
    double statistic = 0.0;  ///< the measured quantity (max error, max scaled gap, ...)
    double threshold = 0.0;  ///< pass iff statistic <= threshold
    std::string detail;
};

struct VerifyOptions {
    bool quick = false;
    /// Test-only: flip one k-free flag before the sieve checks compare.
    bool inject_sieve_fault = false;
};

/// Pinned desk-scale checks of the sieve identities, the congruence and
/// k-free binomial sums, the mean of f, the exact/enumeration agreement and
/// the counting baselines.
std::vector<CheckResult> run_verify_suite(const VerifyOptions& opt = {});

}  // namespace kfreewalk
