#pragma once

#include "hypin/domain_enum.hpp"

#include <cstdint>
#include <string>
#include <vector>

namespace hypin::cli {

struct CheckResult {
    std::string name;
    bool passed = false;
    long samples = 0;
    /// Smallest slack against the check's threshold; negative means violated.
    double worst_margin = 0.0;
    std::string detail;
};

struct VerifyOptions {
    int l_max = 8;
    unsigned threads = 1;
    double tol = 1e-13;
    std::uint64_t seed = 20190801;
    /// Test hook: the named check has its pass/fail outcome inverted.
    std::string inject_fault;
};

struct VerifyReport {
    std::vector<CheckResult> checks;
    bool all_passed() const;
    const CheckResult* first_failure() const;
};

/// Names of all checks in execution order.
std::vector<std::string> verification_check_names();

/// Runs the property suite for l = 4 .. l_max (l_max in [4, 12]).
VerifyReport run_verification(const VerifyOptions& options);

/// Generate-and-test census enumeration: every A in [0, l]^(l-1) with sum l,
/// every B in [0, l-2]^(l-2) with sum <= l-2, kept when the handshake holds.
std::vector<TreeTypeSolution> brute_force_censuses(int l);

}  // namespace hypin::cli
