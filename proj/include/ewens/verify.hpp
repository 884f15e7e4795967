#pragma once
// Verification suites driven by `verify` on the command line. Each suite
// bundles the exhaustive identities and statistical checks for one area;
// fast mode shrinks sweep ranges and sample counts (loosening statistical
// thresholds accordingly) for a quick smoke pass.

#include <optional>
#include <string>
#include <vector>

#include "ewens/exec.hpp"
#include "ewens/partition.hpp"

namespace ewens {

struct CheckResult {
    std::string name;
    bool pass = false;
    std::string detail;
};

struct SuiteReport {
    std::string suite;
    std::vector<CheckResult> checks;

    bool all_pass() const;
};

inline constexpr std::uint64_t kVerifySeed = 20240901;

const std::vector<std::string>& suite_names();
SuiteReport run_suite(const std::string& name, bool fast, std::uint64_t seed = kVerifySeed,
                      Exec exec = Exec::parallel);

// Reusable sweep primitives (also exercised by the acceptance driver).

// max over n <= n_max, theta in {0.5, 1, 2} of TV(pushforward, pmf).
double max_coupling_tv(count_t n_max, Exec exec);

struct SensitivityViolation {
    count_t n = 0;
    std::uint64_t mask = 0;
    count_t d = 0;
    std::string stat;
    double value = 0.0;
    double bound = 0.0;
};

// Exhaustive scan of the per-statistic prefix-forcing bounds over all
// strings with leading 1, all d <= n, n <= n_max:
//   ordered parts: L1 distance <= 2d; count path: sup <= d;
//   log lcm / log product: sup <= d log n.
// Returns the first violation found, or nullopt.
std::optional<SensitivityViolation> scan_sensitivity_bounds(count_t n_max, Exec exec);

// Exhaustive check of P[a_i(n) != a_i(d)] <= (2 theta + theta^2)/(d - i + theta)
// over theta in {0.5, 1, 2}, all 1 <= i <= d < n <= n_max. Returns the
// largest ratio exact/bound observed (<= 1 when the inequality holds).
double max_discrepancy_ratio(count_t n_max, Exec exec);

}  // namespace ewens
