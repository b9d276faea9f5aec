#pragma once

#include <cstdint>
#include <string>
#include <vector>

namespace geodiv {

struct SuiteResult {
    std::string name;
    bool passed = true;
    int checks = 0;
    double worst_ratio = 0.0;  // max over checks of |error| / tolerance
    std::string detail;        // failing checks with replayable inputs
};

struct SelftestOptions {
    std::uint64_t seed = 20250810;
    int trials = -1;  // per-suite random case count; negative selects the defaults
};

/// Runs the oracle-equivalence and duality suites:
///   1 simplex-identity        canonical/dual vs closed-form KL   (1e-8)
///   2 quantum-identity        canonical/dual vs relative entropy (1e-7)
///   3 commuting-reduction     diagonal pairs vs classical        (1e-9)
///   4 eguchi-recovery         mixed differences vs Fisher chart  (1e-5)
///   5 classical-complexity    IPF projections and Pythagoras
///   6 quantum-complexity      Gibbs round trips and monotonicity
///   7 numerics-substrate      dlog derivative, Bogoliubov quadrature
/// With trials = 0 every suite runs zero cases and passes vacuously.
std::vector<SuiteResult> run_selftest_suites(const SelftestOptions& options = {});

bool all_passed(const std::vector<SuiteResult>& results);

}  // namespace geodiv
