#pragma once

#include <string>
#include <vector>

namespace rsz::verify {

struct CheckResult {
    std::string name;
    bool pass = false;
    std::string detail;  // bound achieved, counterexample, ...
};

using Report = std::vector<CheckResult>;

// Desk-scale invariant suites shared by the command-line harness and the
// test binaries.  Each check is self-contained and deterministic.
Report space_suite();      // live/peak word bounds for tiered and baselines
Report amortized_suite();  // assignment-count budgets
Report oracle_suite();     // game closed forms vs exhaustive search
Report access_suite();     // locate and content vs shadow oracles

Report run_suite(const std::string& name);  // throws std::invalid_argument
std::vector<std::string> suite_names();

bool all_passed(const Report& report);

}  // namespace rsz::verify
