#pragma once

#include <functional>
#include <ostream>
#include <string>
#include <vector>

namespace mge::verify {

struct CheckResult {
    bool passed = false;
    std::string detail;
};

struct Check {
    std::string id;    // "A1".."A13" acceptance, "I1".. module invariants
    std::string name;
    double time_limit_s = 0.0;  // 0 = no wall-clock limit
    std::function<CheckResult()> run;
};

/// The thirteen acceptance criteria, in order.
const std::vector<Check>& acceptance_checks();

/// Module-level invariants that are not themselves acceptance criteria.
const std::vector<Check>& invariant_checks();

struct Outcome {
    std::string id;
    std::string name;
    bool passed = false;
    double seconds = 0.0;
    std::string detail;
};

/// Runs a check, applies its wall-clock limit and catches exceptions.
Outcome execute(const Check& check);

/// Runs every check, printing one "PASS|FAIL id name (time) detail" line
/// per check. Returns true when all passed.
bool run_all(const std::vector<Check>& checks, std::ostream& out);

/// Storage-rate sign report for the MGE-family estimators of every builtin
/// scenario. Informational: the count is printed, never asserted.
void report_storage_sign(std::ostream& out);

}  // namespace mge::verify
