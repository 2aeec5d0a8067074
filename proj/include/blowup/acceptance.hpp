#pragma once

#include <string>
#include <vector>

// The verification suite behind `blowuplab verify` and the acceptance test
// binary: one entry per criterion, each with its pinned tolerance.

namespace blowup::acceptance {

struct CriterionResult {
    int id = 0;
    std::string name;
    bool passed = false;
    std::string detail;
    double seconds = 0.0;
};

enum class Level { fast, full };

// Runs the criteria (fast skips the nonlinear-evolution regressions) in order.
std::vector<CriterionResult> run(Level level);

// Pretty pass/fail table; returns true iff all passed.
bool print_table(const std::vector<CriterionResult>& results);

}  // namespace blowup::acceptance
