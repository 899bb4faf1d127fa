#pragma once

#include <string>
#include <vector>

namespace sliding {

struct CheckResult {
    std::string name;
    bool pass = false;
    std::string detail;
};

// Runs the library's invariant suite (prox solvers, schedules, both
// algorithms' rate bounds, smoothing, problem generators). Each entry is
// independent; failures carry a short diagnostic.
std::vector<CheckResult> run_all_checks();

} // namespace sliding
