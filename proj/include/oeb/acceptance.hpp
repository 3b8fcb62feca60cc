#pragma once

#include <ostream>
#include <string>
#include <vector>

namespace oeb::accept {

// fast: every criterion at its stated horizon (all are desk-scale).
// full: additionally runs the extended property scans (schedule range over
// n <= 1e6, nonexpansiveness with 1e5 sample pairs).
enum class Level { Fast, Full };

struct CriterionResult {
    int id = 0;
    std::string name;
    bool pass = false;
    std::string detail; // measured numbers; failure reasons
    double millis = 0.0;
};

std::vector<CriterionResult> run_all(Level level);

// One line per criterion, PASS/FAIL; returns the number of failures.
int print_report(std::ostream& os, const std::vector<CriterionResult>& results);

} // namespace oeb::accept
