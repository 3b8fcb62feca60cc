#pragma once

#include <Eigen/Core>
#include <cstdint>
#include <string_view>
#include <utility>
#include <vector>

#include "oeb/mapping.hpp"
#include "oeb/schedule.hpp"

namespace oeb {

// Picard is Ishikawa with a == 0, b == 1 iterating T2 only; Mann is Ishikawa
// with a == 0. Both reductions are bitwise-testable against the dedicated
// code paths below.
enum class SchemeId { Picard, Mann, Ishikawa, ModifiedIshikawa };

const char* to_string(SchemeId s);
SchemeId scheme_from_string(std::string_view name);

enum class TraceStatus { Completed, ConvergedEarly, Stalled };

struct IterationTrace {
    SchemeId scheme = SchemeId::Ishikawa;
    Eigen::VectorXd x0;
    Eigen::VectorXd x_star;          // fixed point the errors are measured against
    Domain domain;                   // box / norm the run lived in
    std::vector<Eigen::VectorXd> x;  // x_0 .. x_N
    std::vector<Eigen::VectorXd> y;  // y_0 .. y_{N-1}; empty for Picard/Mann
    std::vector<double> err;         // Err_n, normalized piecewise ratio
    std::vector<double> log10_err;   // -inf sentinel allowed
    TraceStatus status = TraceStatus::Completed;
    bool started_at_fixed_point = false;

    std::int64_t steps() const { return static_cast<std::int64_t>(x.size()) - 1; }
};

// y = (1-a)x + a T1(x);  x_next = (1-b)x + b T2(y).
std::pair<Eigen::VectorXd, Eigen::VectorXd> step_ishikawa(const Eigen::VectorXd& x, double a,
                                                          double b, const MapPair& pair);

// y = (1-a)x + a T1(x);  x_next = (1-b)y + b T2(y).
std::pair<Eigen::VectorXd, Eigen::VectorXd> step_modified_ishikawa(const Eigen::VectorXd& x,
                                                                   double a, double b,
                                                                   const MapPair& pair);

// Runs N steps from x0, or fewer if ||x_n - x*|| < floor * ||x0 - x*||
// (status ConvergedEarly). floor = 0 runs the full horizon so that
// non-convergent plateaus stay observable.
//
// For affine-extremal pairs the log10 error column is continued by the exact
// per-step factor recurrence once the error drops below 1e-300; other pairs
// are marked Stalled at that point (in practice their iterates either stick
// a few ulp away from x* or reach it exactly, giving a -inf entry).
IterationTrace run(SchemeId scheme, const MapPair& pair, const Schedule& a, const Schedule& b,
                   const Eigen::VectorXd& x0, std::int64_t N, double floor = 0.0);

} // namespace oeb
