#pragma once

#include <optional>
#include <ostream>
#include <string>

#include "oeb/analysis.hpp"
#include "oeb/bounds.hpp"
#include "oeb/iteration.hpp"

namespace oeb {

// All CSV output uses 17-significant-digit scientific notation so doubles
// round-trip bit-exactly, '.' decimal separator, '\n' line endings and a
// mandatory header row.
std::string format_full(double v);
// Vector cell: components joined with ';' (single number in dimension 1).
std::string format_vector(const Eigen::VectorXd& v);

void write_trace_csv(std::ostream& os, const IterationTrace& trace);

// One file can carry an upper trace, a lower trace, or both. L_n entries are
// blank from the first factor violation on (the published bound stops being
// defined there); factors remain printed.
void write_bounds_csv(std::ostream& os, const BoundsTrace* upper, const BoundsTrace* lower);

void write_rate_csv(std::ostream& os, const RateReport& rate, const IterationTrace& trace);

void write_compare_csv(std::ostream& os, const IterationTrace& trace_i,
                       const IterationTrace& trace_im, const ComparisonReport& cmp);

void write_file(const std::string& path, const std::string& contents);

} // namespace oeb
