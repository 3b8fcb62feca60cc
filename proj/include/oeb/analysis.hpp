#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "oeb/bounds.hpp"
#include "oeb/iteration.hpp"
#include "oeb/ratio.hpp"
#include "oeb/schedule.hpp"

namespace oeb {

// Empirical rate ratio sigma_n = -ln(Err_{n+1}) / denom_n together with the
// theoretical sandwich [beta_min, beta_max]. Natural log throughout; the CSV
// writer adds log10 columns for plot parity.
struct RateReport {
    SchemeId scheme = SchemeId::Ishikawa;
    std::vector<double> sigma;        // NaN marks entries with Err = 0 or denom = 0
    std::vector<double> denominator;  // running sum b_k, or (a_k + b_k) for the
                                      // modified scheme
    double beta_min = 0.0;

    // Guaranteed sandwich top. For the modified scheme this is the max of the
    // per-sequence branches (the value the proof supports); the min variant
    // appears separately for comparison. Branches with nonpositive
    // denominators are dropped; NaN + sandwich_available=false when none
    // survives (the hypothesis-unavailable outcome).
    double beta_max_guaranteed = 0.0;
    std::optional<double> beta_max_paper; // modified scheme only
    bool sandwich_available = false;

    double delta = 0.0;    // max_k b_k (Ishikawa)
    double epsilon = 0.0;  // min_k Ishikawa lower factor
    double epsilon1 = 0.0; // min_k (1 - a_k - alpha1 a_k)   (modified)
    double epsilon2 = 0.0; // min_k (1 - b_k - alpha2 b_k)   (modified)

    struct Hypotheses {
        bool cond_ra_1 = false;    // exists eps>0: b_k A_k <= 1 - eps termwise
        bool remark_delta = false; // b_k <= delta < 1/(1+alpha2)
        bool cond_ra_im = false;   // both modified-scheme epsilons positive
    } hypotheses;
};

RateReport rate_ishikawa(const IterationTrace& trace, const Schedule& a, const Schedule& b,
                         double alpha1, double alpha2);
RateReport rate_modified(const IterationTrace& trace, const Schedule& a, const Schedule& b,
                         double alpha1, double alpha2);

enum class ComparisonVerdict { FasterIM, PositiveLimit, Inconclusive };
const char* to_string(ComparisonVerdict v);

struct ComparisonReport {
    std::vector<double> ratio;  // R_n = R(x_n^IM, x_n^I, x*)
    bool cond_holds = false;    // termwise comparison condition + divergent sum b
    std::int64_t first_violation = -1;
    bool lower_hypothesis_ok = true; // Ishikawa lower-bound positivity over the horizon
    double last_quartile_variation = 0.0;
    ComparisonVerdict verdict = ComparisonVerdict::Inconclusive;
};

// Both traces must share x0 and horizon. FasterIM is claimed only when the
// termwise condition holds and sum b_k is declared divergent; PositiveLimit
// is the heuristic flat-tail verdict (last-quartile relative variation of
// R_n below 10%) for runs where both schemes converged.
ComparisonReport compare_schemes(const IterationTrace& trace_im, const IterationTrace& trace_i,
                                 const Schedule& a, const Schedule& b, double alpha1,
                                 double alpha2);

} // namespace oeb
