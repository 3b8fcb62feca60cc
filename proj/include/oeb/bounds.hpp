#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <vector>

#include "oeb/iteration.hpp"
#include "oeb/schedule.hpp"

namespace oeb {

// Factor products bounding the normalized error from above (U) and below (L):
//   L_n ||x0 - x*|| <= ||x_{n+1} - x*|| <= U_n ||x0 - x*||.
// Products are carried in linear space and in natural-log space; the linear
// track may underflow at long horizons, the log track never does.
struct BoundsTrace {
    SchemeId scheme = SchemeId::Ishikawa;

    std::vector<double> u;         // U_0 .. U_N (empty for lower-only traces)
    std::vector<double> log_u;
    std::vector<double> u_factors;

    // Lower bounds. The published L_n requires every factor positive; the
    // signed product is retained for the optimality tests where reflected
    // maps track it exactly.
    bool lower_defined = false;
    std::int64_t first_lower_violation = -1;
    int violating_factor = 0;      // modified scheme: 1 = a-factor, 2 = b-factor
    std::vector<double> l;         // signed products
    std::vector<double> log_abs_l;
    std::vector<int> sign_l;
    std::vector<double> l_factors;

    std::vector<double> a_aux;     // A_k = 1 + alpha2 (1 - a_k + alpha1 a_k)
};

// U_n = prod_{k<=n} (1 - b_k + alpha2 b_k (1 - a_k + alpha1 a_k)).
BoundsTrace oueb_ishikawa(const Schedule& a, const Schedule& b, double alpha1, double alpha2,
                          std::int64_t N);

// L_n = prod_{k<=n} (1 - b_k - alpha2 b_k (1 - a_k + alpha1 a_k)); requires
// every factor positive, else throws LowerUndefined with the first bad k.
BoundsTrace oleb_ishikawa(const Schedule& a, const Schedule& b, double alpha1, double alpha2,
                          std::int64_t N);
// Same factors, but negative ones are tolerated and the signed product is
// reported (lower_defined turns false at the first violation).
BoundsTrace oleb_ishikawa_signed(const Schedule& a, const Schedule& b, double alpha1,
                                 double alpha2, std::int64_t N);

// U_n = prod_{k<=n} (1 - a_k + alpha1 a_k)(1 - b_k + alpha2 b_k).
BoundsTrace oueb_modified(const Schedule& a, const Schedule& b, double alpha1, double alpha2,
                          std::int64_t N);

// L_n = prod_{k<=n} (1 - a_k - alpha1 a_k)(1 - b_k - alpha2 b_k).
BoundsTrace oleb_modified(const Schedule& a, const Schedule& b, double alpha1, double alpha2,
                          std::int64_t N);
BoundsTrace oleb_modified_signed(const Schedule& a, const Schedule& b, double alpha1,
                                 double alpha2, std::int64_t N);

enum class TriState { Yes, No, Unknown };
const char* to_string(TriState t);

// Whether the bound sequences tend to zero, decided from declared series
// classes and the alpha values alone -- never from finite numerics.
struct ConvergencePrediction {
    SchemeId scheme = SchemeId::Ishikawa;
    TriState upper_to_zero = TriState::Unknown;
    TriState lower_to_zero = TriState::Unknown;
    std::string rationale;      // which criterion branch decided
    bool chi_alpha2_eq_1 = false;
};

// class_a, class_b, class_ab, class_a_plus_b declare sum a_k, sum b_k,
// sum a_k b_k and sum (a_k + b_k) respectively.
ConvergencePrediction predict_convergence(SchemeId scheme, double alpha1, double alpha2,
                                          SeriesClass class_a, SeriesClass class_b,
                                          SeriesClass class_ab, SeriesClass class_a_plus_b);

// Both sides of the proofs' logarithmic sandwiches at horizon N, natural log.
// Contract: u_lo <= log_u <= u_hi (when u_lo is defined; it is not for
// alpha1*alpha2 = 0 on the Ishikawa side), and l_lo <= log_l <= l_hi when
// the lower bound exists (its positivity condition may fail, leaving the
// l side empty).
struct LogSandwich {
    std::optional<double> u_lo, u_hi;
    double log_u = 0.0;
    std::optional<double> l_lo, l_hi, log_l;
};

LogSandwich log_sandwich(SchemeId scheme, const Schedule& a, const Schedule& b, double alpha1,
                         double alpha2, std::int64_t N);

// Series-equivalence witness: a_k/(1 - a_k u_k) termwise dominates a_k for
// u_k >= 0, and the term ratio tends to 1 where a_k -> 0.
struct SeriesEquivWitness {
    bool termwise_lower_ok = false;
    double ratio_tail = 0.0; // max |a_k/(1-a_k u_k)/a_k - 1| over the last N/4 indices
};

SeriesEquivWitness series_equiv_witness(const Schedule& a,
                                        const std::function<double(std::int64_t)>& u,
                                        double u_max, std::int64_t N);

} // namespace oeb
