#pragma once

#include <cstdint>
#include <functional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace oeb {

enum class FormulaKind { Constant, RationalOfN, RandomUniform, DerivedFromSchedule, Custom };
enum class SeriesClass { Divergent, Convergent, Unknown };

const char* to_string(FormulaKind k);
const char* to_string(SeriesClass c);

// A parameter sequence (a_n) or (b_n) with every term in [0,1].
//
// Schedules are immutable value objects; eval(n) is pure and deterministic
// (random schedules use a counter-based generator keyed by `seed`), so a
// Schedule may be shared and evaluated concurrently in any index order.
//
// Whether the series sum of a schedule diverges is declared by the analyst
// via `series_class`, never decided numerically: the convergence criteria
// downstream consume the declaration only.
class Schedule {
  public:
    using Term = std::function<double(std::int64_t)>;
    using Param = std::pair<std::string, double>;

    static Schedule constant(double value, SeriesClass cls, std::string id = "");
    // term n = num(n)/den(n) with polynomial coefficients in ascending powers.
    static Schedule rational(std::vector<double> num, std::vector<double> den,
                             SeriesClass cls, std::string id = "");
    static Schedule random_uniform(std::uint64_t seed, std::string id = "rand");
    static Schedule custom(std::string id, Term term, SeriesClass cls,
                           std::vector<Param> params = {});

    // Evaluates term n. Throws FormulaOutOfRange if the formula lands
    // outside [0,1] (a bad catalog entry or bad user coefficients).
    double eval(std::int64_t n) const;

    const std::string& id() const { return id_; }
    FormulaKind kind() const { return kind_; }
    SeriesClass series_class() const { return class_; }
    std::uint64_t seed() const { return seed_; }
    const std::vector<Param>& params() const { return params_; }

  private:
    Schedule() = default;
    friend Schedule derived_comparison_schedule(const Schedule&, double, double, std::uint64_t);

    std::string id_;
    FormulaKind kind_ = FormulaKind::Custom;
    SeriesClass class_ = SeriesClass::Unknown;
    std::uint64_t seed_ = 0;
    std::vector<Param> params_;
    Term term_;
};

// Diagnostic companion to the declared classification.
struct SeriesReport {
    std::string schedule_id;
    std::int64_t horizon = 0;
    double partial_sum = 0.0;
    // Least-squares slope of log(partial_sum) vs log(N) over dyadic
    // checkpoints; ~1 for divergent-linear growth, ~0 for convergent series.
    double growth_exponent_estimate = 0.0;
    SeriesClass declared_class = SeriesClass::Unknown;
    bool degenerate = false; // all terms zero; exponent reported as 0
};

// Compensated sum of the first N terms; partial_sum(s, 0) == 0.
double partial_sum(const Schedule& s, std::int64_t N);

// Requires N >= 16. All-zero schedules yield a degenerate report.
SeriesReport classify_empirical(const Schedule& s, std::int64_t N);

// a_n = min{1, rand([0,1]) + (1+alpha2) b_n / ((1-alpha1)(1+alpha2 b_n))}.
// The resulting schedule makes the cross-scheme comparison condition hold
// termwise whenever b_n <= (1-alpha1)/(1+alpha1*alpha2); evaluation throws
// ConditionUnsatisfiable (with the term index) at the first n violating that
// cap, since then even a_n = 1 is not enough.
Schedule derived_comparison_schedule(const Schedule& b, double alpha1, double alpha2,
                                     std::uint64_t seed);

struct CatalogEntry {
    std::string key;
    std::string formula;     // display form
    SeriesClass series_class;
};

// Frozen catalog of the named sequences used by the experiment recipes.
// Throws UnknownSchedule for anything else.
Schedule catalog_schedule(std::string_view key);
// Same, overriding the stream seed of random-based entries.
Schedule catalog_schedule(std::string_view key, std::uint64_t seed);
const std::vector<CatalogEntry>& schedule_catalog();

} // namespace oeb
