#include "oeb/schedule.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "oeb/errors.hpp"
#include "oeb/prng.hpp"
#include "oeb/summation.hpp"

namespace oeb {

const char* to_string(FormulaKind k) {
    switch (k) {
        case FormulaKind::Constant: return "constant";
        case FormulaKind::RationalOfN: return "rational";
        case FormulaKind::RandomUniform: return "random-uniform";
        case FormulaKind::DerivedFromSchedule: return "derived";
        case FormulaKind::Custom: return "custom";
    }
    return "?";
}

const char* to_string(SeriesClass c) {
    switch (c) {
        case SeriesClass::Divergent: return "divergent";
        case SeriesClass::Convergent: return "convergent";
        case SeriesClass::Unknown: return "unknown";
    }
    return "?";
}

Schedule Schedule::constant(double value, SeriesClass cls, std::string id) {
    Schedule s;
    s.id_ = id.empty() ? "const" : std::move(id);
    s.kind_ = FormulaKind::Constant;
    s.class_ = cls;
    s.params_ = {{"value", value}};
    s.term_ = [value](std::int64_t) { return value; };
    return s;
}

Schedule Schedule::rational(std::vector<double> num, std::vector<double> den,
                            SeriesClass cls, std::string id) {
    Schedule s;
    s.id_ = id.empty() ? "rational" : std::move(id);
    s.kind_ = FormulaKind::RationalOfN;
    s.class_ = cls;
    for (std::size_t i = 0; i < num.size(); ++i)
        s.params_.emplace_back("num" + std::to_string(i), num[i]);
    for (std::size_t i = 0; i < den.size(); ++i)
        s.params_.emplace_back("den" + std::to_string(i), den[i]);
    s.term_ = [num = std::move(num), den = std::move(den)](std::int64_t n) {
        const double x = static_cast<double>(n);
        auto horner = [x](const std::vector<double>& c) {
            double v = 0.0;
            for (auto it = c.rbegin(); it != c.rend(); ++it) v = v * x + *it;
            return v;
        };
        return horner(num) / horner(den);
    };
    return s;
}

Schedule Schedule::random_uniform(std::uint64_t seed, std::string id) {
    Schedule s;
    s.id_ = std::move(id);
    s.kind_ = FormulaKind::RandomUniform;
    s.class_ = SeriesClass::Divergent;
    s.seed_ = seed;
    s.term_ = [seed](std::int64_t n) {
        return uniform01_at(seed, static_cast<std::uint64_t>(n));
    };
    return s;
}

Schedule Schedule::custom(std::string id, Term term, SeriesClass cls,
                          std::vector<Param> params) {
    Schedule s;
    s.id_ = std::move(id);
    s.kind_ = FormulaKind::Custom;
    s.class_ = cls;
    s.params_ = std::move(params);
    s.term_ = std::move(term);
    return s;
}

double Schedule::eval(std::int64_t n) const {
    if (n < 0) raise(Errc::PreconditionViolated, "schedule index must be >= 0", n);
    const double v = term_(n);
    if (!(v >= 0.0 && v <= 1.0))
        raise(Errc::FormulaOutOfRange,
              "schedule '" + id_ + "' produced " + std::to_string(v) + " at n=" +
                  std::to_string(n),
              n);
    return v;
}

double partial_sum(const Schedule& s, std::int64_t N) {
    if (N < 0) raise(Errc::PreconditionViolated, "horizon must be >= 0", N);
    KahanSum acc;
    for (std::int64_t k = 0; k < N; ++k) acc.add(s.eval(k));
    return acc.value();
}

SeriesReport classify_empirical(const Schedule& s, std::int64_t N) {
    if (N < 16) raise(Errc::PreconditionViolated, "classification horizon must be >= 16", N);
    SeriesReport rep;
    rep.schedule_id = s.id();
    rep.horizon = N;
    rep.declared_class = s.series_class();

    // Dyadic checkpoints 16, 32, ... <= N, accumulated in one pass.
    KahanSum acc;
    std::vector<double> logn, logs;
    std::int64_t next = 16;
    bool any_nonzero = false;
    for (std::int64_t k = 0; k < N; ++k) {
        const double t = s.eval(k);
        if (t != 0.0) any_nonzero = true;
        acc.add(t);
        if (k + 1 == next) {
            if (acc.value() > 0.0) {
                logn.push_back(std::log(static_cast<double>(next)));
                logs.push_back(std::log(acc.value()));
            }
            next *= 2;
        }
    }
    rep.partial_sum = acc.value();
    if (!any_nonzero || logn.size() < 2) {
        rep.degenerate = true;
        rep.growth_exponent_estimate = 0.0;
        return rep;
    }
    // Least-squares slope of log S vs log N.
    const double m = static_cast<double>(logn.size());
    double sx = 0, sy = 0, sxx = 0, sxy = 0;
    for (std::size_t i = 0; i < logn.size(); ++i) {
        sx += logn[i];
        sy += logs[i];
        sxx += logn[i] * logn[i];
        sxy += logn[i] * logs[i];
    }
    rep.growth_exponent_estimate = (m * sxy - sx * sy) / (m * sxx - sx * sx);
    return rep;
}

Schedule derived_comparison_schedule(const Schedule& b, double alpha1, double alpha2,
                                     std::uint64_t seed) {
    if (!(alpha1 >= 0.0 && alpha1 < 1.0 && alpha2 >= 0.0 && alpha2 <= 1.0))
        raise(Errc::BadAlpha, "derived schedule needs alpha1 in [0,1), alpha2 in [0,1]");
    Schedule s;
    s.id_ = b.id() + "-derived-a";
    s.kind_ = FormulaKind::DerivedFromSchedule;
    s.class_ = SeriesClass::Divergent;
    s.seed_ = seed;
    s.params_ = {{"alpha1", alpha1}, {"alpha2", alpha2}};
    s.term_ = [b, alpha1, alpha2, seed](std::int64_t n) {
        const double bn = b.eval(n);
        const double offset = (1.0 + alpha2) * bn / ((1.0 - alpha1) * (1.0 + alpha2 * bn));
        if (offset > 1.0)
            raise(Errc::ConditionUnsatisfiable,
                  "b_n=" + std::to_string(bn) + " exceeds (1-a1)/(1+a1*a2) at n=" +
                      std::to_string(n),
                  n);
        return std::min(1.0, uniform01_at(seed, static_cast<std::uint64_t>(n)) + offset);
    };
    return s;
}

namespace {

// Named sequences from the experiment protocols. Display strings keep the
// source notation with n starting at 0.
struct CatalogDef {
    const char* key;
    const char* formula;
    SeriesClass cls;
    Schedule (*make)(std::uint64_t seed);
};

double dcb(std::int64_t n) { return static_cast<double>(n); }

Schedule mk_custom(const char* key, double (*f)(std::int64_t), SeriesClass cls) {
    return Schedule::custom(key, f, cls);
}

const CatalogDef kCatalog[] = {
    {"zero", "0", SeriesClass::Convergent,
     [](std::uint64_t) { return Schedule::constant(0.0, SeriesClass::Convergent, "zero"); }},
    {"one", "1", SeriesClass::Divergent,
     [](std::uint64_t) { return Schedule::constant(1.0, SeriesClass::Divergent, "one"); }},
    {"rand", "rand([0,1])", SeriesClass::Divergent,
     [](std::uint64_t seed) { return Schedule::random_uniform(seed, "rand"); }},

    {"eqbn-test1", "rand([0,1])", SeriesClass::Divergent,
     [](std::uint64_t seed) { return Schedule::random_uniform(seed, "eqbn-test1"); }},
    {"eqbn-test2", "(sqrt(n+1)+sin(n+1))/(2 sqrt(n+1)+3)", SeriesClass::Divergent,
     [](std::uint64_t) {
         return mk_custom("eqbn-test2",
                          [](std::int64_t n) {
                              const double r = std::sqrt(dcb(n) + 1.0);
                              return (r + std::sin(dcb(n) + 1.0)) / (2.0 * r + 3.0);
                          },
                          SeriesClass::Divergent);
     }},
    {"eqbn-test3", "(n+2)/(3(n+1)^(4/3)+4)", SeriesClass::Divergent,
     [](std::uint64_t) {
         return mk_custom("eqbn-test3",
                          [](std::int64_t n) {
                              const double m = dcb(n) + 1.0;
                              return (dcb(n) + 2.0) / (3.0 * m * std::cbrt(m) + 4.0);
                          },
                          SeriesClass::Divergent);
     }},
    {"eqbn-test4", "(2n+3)/(3(n+1)^3+1)", SeriesClass::Convergent,
     [](std::uint64_t) {
         return Schedule::rational({3.0, 2.0}, {4.0, 9.0, 9.0, 3.0},
                                   SeriesClass::Convergent, "eqbn-test4");
     }},

    {"fig1b-b1", "(2(n+1)^2+1)/(3(n+1)^(5/2)+4)", SeriesClass::Divergent,
     [](std::uint64_t) {
         return mk_custom("fig1b-b1",
                          [](std::int64_t n) {
                              const double m = dcb(n) + 1.0;
                              return (2.0 * m * m + 1.0) / (3.0 * m * m * std::sqrt(m) + 4.0);
                          },
                          SeriesClass::Divergent);
     }},
    {"fig1b-b2", "(n+4)/(4(n+1)^3+5)", SeriesClass::Convergent,
     [](std::uint64_t) {
         return Schedule::rational({4.0, 1.0}, {9.0, 12.0, 12.0, 4.0},
                                   SeriesClass::Convergent, "fig1b-b2");
     }},
    {"fig1b-a2", "sin^2(n+1)/sqrt((n+1)^2+10)", SeriesClass::Divergent,
     [](std::uint64_t) {
         return mk_custom("fig1b-a2",
                          [](std::int64_t n) {
                              const double m = dcb(n) + 1.0;
                              const double s = std::sin(m);
                              return s * s / std::sqrt(m * m + 10.0);
                          },
                          SeriesClass::Divergent);
     }},
    {"fig1b-a3", "(2 exp(-1/n+1)+1)/(4(n+1)^3 |sin(n+1)| + 2 exp(-1/n+1))",
     SeriesClass::Convergent,
     [](std::uint64_t) {
         return mk_custom("fig1b-a3",
                          [](std::int64_t n) {
                              const double m = dcb(n) + 1.0;
                              // exp(-1/n+1) -> exp(-inf) = 0 at n = 0 in IEEE arithmetic
                              const double e = std::exp(-1.0 / dcb(n) + 1.0);
                              return (2.0 * e + 1.0) /
                                     (4.0 * m * m * m * std::fabs(std::sin(m)) + 2.0 * e);
                          },
                          SeriesClass::Convergent);
     }},

    {"anbn-test1-a", "1/(n+1)", SeriesClass::Divergent,
     [](std::uint64_t) {
         return Schedule::rational({1.0}, {1.0, 1.0}, SeriesClass::Divergent, "anbn-test1-a");
     }},
    {"anbn-test1-b", "rand([0,1])", SeriesClass::Divergent,
     [](std::uint64_t seed) { return Schedule::random_uniform(seed, "anbn-test1-b"); }},
    {"anbn-test2-a", "1/(n+1)^(2/3)", SeriesClass::Divergent,
     [](std::uint64_t) {
         return mk_custom("anbn-test2-a",
                          [](std::int64_t n) { return std::pow(dcb(n) + 1.0, -2.0 / 3.0); },
                          SeriesClass::Divergent);
     }},
    {"anbn-test2-b", "1/(n+1)^(3/4)", SeriesClass::Divergent,
     [](std::uint64_t) {
         return mk_custom("anbn-test2-b",
                          [](std::int64_t n) { return std::pow(dcb(n) + 1.0, -0.75); },
                          SeriesClass::Divergent);
     }},
    {"anbn-test3-a", "1/(n+1)", SeriesClass::Divergent,
     [](std::uint64_t) {
         return Schedule::rational({1.0}, {1.0, 1.0}, SeriesClass::Divergent, "anbn-test3-a");
     }},
    {"anbn-test3-b", "rand([0,1])/(n+1)", SeriesClass::Divergent,
     [](std::uint64_t seed) {
         return Schedule::custom(
             "anbn-test3-b",
             [seed](std::int64_t n) {
                 return uniform01_at(seed, static_cast<std::uint64_t>(n)) / (dcb(n) + 1.0);
             },
             SeriesClass::Divergent, {{"seed", static_cast<double>(seed)}});
     }},
    {"anbn-test4-a", "1/sqrt(n+1)", SeriesClass::Divergent,
     [](std::uint64_t) {
         return mk_custom("anbn-test4-a",
                          [](std::int64_t n) { return 1.0 / std::sqrt(dcb(n) + 1.0); },
                          SeriesClass::Divergent);
     }},
    {"anbn-test4-b", "1/(n+1)^2", SeriesClass::Convergent,
     [](std::uint64_t) {
         return Schedule::rational({1.0}, {1.0, 2.0, 1.0}, SeriesClass::Convergent,
                                   "anbn-test4-b");
     }},

    {"na-a", "(n+3)/(2n+3)", SeriesClass::Divergent,
     [](std::uint64_t) {
         return Schedule::rational({3.0, 1.0}, {3.0, 2.0}, SeriesClass::Divergent, "na-a");
     }},
    {"na-b", "1/5", SeriesClass::Divergent,
     [](std::uint64_t) { return Schedule::constant(0.2, SeriesClass::Divergent, "na-b"); }},
    {"nb-a", "(2(n+1)^2+cos(n+1))/(3(n+1)^2+2)", SeriesClass::Divergent,
     [](std::uint64_t) {
         return mk_custom("nb-a",
                          [](std::int64_t n) {
                              const double m = dcb(n) + 1.0;
                              return (2.0 * m * m + std::cos(m)) / (3.0 * m * m + 2.0);
                          },
                          SeriesClass::Divergent);
     }},
    {"nb-b", "(2(n+1)^2+1)/(4(n+1)^3+sin(n+1))", SeriesClass::Divergent,
     [](std::uint64_t) {
         return mk_custom("nb-b",
                          [](std::int64_t n) {
                              const double m = dcb(n) + 1.0;
                              return (2.0 * m * m + 1.0) / (4.0 * m * m * m + std::sin(m));
                          },
                          SeriesClass::Divergent);
     }},
    {"na2-a", "sqrt(2(n+1)^2+1)/(4(n+1)^2+3)", SeriesClass::Divergent,
     [](std::uint64_t) {
         return mk_custom("na2-a",
                          [](std::int64_t n) {
                              const double m = dcb(n) + 1.0;
                              return std::sqrt(2.0 * m * m + 1.0) / (4.0 * m * m + 3.0);
                          },
                          SeriesClass::Divergent);
     }},
    {"na2-b", "1/sqrt(2n+3)", SeriesClass::Divergent,
     [](std::uint64_t) {
         return mk_custom("na2-b",
                          [](std::int64_t n) { return 1.0 / std::sqrt(2.0 * dcb(n) + 3.0); },
                          SeriesClass::Divergent);
     }},

    {"im-test1-a", "((n+1)^2+1)/(3(n+1)^2+5)", SeriesClass::Divergent,
     [](std::uint64_t) {
         return Schedule::rational({2.0, 2.0, 1.0}, {8.0, 6.0, 3.0}, SeriesClass::Divergent,
                                   "im-test1-a");
     }},
    {"im-test1-b", "((n+1)^3+1)/(4(n+1)^3-1)", SeriesClass::Divergent,
     [](std::uint64_t) {
         return Schedule::rational({2.0, 3.0, 3.0, 1.0}, {3.0, 12.0, 12.0, 4.0},
                                   SeriesClass::Divergent, "im-test1-b");
     }},
    {"im-test2-a", "1/(2n+5)", SeriesClass::Divergent,
     [](std::uint64_t) {
         return Schedule::rational({1.0}, {5.0, 2.0}, SeriesClass::Divergent, "im-test2-a");
     }},
    {"im-test2-b", "sin^4(n)/((n+1)^2+5)", SeriesClass::Convergent,
     [](std::uint64_t) {
         return mk_custom("im-test2-b",
                          [](std::int64_t n) {
                              const double s = std::sin(dcb(n));
                              const double m = dcb(n) + 1.0;
                              return s * s * s * s / (m * m + 5.0);
                          },
                          SeriesClass::Convergent);
     }},
    {"im-test3-a", "|sin(n+1)|/((n+1)^(4/3)+2)", SeriesClass::Convergent,
     [](std::uint64_t) {
         return mk_custom("im-test3-a",
                          [](std::int64_t n) {
                              const double m = dcb(n) + 1.0;
                              return std::fabs(std::sin(m)) / (m * std::cbrt(m) + 2.0);
                          },
                          SeriesClass::Convergent);
     }},
    {"im-test3-b", "(n+2)/(3(n+1)^2+4)", SeriesClass::Divergent,
     [](std::uint64_t) {
         return Schedule::rational({2.0, 1.0}, {7.0, 6.0, 3.0}, SeriesClass::Divergent,
                                   "im-test3-b");
     }},
    {"im-test4-a", "1/(2(n+1)^(3/2)+5)", SeriesClass::Convergent,
     [](std::uint64_t) {
         return mk_custom("im-test4-a",
                          [](std::int64_t n) {
                              const double m = dcb(n) + 1.0;
                              return 1.0 / (2.0 * m * std::sqrt(m) + 5.0);
                          },
                          SeriesClass::Convergent);
     }},
    {"im-test4-b", "1/((n+1)^2+1)", SeriesClass::Convergent,
     [](std::uint64_t) {
         return Schedule::rational({1.0}, {2.0, 2.0, 1.0}, SeriesClass::Convergent,
                                   "im-test4-b");
     }},

    {"cmp-test1-a", "(2n+1)/(2n+3)^2", SeriesClass::Divergent,
     [](std::uint64_t) {
         return Schedule::rational({1.0, 2.0}, {9.0, 12.0, 4.0}, SeriesClass::Divergent,
                                   "cmp-test1-a");
     }},
    {"cmp-test1-b", "(n+2)/(5n+9)", SeriesClass::Divergent,
     [](std::uint64_t) {
         return Schedule::rational({2.0, 1.0}, {9.0, 5.0}, SeriesClass::Divergent,
                                   "cmp-test1-b");
     }},
    {"cmp-test2-a", "sqrt(2(n+1)^2+1)/(4(n+1)^3+5)", SeriesClass::Convergent,
     [](std::uint64_t) {
         return mk_custom("cmp-test2-a",
                          [](std::int64_t n) {
                              const double m = dcb(n) + 1.0;
                              return std::sqrt(2.0 * m * m + 1.0) / (4.0 * m * m * m + 5.0);
                          },
                          SeriesClass::Convergent);
     }},
    {"cmp-test2-b", "|sin(n+1)|/sqrt(6n+5)", SeriesClass::Divergent,
     [](std::uint64_t) {
         return mk_custom("cmp-test2-b",
                          [](std::int64_t n) {
                              return std::fabs(std::sin(dcb(n) + 1.0)) /
                                     std::sqrt(6.0 * dcb(n) + 5.0);
                          },
                          SeriesClass::Divergent);
     }},
    // Comparison tests 3/4 pair the b-sequences above with the derived a_n
    // at alpha1 = 1/2, alpha2 = 1/5.
    {"cmp-test3-a", "min{1, rand + (1+a2) b_n/((1-a1)(1+a2 b_n))}, b = cmp-test1-b",
     SeriesClass::Divergent,
     [](std::uint64_t seed) {
         Schedule s = derived_comparison_schedule(catalog_schedule("cmp-test1-b"), 0.5, 0.2, seed);
         return s;
     }},
    {"cmp-test4-a", "min{1, rand + (1+a2) b_n/((1-a1)(1+a2 b_n))}, b = cmp-test2-b",
     SeriesClass::Divergent,
     [](std::uint64_t seed) {
         Schedule s = derived_comparison_schedule(catalog_schedule("cmp-test2-b"), 0.5, 0.2, seed);
         return s;
     }},
};

} // namespace

Schedule catalog_schedule(std::string_view key, std::uint64_t seed) {
    for (const auto& def : kCatalog)
        if (key == def.key) return def.make(seed);
    raise(Errc::UnknownSchedule, std::string(key));
}

Schedule catalog_schedule(std::string_view key) { return catalog_schedule(key, kDefaultSeed); }

const std::vector<CatalogEntry>& schedule_catalog() {
    static const std::vector<CatalogEntry> index = [] {
        std::vector<CatalogEntry> v;
        for (const auto& def : kCatalog) v.push_back({def.key, def.formula, def.cls});
        return v;
    }();
    return index;
}

} // namespace oeb
