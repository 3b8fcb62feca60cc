#include "oeb/acceptance.hpp"

#include <chrono>
#include <cmath>
#include <iomanip>
#include <sstream>

#include "oeb/analysis.hpp"
#include "oeb/bounds.hpp"
#include "oeb/errors.hpp"
#include "oeb/prng.hpp"

namespace oeb::accept {

namespace {

Eigen::VectorXd vec1(double v) { return Eigen::VectorXd::Constant(1, v); }

void fail(CriterionResult& r, const std::string& msg) {
    r.pass = false;
    if (!r.detail.empty()) r.detail += "; ";
    r.detail += msg;
}

void note(CriterionResult& r, const std::string& msg) {
    if (!r.detail.empty()) r.detail += "; ";
    r.detail += msg;
}

std::string fmt(double v) {
    std::ostringstream os;
    os << std::setprecision(4) << std::scientific << v;
    return os.str();
}

double min_err(const IterationTrace& tr) {
    double m = tr.err[0];
    for (double e : tr.err) m = std::min(m, e);
    return m;
}

// ---- 1. Picard reproduces the geometric optimal upper bound exactly. ----
//
// The fixed point sits at the origin: iterates then carry the full double
// exponent range, which the 1e-300 guards of these criteria presuppose
// (near any nonzero x* the resolvable error floor is eps*|x*| instead).
void criterion_picard(CriterionResult& r) {
    r.pass = true;
    const std::uint64_t seed = 7001;
    Schedule zero = Schedule::constant(0.0, SeriesClass::Convergent, "zero");
    Schedule one = Schedule::constant(1.0, SeriesClass::Divergent, "one");
    for (int t = 0; t < 20; ++t) {
        const double alpha = 0.1 + 0.85 * uniform01_at(seed, 3 * t);
        const double sign = uniform01_at(seed, 3 * t + 1) < 0.5 ? -1.0 : 1.0;
        const double x0 = sign * (0.1 + uniform01_at(seed, 3 * t + 2));
        Domain box = Domain::symmetric_box(vec1(0.0), 1.25);
        MapPair pair = extremal_upper_pair(alpha, alpha, vec1(0.0), box);
        IterationTrace tr = run(SchemeId::Picard, pair, zero, one, vec1(x0), 200, 0.0);
        double expected = 1.0;
        for (std::size_t n = 0; n < tr.err.size(); ++n) {
            const double tol = 1e-12 * std::max(expected, 1e-300);
            if (std::fabs(tr.err[n] - expected) > tol) {
                fail(r, "triple " + std::to_string(t) + " deviates at n=" + std::to_string(n));
                break;
            }
            expected *= alpha;
        }
        if (!r.pass) return;
    }
    note(r, "20 random (alpha, x0) starts at the origin fixed point, n <= 200");
}

// ---- 2. Extremal maps attain the bounds exactly (all four families). ----
void criterion_extremal(CriterionResult& r) {
    r.pass = true;
    const std::uint64_t seed = 9001;
    Domain box = Domain::symmetric_box(vec1(0.0), 1.25);
    const Eigen::VectorXd xs = vec1(0.0);
    const Eigen::VectorXd x0 = vec1(1.0);
    const std::int64_t N = 200;

    auto check_upper = [&](const IterationTrace& tr, const BoundsTrace& bt,
                           const std::string& what) {
        for (std::int64_t n = 0; n + 1 <= tr.steps(); ++n) {
            const double u = bt.u[static_cast<std::size_t>(n)];
            if (std::fabs(tr.err[static_cast<std::size_t>(n) + 1] - u) >
                1e-9 * std::max(u, 1e-300)) {
                fail(r, what + " mismatch at n=" + std::to_string(n));
                return false;
            }
        }
        return true;
    };
    auto check_lower_signed = [&](const IterationTrace& tr, const BoundsTrace& bt,
                                  const std::string& what) {
        for (std::int64_t n = 0; n + 1 <= tr.steps(); ++n) {
            const double l = std::fabs(bt.l[static_cast<std::size_t>(n)]);
            if (std::fabs(tr.err[static_cast<std::size_t>(n) + 1] - l) >
                1e-9 * std::max(l, 1e-300)) {
                fail(r, what + " mismatch at n=" + std::to_string(n));
                return false;
            }
        }
        return true;
    };

    int accepted = 0;
    std::uint64_t trial = 0;
    while (accepted < 10 && trial < 200) {
        const std::uint64_t base = 8 * trial++;
        const double a1 = 0.25 + 0.7 * uniform01_at(seed, base);
        const double a2 = 0.25 + 0.7 * uniform01_at(seed, base + 1);
        Schedule a = Schedule::random_uniform(splitmix64_at(seed, base + 2), "a");
        Schedule b = Schedule::random_uniform(splitmix64_at(seed, base + 3), "b");

        // The lower-bound factors may legitimately cross zero; skip draws
        // with a near-zero factor, where no double computation can hold a
        // 1e-9 relative comparison.
        BoundsTrace li = oleb_ishikawa_signed(a, b, a1, a2, N - 1);
        BoundsTrace lm = oleb_modified_signed(a, b, a1, a2, N - 1);
        double min_f = 1.0;
        for (double f : li.l_factors) min_f = std::min(min_f, std::fabs(f));
        for (double f : lm.l_factors) min_f = std::min(min_f, std::fabs(f));
        if (min_f < 1e-3) continue;
        ++accepted;

        MapPair up = extremal_upper_pair(a1, a2, xs, box);
        if (!check_upper(run(SchemeId::Ishikawa, up, a, b, x0, N, 0.0),
                         oueb_ishikawa(a, b, a1, a2, N - 1), "ishikawa-upper"))
            return;
        if (!check_upper(run(SchemeId::ModifiedIshikawa, up, a, b, x0, N, 0.0),
                         oueb_modified(a, b, a1, a2, N - 1), "modified-upper"))
            return;
        MapPair low = extremal_lower_pair(a1, a2, xs, box);
        if (!check_lower_signed(run(SchemeId::Ishikawa, low, a, b, x0, N, 0.0), li,
                                "ishikawa-lower"))
            return;
        MapPair refl = extremal_reflected_pair(a1, a2, xs, box);
        if (!check_lower_signed(run(SchemeId::ModifiedIshikawa, refl, a, b, x0, N, 0.0), lm,
                                "modified-lower"))
            return;
    }
    if (accepted < 10) fail(r, "could not assemble 10 admissible schedule pairs");
    else note(r, "10 schedule pairs x 4 equality families, n <= 200");
}

// ---- 3. Bracketing on the experiment pair with the constant-b schedules. --
void criterion_bracketing(CriterionResult& r) {
    r.pass = true;
    MapPair pair = paper_pair(0.5, 0.2);
    Schedule a = catalog_schedule("na-a");
    Schedule b = catalog_schedule("na-b");
    IterationTrace tr = run(SchemeId::Ishikawa, pair, a, b, vec1(2.0), 1000, 0.0);
    BoundsTrace u = oueb_ishikawa(a, b, 0.5, 0.2, 999);
    BoundsTrace l = oleb_ishikawa(a, b, 0.5, 0.2, 999);
    for (std::size_t n = 0; n < 1000; ++n) {
        const double e = tr.err[n + 1];
        if (!(l.l[n] - 1e-12 <= e && e <= u.u[n] + 1e-12)) {
            fail(r, "bracket broken at n=" + std::to_string(n));
            return;
        }
    }
    note(r, "L_n - 1e-12 <= Err_{n+1} <= U_n + 1e-12 for n <= 1000");
}

// ---- 4. First experiment family: three divergent tests converge, the
//         convergent one stays above its lower-bound limit. ----
void criterion_family1(CriterionResult& r) {
    r.pass = true;
    MapPair pair = paper_pair(0.5, 0.2);
    Schedule a = catalog_schedule("rand"); // seed 42
    for (int t = 1; t <= 3; ++t) {
        Schedule b = catalog_schedule("eqbn-test" + std::to_string(t), kDefaultSeed + 1);
        IterationTrace tr = run(SchemeId::Ishikawa, pair, a, b, vec1(2.0), 500, 0.0);
        if (min_err(tr) > 1e-6)
            fail(r, "test " + std::to_string(t) + " min err " + fmt(min_err(tr)) + " > 1e-6");
    }
    Schedule b4 = catalog_schedule("eqbn-test4");
    BoundsTrace lb = oleb_ishikawa_signed(a, b4, 0.5, 0.2, 500);
    const double floor_val = lb.l.back();
    IterationTrace tr = run(SchemeId::Ishikawa, pair, a, b4, vec1(2.0), 500, 0.0);
    for (double e : tr.err)
        if (e < floor_val) {
            fail(r, "test 4 dipped below its lower-bound limit " + fmt(floor_val));
            break;
        }
    if (r.pass) note(r, "tests 1-3 reach 1e-6 within N=500; test 4 floor " + fmt(floor_val));
}

// ---- 5. Convergence verdicts do not depend on the a-sequence. ----
void criterion_family1_insensitivity(CriterionResult& r) {
    r.pass = true;
    MapPair pair = paper_pair(0.5, 0.2);
    const char* akeys[3] = {"rand", "fig1b-a2", "fig1b-a3"};
    for (int bi = 0; bi < 2; ++bi) {
        const bool expect_converged = bi == 0;
        Schedule b = catalog_schedule(bi == 0 ? "fig1b-b1" : "fig1b-b2", kDefaultSeed + 1);
        for (const char* akey : akeys) {
            Schedule a = catalog_schedule(akey);
            IterationTrace tr = run(SchemeId::Ishikawa, pair, a, b, vec1(2.0), 500, 0.0);
            const bool converged = min_err(tr) <= 1e-6;
            if (converged != expect_converged)
                fail(r, std::string("b") + std::to_string(bi + 1) + "/a=" + akey +
                            " verdict flipped (min err " + fmt(min_err(tr)) + ")");
        }
    }
    if (r.pass) note(r, "all three a-sequences agree on both b-sequences");
}

// ---- 6. alpha2 = 1 regime on the four (a_n, b_n) pairings. ----
void criterion_alpha2_one(CriterionResult& r) {
    r.pass = true;
    MapPair pair = paper_pair(0.5, 1.0);
    Schedule a1s = catalog_schedule("anbn-test1-a");
    Schedule b1s = catalog_schedule("anbn-test1-b", kDefaultSeed + 1);
    IterationTrace t1 = run(SchemeId::Ishikawa, pair, a1s, b1s, vec1(2.0), 500, 0.0);
    if (min_err(t1) > 1e-4)
        fail(r, "test 1 min err " + fmt(min_err(t1)) +
                    " > 1e-4 within N=500 (its upper bound alone is ~1.8e-1 there; the "
                    "log-slow divergence of sum a_k b_k cannot reach 1e-4 by n=500)");
    for (int t = 2; t <= 4; ++t) {
        Schedule a = catalog_schedule("anbn-test" + std::to_string(t) + "-a");
        Schedule b =
            catalog_schedule("anbn-test" + std::to_string(t) + "-b", kDefaultSeed + 1);
        BoundsTrace lb = oleb_ishikawa_signed(a, b, 0.5, 1.0, 500);
        const double floor_val = lb.l.back();
        IterationTrace tr = run(SchemeId::Ishikawa, pair, a, b, vec1(2.0), 500, 0.0);
        for (double e : tr.err)
            if (e < floor_val) {
                fail(r, "test " + std::to_string(t) + " dipped below " + fmt(floor_val));
                break;
            }
    }
    if (r.pass) note(r, "test 1 reached 1e-4; tests 2-4 held their signed floors");
}

// ---- 7. Modified-scheme series test cases at the long horizon. ----
void criterion_modified_family(CriterionResult& r, Level level) {
    r.pass = true;
    const std::int64_t N = 100000;
    MapPair pair = paper_pair(0.5, 0.2);
    for (int t = 1; t <= 3; ++t) {
        Schedule a = catalog_schedule("im-test" + std::to_string(t) + "-a");
        Schedule b = catalog_schedule("im-test" + std::to_string(t) + "-b", kDefaultSeed + 1);
        IterationTrace tr = run(SchemeId::ModifiedIshikawa, pair, a, b, vec1(2.0), N, 0.0);
        if (t == 1 && tr.err[20] > 1e-3)
            fail(r, "test 1 err(20) " + fmt(tr.err[20]) + " > 1e-3");
        if (min_err(tr) > 1e-6)
            fail(r, "test " + std::to_string(t) + " min err " + fmt(min_err(tr)) +
                        " > 1e-6 within N=1e5" +
                        (t >= 2 ? " (its series diverges logarithmically; the error "
                                  "plateaus near 1e-2 at this horizon)"
                                : ""));
    }
    Schedule a4 = catalog_schedule("im-test4-a");
    Schedule b4 = catalog_schedule("im-test4-b");
    BoundsTrace lb = oleb_modified_signed(a4, b4, 0.5, 0.2, N);
    const double floor_val = lb.l.back();
    IterationTrace tr = run(SchemeId::ModifiedIshikawa, pair, a4, b4, vec1(2.0), N, 0.0);
    for (double e : tr.err)
        if (e < floor_val) {
            fail(r, "test 4 dipped below its lower-bound limit " + fmt(floor_val));
            break;
        }
    if (r.pass) note(r, "tests 1-3 reached 1e-6; test 4 floor " + fmt(floor_val));
    (void)level;
}

// ---- 8. Rate sandwiches around the observed sigma_n. ----
void criterion_rate_sandwich(CriterionResult& r) {
    r.pass = true;
    struct Case {
        SchemeId scheme;
        const char* akey;
        const char* bkey;
        double beta_min_expected;
    };
    const Case cases[4] = {
        {SchemeId::Ishikawa, "na-a", "na-b", 0.8},
        {SchemeId::Ishikawa, "nb-a", "nb-b", 0.8},
        {SchemeId::ModifiedIshikawa, "na-a", "na-b", 0.5},
        {SchemeId::ModifiedIshikawa, "na2-a", "na2-b", 0.5},
    };
    MapPair pair = paper_pair(0.5, 0.2);
    for (const auto& c : cases) {
        Schedule a = catalog_schedule(c.akey);
        Schedule b = catalog_schedule(c.bkey);
        // Truncate at the double-precision noise floor: beyond it sigma_n
        // measures rounding, not convergence rate.
        IterationTrace tr = run(c.scheme, pair, a, b, vec1(2.0), 2000, 1e-13);
        RateReport rep = c.scheme == SchemeId::ModifiedIshikawa
                             ? rate_modified(tr, a, b, 0.5, 0.2)
                             : rate_ishikawa(tr, a, b, 0.5, 0.2);
        const std::string tag = std::string(to_string(c.scheme)) + "/" + c.akey;
        if (!rep.sandwich_available) {
            fail(r, tag + ": no sandwich available");
            continue;
        }
        if (std::fabs(rep.beta_min - c.beta_min_expected) > 1e-15)
            fail(r, tag + ": beta_min " + fmt(rep.beta_min));
        int defined = 0;
        for (std::size_t n = 10; n < rep.sigma.size() && n <= 2000; ++n) {
            const double s = rep.sigma[n];
            if (std::isnan(s)) continue;
            ++defined;
            if (s < rep.beta_min - 1e-12 || s > rep.beta_max_guaranteed + 1e-12) {
                fail(r, tag + ": sigma_" + std::to_string(n) + " = " + fmt(s) +
                            " outside [" + fmt(rep.beta_min) + ", " +
                            fmt(rep.beta_max_guaranteed) + "]");
                break;
            }
        }
        if (defined < 25) fail(r, tag + ": only " + std::to_string(defined) + " defined sigma");
    }
    if (r.pass) note(r, "sigma_n within the guaranteed sandwich on all four configurations");
}

// ---- 9. Cross-scheme comparison verdicts. ----
void criterion_comparison(CriterionResult& r) {
    r.pass = true;
    MapPair pair = paper_pair(0.5, 0.2);
    auto run_cmp = [&](const Schedule& a, const Schedule& b) {
        IterationTrace ti = run(SchemeId::Ishikawa, pair, a, b, vec1(2.0), 500, 0.0);
        IterationTrace tm = run(SchemeId::ModifiedIshikawa, pair, a, b, vec1(2.0), 500, 0.0);
        return compare_schemes(tm, ti, a, b, 0.5, 0.2);
    };
    // Tests 1-2: the termwise condition fails; the ratio flattens.
    {
        ComparisonReport c1 =
            run_cmp(catalog_schedule("cmp-test1-a"), catalog_schedule("cmp-test1-b"));
        if (c1.verdict != ComparisonVerdict::PositiveLimit)
            fail(r, std::string("test 1 verdict ") + to_string(c1.verdict));
        ComparisonReport c2 =
            run_cmp(catalog_schedule("cmp-test2-a"), catalog_schedule("cmp-test2-b"));
        if (c2.verdict != ComparisonVerdict::PositiveLimit)
            fail(r, std::string("test 2 verdict ") + to_string(c2.verdict));
        if (c1.last_quartile_variation >= 0.10 || c2.last_quartile_variation >= 0.10)
            fail(r, "tail variation " + fmt(c1.last_quartile_variation) + " / " +
                        fmt(c2.last_quartile_variation));
    }
    // Tests 3-4: derived a-sequence, condition holds, modified wins.
    // theta frozen from the pre-run oracle: R_500 is exactly 0 in doubles
    // (the modified iterate reaches the fixed point bitwise).
    const double theta = 1e-12;
    for (int t = 3; t <= 4; ++t) {
        Schedule b = catalog_schedule(t == 3 ? "cmp-test1-b" : "cmp-test2-b");
        Schedule a = catalog_schedule(t == 3 ? "cmp-test3-a" : "cmp-test4-a", kDefaultSeed);
        ComparisonReport c = run_cmp(a, b);
        if (c.verdict != ComparisonVerdict::FasterIM)
            fail(r, "test " + std::to_string(t) + " verdict " + to_string(c.verdict));
        if (!(c.ratio.back() <= theta))
            fail(r, "test " + std::to_string(t) + " R_500 " + fmt(c.ratio.back()));
    }
    if (r.pass) note(r, "tests 3-4 faster-im with R_500 <= 1e-12; tests 1-2 positive-limit");
}

// ---- 10. Property suites. ----
void criterion_properties(CriterionResult& r, Level level) {
    r.pass = true;

    // Series-equivalence witness.
    {
        Schedule a = Schedule::custom(
            "recip", [](std::int64_t k) { return 1.0 / (static_cast<double>(k) + 2.0); },
            SeriesClass::Divergent);
        auto u_zero = [](std::int64_t) { return 0.0; };
        auto w0 = series_equiv_witness(a, u_zero, 0.0, 1000);
        if (!w0.termwise_lower_ok || w0.ratio_tail != 0.0) fail(r, "witness u=0");
        auto u_one = [](std::int64_t) { return 1.0; };
        auto w1 = series_equiv_witness(a, u_one, 1.0, 10000);
        if (!w1.termwise_lower_ok || w1.ratio_tail > 2e-4)
            fail(r, "witness tail " + fmt(w1.ratio_tail));
        Schedule c9 = Schedule::constant(0.9, SeriesClass::Divergent);
        bool threw = false;
        try {
            series_equiv_witness(c9, [](std::int64_t) { return 1.2; }, 1.2, 100);
        } catch (const Error& e) {
            threw = e.code() == Errc::PreconditionViolated;
        }
        if (!threw) fail(r, "witness precondition not enforced");
    }

    // Log sandwich containment on the shipped configurations.
    {
        auto contained = [&](SchemeId s, const Schedule& a, const Schedule& b,
                             const char* tag) {
            LogSandwich ls = log_sandwich(s, a, b, 0.5, 0.2, 500);
            if (ls.u_lo && !(*ls.u_lo <= ls.log_u + 1e-9)) fail(r, std::string(tag) + " u_lo");
            if (ls.u_hi && !(ls.log_u <= *ls.u_hi + 1e-9)) fail(r, std::string(tag) + " u_hi");
            if (ls.log_l) {
                if (!(*ls.l_lo <= *ls.log_l + 1e-9)) fail(r, std::string(tag) + " l_lo");
                if (!(*ls.log_l <= *ls.l_hi + 1e-9)) fail(r, std::string(tag) + " l_hi");
            }
        };
        contained(SchemeId::Ishikawa, Schedule::constant(1.0, SeriesClass::Divergent),
                  Schedule::constant(0.5, SeriesClass::Divergent), "ish a1b.5");
        contained(SchemeId::Ishikawa, catalog_schedule("na-a"), catalog_schedule("na-b"),
                  "ish na");
        contained(SchemeId::Ishikawa, catalog_schedule("nb-a"), catalog_schedule("nb-b"),
                  "ish nb");
        contained(SchemeId::ModifiedIshikawa, Schedule::constant(0.25, SeriesClass::Divergent),
                  Schedule::constant(0.25, SeriesClass::Divergent), "im .25");
        contained(SchemeId::ModifiedIshikawa, catalog_schedule("na2-a"),
                  catalog_schedule("na2-b"), "im na2");
        for (int t = 1; t <= 4; ++t)
            contained(SchemeId::ModifiedIshikawa,
                      catalog_schedule("im-test" + std::to_string(t) + "-a"),
                      catalog_schedule("im-test" + std::to_string(t) + "-b",
                                       kDefaultSeed + 1),
                      "im family");
        LogSandwich zero = log_sandwich(SchemeId::Ishikawa,
                                        Schedule::constant(0.5, SeriesClass::Divergent),
                                        Schedule::constant(0.0, SeriesClass::Convergent),
                                        0.5, 0.2, 100);
        if (zero.log_u != 0.0 || *zero.u_hi != 0.0 || *zero.u_lo != 0.0)
            fail(r, "b=0 sandwich not identically zero");
    }

    // Convergence-prediction branch table.
    {
        using SC = SeriesClass;
        auto p = [&](SchemeId s, double a1, double a2, SC ca, SC cb, SC cab, SC capb) {
            return predict_convergence(s, a1, a2, ca, cb, cab, capb);
        };
        const SchemeId I = SchemeId::Ishikawa, M = SchemeId::ModifiedIshikawa;
        bool ok = true;
        ok &= p(I, 0.5, 0.2, SC::Unknown, SC::Divergent, SC::Unknown, SC::Unknown)
                  .upper_to_zero == TriState::Yes;
        ok &= p(I, 0.5, 0.2, SC::Unknown, SC::Convergent, SC::Unknown, SC::Unknown)
                  .upper_to_zero == TriState::No;
        ok &= p(I, 0.5, 1.0, SC::Divergent, SC::Divergent, SC::Divergent, SC::Unknown)
                  .upper_to_zero == TriState::Yes;
        ok &= p(I, 0.5, 1.0, SC::Divergent, SC::Divergent, SC::Convergent, SC::Unknown)
                  .upper_to_zero == TriState::No;
        ok &= p(I, 0.5, 0.2, SC::Unknown, SC::Divergent, SC::Unknown, SC::Unknown)
                  .lower_to_zero == TriState::Yes;
        ok &= p(I, 0.5, 0.2, SC::Unknown, SC::Convergent, SC::Unknown, SC::Unknown)
                  .lower_to_zero == TriState::No;
        ok &= p(M, 0.5, 0.5, SC::Convergent, SC::Convergent, SC::Unknown, SC::Convergent)
                  .upper_to_zero == TriState::No;
        ok &= p(M, 0.5, 0.5, SC::Convergent, SC::Convergent, SC::Unknown, SC::Convergent)
                  .lower_to_zero == TriState::No;
        ok &= p(M, 0.5, 0.5, SC::Divergent, SC::Convergent, SC::Unknown, SC::Divergent)
                  .upper_to_zero == TriState::Yes;
        ok &= p(M, 1.0, 0.5, SC::Divergent, SC::Convergent, SC::Unknown, SC::Divergent)
                  .upper_to_zero == TriState::No; // alpha1=1 mutes the a-branch
        ok &= p(M, 0.5, 0.5, SC::Unknown, SC::Convergent, SC::Unknown, SC::Unknown)
                  .upper_to_zero == TriState::Unknown;
        ok &= p(I, 0.5, 1.0, SC::Divergent, SC::Divergent, SC::Divergent, SC::Unknown)
                  .chi_alpha2_eq_1;
        if (!ok) fail(r, "prediction branch table");
    }

    // Ratio branches.
    {
        Domain d = Domain::interval(0.0, 4.0);
        if (ratio(vec1(1.0), vec1(1.0), vec1(1.0), d) != 0.0) fail(r, "ratio branch u=x=p");
        if (ratio(vec1(3.0), vec1(1.0), vec1(1.0), d) != 1.0) fail(r, "ratio branch x=p");
        if (ratio(vec1(1.5), vec1(2.0), vec1(1.0), d) != 0.5) fail(r, "ratio branch generic");
    }

    // Scheme reductions, bitwise.
    {
        MapPair pair = paper_pair(0.5, 0.2);
        Schedule zero = Schedule::constant(0.0, SeriesClass::Convergent, "zero");
        Schedule one = Schedule::constant(1.0, SeriesClass::Divergent, "one");
        Schedule b = catalog_schedule("eqbn-test2");
        IterationTrace ish = run(SchemeId::Ishikawa, pair, zero, b, vec1(2.0), 100, 0.0);
        IterationTrace mann = run(SchemeId::Mann, pair, zero, b, vec1(2.0), 100, 0.0);
        for (std::size_t n = 0; n < ish.x.size(); ++n)
            if (ish.x[n][0] != mann.x[n][0] || ish.err[n] != mann.err[n]) {
                fail(r, "ishikawa(a=0) != mann at n=" + std::to_string(n));
                break;
            }
        IterationTrace ish2 = run(SchemeId::Ishikawa, pair, zero, one, vec1(2.0), 60, 0.0);
        IterationTrace pic = run(SchemeId::Picard, pair, zero, one, vec1(2.0), 60, 0.0);
        for (std::size_t n = 0; n < ish2.x.size(); ++n)
            if (ish2.x[n][0] != pic.x[n][0]) {
                fail(r, "ishikawa(a=0,b=1) != picard at n=" + std::to_string(n));
                break;
            }
    }

    // Determinism of seeded randomness.
    {
        Schedule r1 = Schedule::random_uniform(kDefaultSeed);
        Schedule r2 = Schedule::random_uniform(kDefaultSeed);
        Schedule d1 = catalog_schedule("cmp-test3-a", kDefaultSeed);
        Schedule d2 = catalog_schedule("cmp-test3-a", kDefaultSeed);
        for (std::int64_t n = 0; n < 10000; ++n) {
            if (r1.eval(n) != r2.eval(n)) {
                fail(r, "random stream not reproducible at n=" + std::to_string(n));
                break;
            }
            if (d1.eval(n) != d2.eval(n)) {
                fail(r, "derived stream not reproducible at n=" + std::to_string(n));
                break;
            }
        }
    }

    // Extended scans: the full level sweeps every catalog schedule over all
    // n <= 1e6; the fast level samples.
    {
        const std::int64_t dense = level == Level::Full ? 1000001 : 1024;
        const int sparse = level == Level::Full ? 0 : 256;
        for (const auto& entry : schedule_catalog()) {
            Schedule s = catalog_schedule(entry.key);
            try {
                for (std::int64_t n = 0; n < dense; ++n) s.eval(n);
                for (int i = 0; i < sparse; ++i) {
                    const std::int64_t n =
                        static_cast<std::int64_t>(splitmix64_at(1234, i) % 1000001ull);
                    s.eval(n);
                }
            } catch (const Error&) {
                fail(r, "catalog '" + entry.key + "' left [0,1]");
            }
        }
        const int samples = level == Level::Full ? 100000 : 10000;
        MapPair pp = paper_pair(0.5, 0.2);
        if (!verify_nonexpansive(pp.t1, samples, 77).pass) fail(r, "paper T1 ratio probe");
        if (!verify_nonexpansive(pp.t2, samples, 78).pass) fail(r, "paper T2 ratio probe");
        MapPair pp1 = paper_pair(0.5, 1.0);
        if (!verify_nonexpansive(pp1.t2, samples, 79).pass)
            fail(r, "paper T2 (alpha2=1) ratio probe");
        Domain box = Domain::symmetric_box(vec1(0.0), 1.0);
        if (!verify_nonexpansive(make_extremal_lower(0.7, vec1(0.0), box), samples, 80).pass)
            fail(r, "reflected map ratio probe");
    }

    if (r.pass) note(r, "witness, sandwiches, branch table, ratio, reductions, determinism");
}

} // namespace

std::vector<CriterionResult> run_all(Level level) {
    struct Entry {
        int id;
        const char* name;
        void (*fn)(CriterionResult&, Level);
    };
    auto wrap0 = [](void (*f)(CriterionResult&)) {
        return f;
    };
    (void)wrap0;
    const Entry entries[] = {
        {1, "picard-geometric-equality",
         [](CriterionResult& r, Level) { criterion_picard(r); }},
        {2, "extremal-bound-equalities",
         [](CriterionResult& r, Level) { criterion_extremal(r); }},
        {3, "error-bracketing", [](CriterionResult& r, Level) { criterion_bracketing(r); }},
        {4, "bseries-family-convergence",
         [](CriterionResult& r, Level) { criterion_family1(r); }},
        {5, "aseries-insensitivity",
         [](CriterionResult& r, Level) { criterion_family1_insensitivity(r); }},
        {6, "alpha2-one-regime", [](CriterionResult& r, Level) { criterion_alpha2_one(r); }},
        {7, "modified-series-family",
         [](CriterionResult& r, Level l) { criterion_modified_family(r, l); }},
        {8, "rate-sandwiches", [](CriterionResult& r, Level) { criterion_rate_sandwich(r); }},
        {9, "scheme-comparison", [](CriterionResult& r, Level) { criterion_comparison(r); }},
        {10, "property-suites", [](CriterionResult& r, Level l) { criterion_properties(r, l); }},
    };
    std::vector<CriterionResult> results;
    for (const auto& e : entries) {
        CriterionResult r;
        r.id = e.id;
        r.name = e.name;
        const auto t0 = std::chrono::steady_clock::now();
        try {
            e.fn(r, level);
        } catch (const std::exception& ex) {
            fail(r, std::string("exception: ") + ex.what());
        }
        r.millis = std::chrono::duration<double, std::milli>(
                       std::chrono::steady_clock::now() - t0)
                       .count();
        results.push_back(std::move(r));
    }
    return results;
}

int print_report(std::ostream& os, const std::vector<CriterionResult>& results) {
    int failures = 0;
    for (const auto& r : results) {
        os << '[' << std::setw(2) << r.id << "] " << std::left << std::setw(30) << r.name
           << std::right << (r.pass ? "PASS" : "FAIL") << "  (" << std::fixed
           << std::setprecision(1) << r.millis << " ms)";
        if (!r.detail.empty()) os << "  " << r.detail;
        os << '\n';
        if (!r.pass) ++failures;
    }
    os << (failures == 0 ? "all criteria passed\n"
                         : std::to_string(failures) + " criterion(s) failed\n");
    return failures;
}

} // namespace oeb::accept
