#include <doctest.h>

#include <cmath>

#include "oeb/analysis.hpp"
#include "oeb/errors.hpp"
#include "oeb/prng.hpp"

using namespace oeb;

namespace {
Eigen::VectorXd v1(double x) { return Eigen::VectorXd::Constant(1, x); }
Schedule konst(double v) {
    return Schedule::constant(v, v == 0.0 ? SeriesClass::Convergent : SeriesClass::Divergent);
}
} // namespace

TEST_CASE("piecewise ratio branches and scale covariance") {
    Domain d = Domain::interval(-10.0, 10.0);
    CHECK(ratio(v1(1.0), v1(1.0), v1(1.0), d) == 0.0);
    CHECK(ratio(v1(3.0), v1(1.0), v1(1.0), d) == 1.0);
    CHECK(ratio(v1(1.5), v1(2.0), v1(1.0), d) == 0.5);

    for (int i = 0; i < 100; ++i) {
        const double u = -1.0 + 2.0 * uniform01_at(31, 3 * i);
        const double x = -1.0 + 2.0 * uniform01_at(31, 3 * i + 1);
        const double t = 0.1 + 3.0 * uniform01_at(31, 3 * i + 2);
        if (x == 0.0) continue;
        const double base = ratio(v1(u), v1(x), v1(0.0), d);
        const double scaled = ratio(v1(t * u), v1(t * x), v1(0.0), d);
        CHECK(scaled == doctest::Approx(base).epsilon(5e-16));
    }
}

TEST_CASE("two-step rate report on the constant-b configuration") {
    MapPair pair = paper_pair(0.5, 0.2);
    Schedule a = catalog_schedule("na-a");
    Schedule b = catalog_schedule("na-b");
    IterationTrace tr = run(SchemeId::Ishikawa, pair, a, b, v1(2.0), 400, 1e-13);
    RateReport rep = rate_ishikawa(tr, a, b, 0.5, 0.2);

    CHECK(rep.beta_min == doctest::Approx(0.8).epsilon(1e-15));
    CHECK(rep.delta == doctest::Approx(0.2).epsilon(1e-15));

    // Horizon minimum of the lower factor, computed independently.
    double eps_expected = 1.0;
    for (std::int64_t k = 0; k < tr.steps(); ++k) {
        const double ak = a.eval(k);
        eps_expected = std::min(eps_expected, 1.0 - 0.2 - 0.04 * (1.0 - 0.5 * ak));
    }
    CHECK(rep.epsilon == doctest::Approx(eps_expected).epsilon(1e-14));
    CHECK(rep.sandwich_available);
    CHECK(rep.hypotheses.cond_ra_1);
    CHECK(rep.hypotheses.remark_delta);
    CHECK(rep.beta_max_guaranteed ==
          doctest::Approx(std::min(1.2 / eps_expected, 1.2 / 0.76)).epsilon(1e-14));

    // sigma_n = -ln Err_{n+1} / sum b, spot check against direct arithmetic.
    CHECK(rep.sigma[10] ==
          doctest::Approx(-std::log(tr.err[11]) / (0.2 * 11)).epsilon(1e-12));
}

TEST_CASE("rate entries are sentinels when undefined") {
    MapPair pair = paper_pair(0.5, 0.2);
    Schedule a = konst(0.9), b = konst(0.0);
    IterationTrace tr = run(SchemeId::Ishikawa, pair, a, b, v1(2.0), 50);
    RateReport rep = rate_ishikawa(tr, a, b, 0.5, 0.2);
    for (double s : rep.sigma) CHECK(std::isnan(s));
}

TEST_CASE("modified-scheme rate report") {
    MapPair pair = paper_pair(0.5, 0.2);
    Schedule a = konst(0.25), b = konst(0.25);
    IterationTrace tr = run(SchemeId::ModifiedIshikawa, pair, a, b, v1(2.0), 300, 1e-13);
    RateReport rep = rate_modified(tr, a, b, 0.5, 0.2);
    CHECK(rep.beta_min == doctest::Approx(0.5).epsilon(1e-15));
    CHECK(rep.epsilon1 == doctest::Approx(0.625).epsilon(1e-15));
    CHECK(rep.epsilon2 == doctest::Approx(0.7).epsilon(1e-15));
    CHECK(rep.beta_max_guaranteed == doctest::Approx(2.4).epsilon(1e-14));
    REQUIRE(rep.beta_max_paper.has_value());
    CHECK(*rep.beta_max_paper == doctest::Approx(1.2 / 0.7).epsilon(1e-14));
    CHECK(rep.hypotheses.cond_ra_im);

    // Both epsilons negative: no guaranteed sandwich.
    Schedule big = konst(0.9);
    IterationTrace tr2 = run(SchemeId::ModifiedIshikawa, pair, big, big, v1(2.0), 20);
    RateReport rep2 = rate_modified(tr2, big, big, 0.5, 0.2);
    CHECK_FALSE(rep2.sandwich_available);
    CHECK_FALSE(rep2.hypotheses.cond_ra_im);
    CHECK(std::isnan(rep2.beta_max_guaranteed));

    CHECK_THROWS_AS(rate_modified(run(SchemeId::Ishikawa, pair, a, b, v1(2.0), 5), a, b, 0.5,
                                  0.2),
                    Error);
}

TEST_CASE("comparing a run against its own iterates gives 0/1 ratios") {
    MapPair pair = paper_pair(0.5, 0.2);
    Schedule zero = konst(0.0);
    Schedule b = catalog_schedule("eqbn-test2");
    // With a = 0 both schemes produce bitwise-identical iterates.
    IterationTrace ti = run(SchemeId::Ishikawa, pair, zero, b, v1(2.0), 300);
    IterationTrace tm = run(SchemeId::ModifiedIshikawa, pair, zero, b, v1(2.0), 300);
    ComparisonReport rep = compare_schemes(tm, ti, zero, b, 0.5, 0.2);
    for (double r : rep.ratio) CHECK((r == 0.0 || r == 1.0));
}

TEST_CASE("comparison verdicts and the mismatched-run guard") {
    MapPair pair = paper_pair(0.5, 0.2);
    SUBCASE("derived schedule makes the modified scheme provably faster") {
        Schedule b = catalog_schedule("cmp-test1-b");
        Schedule a = catalog_schedule("cmp-test3-a");
        IterationTrace ti = run(SchemeId::Ishikawa, pair, a, b, v1(2.0), 150);
        IterationTrace tm = run(SchemeId::ModifiedIshikawa, pair, a, b, v1(2.0), 150);
        ComparisonReport rep = compare_schemes(tm, ti, a, b, 0.5, 0.2);
        CHECK(rep.cond_holds);
        CHECK(rep.lower_hypothesis_ok);
        CHECK(rep.verdict == ComparisonVerdict::FasterIM);
        CHECK(rep.ratio.back() < 1e-6);
    }
    SUBCASE("violating schedules are flagged with the first bad index") {
        Schedule a = catalog_schedule("cmp-test1-a");
        Schedule b = catalog_schedule("cmp-test1-b");
        IterationTrace ti = run(SchemeId::Ishikawa, pair, a, b, v1(2.0), 150);
        IterationTrace tm = run(SchemeId::ModifiedIshikawa, pair, a, b, v1(2.0), 150);
        ComparisonReport rep = compare_schemes(tm, ti, a, b, 0.5, 0.2);
        CHECK_FALSE(rep.cond_holds);
        CHECK(rep.first_violation == 0); // b_0 = 2/9 already exceeds the cap
    }
    SUBCASE("horizon and start-point mismatches are rejected") {
        Schedule a = konst(0.5), b = konst(0.5);
        IterationTrace ti = run(SchemeId::Ishikawa, pair, a, b, v1(2.0), 30);
        IterationTrace tm = run(SchemeId::ModifiedIshikawa, pair, a, b, v1(2.0), 31);
        CHECK_THROWS_AS(compare_schemes(tm, ti, a, b, 0.5, 0.2), Error);
        IterationTrace tm2 = run(SchemeId::ModifiedIshikawa, pair, a, b, v1(2.5), 30);
        CHECK_THROWS_AS(compare_schemes(tm2, ti, a, b, 0.5, 0.2), Error);
    }
}
