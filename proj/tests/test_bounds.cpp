#include <doctest.h>

#include <cmath>
#include <sstream>

#include "oeb/bounds.hpp"
#include "oeb/csv.hpp"
#include "oeb/errors.hpp"
#include "oeb/log_product.hpp"
#include "oeb/prng.hpp"

using namespace oeb;

namespace {
Schedule konst(double v) {
    return Schedule::constant(v, v == 0.0 ? SeriesClass::Convergent : SeriesClass::Divergent);
}
} // namespace

TEST_CASE("upper bounds: trivial, hand-checked, and reduced cases") {
    SUBCASE("b = 0 contracts nothing") {
        BoundsTrace bt = oueb_ishikawa(konst(0.7), konst(0.0), 0.5, 0.2, 100);
        for (double u : bt.u) CHECK(u == 1.0);
    }
    SUBCASE("a = b = 1 gives the 0.1 factor product") {
        BoundsTrace bt = oueb_ishikawa(konst(1.0), konst(1.0), 0.5, 0.2, 60);
        double expected = 1.0;
        for (std::size_t n = 0; n < bt.u.size(); ++n) {
            expected *= 0.1; // direct product oracle
            CHECK(bt.u[n] == doctest::Approx(expected).epsilon(1e-12));
            CHECK(bt.u_factors[n] == doctest::Approx(0.1).epsilon(1e-15));
        }
    }
    SUBCASE("a = 0, b = 1 reduces to the geometric single-map bound") {
        const double alpha = 0.37;
        BoundsTrace bt = oueb_ishikawa(konst(0.0), konst(1.0), 0.9, alpha, 40);
        double expected = 1.0;
        for (std::size_t n = 0; n < bt.u.size(); ++n) {
            expected *= alpha;
            CHECK(bt.u[n] == doctest::Approx(expected).epsilon(1e-12));
        }
    }
    SUBCASE("modified scheme factors") {
        BoundsTrace one = oueb_modified(konst(0.0), konst(0.0), 0.5, 0.2, 10);
        for (double u : one.u) CHECK(u == 1.0);
        BoundsTrace bt = oueb_modified(konst(1.0), konst(1.0), 0.5, 0.2, 30);
        CHECK(bt.u_factors[0] == doctest::Approx(0.1).epsilon(1e-15));
        BoundsTrace ident = oueb_modified(konst(1.0), konst(0.3), 1.0, 0.2, 10);
        CHECK(ident.u_factors[0] == doctest::Approx(1.0 - 0.3 + 0.2 * 0.3).epsilon(1e-15));
    }
    SUBCASE("alpha validation") {
        CHECK_THROWS_AS(oueb_ishikawa(konst(0.5), konst(0.5), 0.0, 0.0, 5), Error);
        CHECK_THROWS_AS(oueb_ishikawa(konst(0.5), konst(0.5), 1.0, 1.0, 5), Error);
        CHECK_THROWS_AS(oueb_modified(konst(0.5), konst(0.5), 1.5, 0.1, 5), Error);
    }
}

TEST_CASE("lower bounds: positivity condition and signed products") {
    SUBCASE("b = 0 keeps L = 1") {
        BoundsTrace bt = oleb_ishikawa(konst(0.9), konst(0.0), 0.5, 0.2, 50);
        for (double l : bt.l) CHECK(l == 1.0);
        CHECK(bt.lower_defined);
    }
    SUBCASE("hand-checked factor 0.45") {
        BoundsTrace bt = oleb_ishikawa(konst(1.0), konst(0.5), 0.5, 0.2, 10);
        CHECK(bt.l_factors[0] == doctest::Approx(0.45).epsilon(1e-15));
        CHECK(bt.l[0] == doctest::Approx(0.45).epsilon(1e-15));
    }
    SUBCASE("violation reports the first bad index") {
        try {
            oleb_ishikawa(konst(1.0), konst(1.0), 0.5, 0.2, 10);
            FAIL("expected LowerUndefined");
        } catch (const Error& e) {
            CHECK(e.code() == Errc::LowerUndefined);
            CHECK(e.index == 0);
        }
        BoundsTrace bt = oleb_ishikawa_signed(konst(1.0), konst(1.0), 0.5, 0.2, 10);
        CHECK_FALSE(bt.lower_defined);
        CHECK(bt.first_lower_violation == 0);
        CHECK(bt.l[0] == doctest::Approx(-0.1).epsilon(1e-14));
    }
    SUBCASE("modified-scheme factors and the per-factor blame") {
        BoundsTrace bt = oleb_modified(konst(0.25), konst(0.25), 0.5, 0.2, 10);
        CHECK(bt.l_factors[0] == doctest::Approx(0.4375).epsilon(1e-15));
        try {
            oleb_modified(konst(0.7), konst(0.1), 0.5, 0.2, 10);
            FAIL("expected LowerUndefined");
        } catch (const Error& e) {
            CHECK(e.code() == Errc::LowerUndefined);
            CHECK(std::string(e.what()).find("factor 1") != std::string::npos);
        }
        BoundsTrace sg = oleb_modified_signed(konst(0.7), konst(0.1), 0.5, 0.2, 10);
        CHECK_FALSE(sg.lower_defined);
        CHECK(sg.violating_factor == 1);
    }
    SUBCASE("ordering: L <= U and U nonincreasing on random bounded schedules") {
        Schedule a = Schedule::random_uniform(7, "a");
        Schedule b = Schedule::custom(
            "b3", [](std::int64_t n) { return 0.3 * uniform01_at(8, n); },
            SeriesClass::Divergent);
        BoundsTrace u = oueb_ishikawa(a, b, 0.5, 0.2, 300);
        BoundsTrace l = oleb_ishikawa(a, b, 0.5, 0.2, 300);
        for (std::size_t n = 0; n < u.u.size(); ++n) {
            CHECK(l.l[n] <= u.u[n]);
            CHECK(l.l[n] >= 0.0);
            if (n) CHECK(u.u[n] <= u.u[n - 1]);
        }
    }
}

TEST_CASE("bounds CSV publishes L only while the positivity condition holds") {
    // Factors: k=0,1 positive, k=2 negative.
    Schedule a = konst(1.0);
    Schedule b = Schedule::custom(
        "step", [](std::int64_t n) { return n < 2 ? 0.5 : 1.0; }, SeriesClass::Divergent);
    BoundsTrace upper = oueb_ishikawa(a, b, 0.5, 0.2, 4);
    BoundsTrace lower = oleb_ishikawa_signed(a, b, 0.5, 0.2, 4);
    REQUIRE(lower.first_lower_violation == 2);

    std::ostringstream os;
    write_bounds_csv(os, &upper, &lower);
    std::istringstream is(os.str());
    std::string line;
    std::getline(is, line); // header
    int row = 0;
    while (std::getline(is, line)) {
        const std::size_t c1 = line.find(',');
        const std::size_t c2 = line.find(',', c1 + 1);
        const std::size_t c3 = line.find(',', c2 + 1);
        const std::string l_cell = line.substr(c2 + 1, c3 - c2 - 1);
        if (row < 2) CHECK_FALSE(l_cell.empty());
        else CHECK(l_cell.empty());
        ++row;
    }
    CHECK(row == 5);
}

TEST_CASE("running product: log and linear tracks agree where both live") {
    RunningProduct p;
    double reference = 1.0;
    for (int i = 0; i < 500; ++i) {
        const double f = 0.05 + uniform01_at(21, i);
        p.multiply(f);
        reference *= f;
        if (reference > 1e-290)
            CHECK(p.value() == doctest::Approx(p.value_from_log()).epsilon(1e-12));
    }
    RunningProduct s;
    s.multiply(-0.5);
    CHECK(s.sign() == -1);
    CHECK(s.value() == -0.5);
    s.multiply(-0.5);
    CHECK(s.sign() == 1);
    CHECK(s.value_from_log() == doctest::Approx(0.25).epsilon(1e-14));
    s.multiply(0.0);
    CHECK(s.sign() == 0);
    CHECK(s.value_from_log() == 0.0);
}

TEST_CASE("convergence predictions follow the criterion branches") {
    using SC = SeriesClass;
    const SchemeId I = SchemeId::Ishikawa, M = SchemeId::ModifiedIshikawa;

    auto p = predict_convergence(I, 0.5, 0.2, SC::Unknown, SC::Divergent, SC::Unknown,
                                 SC::Unknown);
    CHECK(p.upper_to_zero == TriState::Yes);
    CHECK(p.lower_to_zero == TriState::Yes);
    CHECK_FALSE(p.chi_alpha2_eq_1);

    p = predict_convergence(I, 0.5, 1.0, SC::Divergent, SC::Divergent, SC::Convergent,
                            SC::Unknown);
    CHECK(p.upper_to_zero == TriState::No);
    CHECK(p.chi_alpha2_eq_1);

    p = predict_convergence(M, 0.5, 0.5, SC::Convergent, SC::Convergent, SC::Unknown,
                            SC::Convergent);
    CHECK(p.upper_to_zero == TriState::No);
    CHECK(p.lower_to_zero == TriState::No);

    p = predict_convergence(M, 1.0, 0.5, SC::Divergent, SC::Convergent, SC::Unknown,
                            SC::Divergent);
    CHECK(p.upper_to_zero == TriState::No); // alpha1 = 1 mutes the divergent a-part
    CHECK(p.lower_to_zero == TriState::Yes);

    p = predict_convergence(M, 0.5, 0.5, SC::Unknown, SC::Convergent, SC::Unknown,
                            SC::Unknown);
    CHECK(p.upper_to_zero == TriState::Unknown);
    CHECK(p.lower_to_zero == TriState::Unknown);

    CHECK_THROWS_AS(
        predict_convergence(I, 0.0, 0.0, SC::Unknown, SC::Unknown, SC::Unknown, SC::Unknown),
        Error);
}

TEST_CASE("log sandwiches contain the exact log products") {
    SUBCASE("two-step scheme, closed-form sides") {
        Schedule a = konst(1.0), b = konst(0.5);
        LogSandwich ls = log_sandwich(SchemeId::Ishikawa, a, b, 0.5, 0.2, 200);
        const double sum_b = 0.5 * 201;
        REQUIRE(ls.u_lo.has_value());
        CHECK(*ls.u_lo == doctest::Approx((0.1 - 1.0) / 0.1 * sum_b).epsilon(1e-12));
        CHECK(*ls.u_hi == doctest::Approx((0.2 - 1.0) * sum_b).epsilon(1e-12));
        CHECK(*ls.u_lo <= ls.log_u);
        CHECK(ls.log_u <= *ls.u_hi);
        REQUIRE(ls.log_l.has_value());
        CHECK(*ls.l_lo <= *ls.log_l);
        CHECK(*ls.log_l <= *ls.l_hi);
    }
    SUBCASE("b = 0 makes everything vanish") {
        LogSandwich ls = log_sandwich(SchemeId::Ishikawa, konst(0.7), konst(0.0), 0.5, 0.2, 64);
        CHECK(ls.log_u == 0.0);
        CHECK(*ls.u_lo == 0.0);
        CHECK(*ls.u_hi == 0.0);
    }
    SUBCASE("modified scheme with both lower factors alive") {
        LogSandwich ls =
            log_sandwich(SchemeId::ModifiedIshikawa, konst(0.25), konst(0.25), 0.5, 0.5, 500);
        CHECK(*ls.u_lo <= ls.log_u);
        CHECK(ls.log_u <= *ls.u_hi);
        REQUIRE(ls.log_l.has_value());
        CHECK(*ls.l_lo <= *ls.log_l);
        CHECK(*ls.log_l <= *ls.l_hi);
    }
    SUBCASE("degenerate alpha product leaves the lower side undefined") {
        LogSandwich ls = log_sandwich(SchemeId::Ishikawa, konst(0.5), konst(0.5), 0.0, 0.5, 32);
        CHECK_FALSE(ls.u_lo.has_value());
        CHECK(ls.u_hi.has_value());
    }
    SUBCASE("vanishing factor is an error") {
        CHECK_THROWS_AS(log_sandwich(SchemeId::Ishikawa, konst(1.0), konst(1.0), 0.0, 1.0, 8),
                        Error);
    }
}

TEST_CASE("bounds bracket the observed errors on the shipped configurations") {
    struct Case {
        SchemeId scheme;
        const char* ak;
        const char* bk;
        double a2;
    };
    const Case cases[] = {
        {SchemeId::Ishikawa, "rand", "eqbn-test2", 0.2},
        {SchemeId::Ishikawa, "rand", "eqbn-test4", 0.2},
        {SchemeId::Ishikawa, "na-a", "na-b", 0.2},
        {SchemeId::Ishikawa, "nb-a", "nb-b", 0.2},
        {SchemeId::Ishikawa, "anbn-test2-a", "anbn-test2-b", 1.0},
        {SchemeId::ModifiedIshikawa, "im-test1-a", "im-test1-b", 0.2},
        {SchemeId::ModifiedIshikawa, "im-test4-a", "im-test4-b", 0.2},
    };
    const std::int64_t N = 300;
    for (const auto& c : cases) {
        MapPair pair = paper_pair(0.5, c.a2);
        Schedule a = catalog_schedule(c.ak);
        Schedule b = catalog_schedule(c.bk, kDefaultSeed + 1);
        IterationTrace tr =
            run(c.scheme, pair, a, b, Eigen::VectorXd::Constant(1, 2.0), N, 0.0);
        const bool modified = c.scheme == SchemeId::ModifiedIshikawa;
        BoundsTrace u = modified ? oueb_modified(a, b, 0.5, c.a2, N - 1)
                                 : oueb_ishikawa(a, b, 0.5, c.a2, N - 1);
        BoundsTrace l = modified ? oleb_modified_signed(a, b, 0.5, c.a2, N - 1)
                                 : oleb_ishikawa_signed(a, b, 0.5, c.a2, N - 1);
        bool ok = true;
        for (std::int64_t n = 0; n < N && ok; ++n) {
            const double e = tr.err[static_cast<std::size_t>(n) + 1];
            ok = e <= u.u[static_cast<std::size_t>(n)] + 1e-12;
            if (l.lower_defined) ok = ok && l.l[static_cast<std::size_t>(n)] - 1e-12 <= e;
        }
        CHECK_MESSAGE(ok, c.bk);
    }
}

TEST_CASE("divergence predictions are corroborated by the long-horizon products") {
    // Log-space products at N = 1e5 for the linearly/power-divergent catalog
    // entries. (Entries whose series diverge only logarithmically, e.g.
    // b ~ 1/(2n), need horizons far beyond 1e5 to push U below 1e-6 and are
    // out of scope here.)
    const double target = std::log(1e-6);

    auto upper_log = [](SchemeId s, const char* ak, const char* bk) {
        Schedule a = catalog_schedule(ak);
        Schedule b = catalog_schedule(bk, kDefaultSeed + 1);
        BoundsTrace bt = s == SchemeId::ModifiedIshikawa
                             ? oueb_modified(a, b, 0.5, 0.2, 100000)
                             : oueb_ishikawa(a, b, 0.5, 0.2, 100000);
        return bt.log_u.back();
    };
    const SchemeId I = SchemeId::Ishikawa, M = SchemeId::ModifiedIshikawa;
    CHECK(predict_convergence(I, 0.5, 0.2, SeriesClass::Divergent, SeriesClass::Divergent,
                              SeriesClass::Unknown, SeriesClass::Unknown)
              .upper_to_zero == TriState::Yes);
    CHECK(upper_log(I, "rand", "eqbn-test1") < target);
    CHECK(upper_log(I, "rand", "eqbn-test2") < target);
    CHECK(upper_log(I, "rand", "eqbn-test3") < target);
    CHECK(upper_log(I, "rand", "fig1b-b1") < target);
    CHECK(upper_log(I, "na-a", "na-b") < target);
    CHECK(upper_log(M, "im-test1-a", "im-test1-b") < target);
}

TEST_CASE("series-equivalence witness") {
    Schedule recip = Schedule::custom(
        "recip", [](std::int64_t k) { return 1.0 / (static_cast<double>(k) + 2.0); },
        SeriesClass::Divergent);

    auto w = series_equiv_witness(recip, [](std::int64_t) { return 0.0; }, 0.0, 1000);
    CHECK(w.termwise_lower_ok);
    CHECK(w.ratio_tail == 0.0);

    w = series_equiv_witness(recip, [](std::int64_t) { return 1.0; }, 1.0, 10000);
    CHECK(w.termwise_lower_ok);
    CHECK(w.ratio_tail <= 2e-4);
    CHECK(w.ratio_tail > 0.0);

    CHECK_THROWS_AS(
        series_equiv_witness(konst(0.9), [](std::int64_t) { return 1.2; }, 1.2, 50), Error);
}
