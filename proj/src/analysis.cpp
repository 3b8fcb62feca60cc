#include "oeb/analysis.hpp"

#include <cmath>
#include <limits>

#include "oeb/errors.hpp"
#include "oeb/summation.hpp"

namespace oeb {

namespace {
const double kNaN = std::numeric_limits<double>::quiet_NaN();

double sigma_entry(double err_next, double denom) {
    if (!(err_next > 0.0) || !(denom > 0.0)) return kNaN;
    return -std::log(err_next) / denom;
}
} // namespace

RateReport rate_ishikawa(const IterationTrace& trace, const Schedule& a, const Schedule& b,
                         double alpha1, double alpha2) {
    if (trace.scheme == SchemeId::ModifiedIshikawa)
        raise(Errc::PreconditionViolated, "rate_ishikawa needs an Ishikawa-family trace");
    RateReport rep;
    rep.scheme = trace.scheme;
    const std::int64_t T = trace.steps();
    KahanSum denom;
    rep.delta = 0.0;
    rep.epsilon = std::numeric_limits<double>::infinity();
    for (std::int64_t n = 0; n < T; ++n) {
        const double an = a.eval(n);
        const double bn = b.eval(n);
        denom.add(bn);
        rep.denominator.push_back(denom.value());
        rep.sigma.push_back(sigma_entry(trace.err[static_cast<std::size_t>(n) + 1],
                                        denom.value()));
        rep.delta = std::max(rep.delta, bn);
        rep.epsilon =
            std::min(rep.epsilon, 1.0 - bn - alpha2 * bn * (1.0 - an + alpha1 * an));
    }
    rep.beta_min = 1.0 - alpha2;
    rep.hypotheses.cond_ra_1 = rep.epsilon > 0.0;
    rep.hypotheses.remark_delta = rep.delta < 1.0 / (1.0 + alpha2);

    double best = std::numeric_limits<double>::infinity();
    if (rep.epsilon > 0.0) best = std::min(best, (1.0 + alpha2) / rep.epsilon);
    const double remark_den = 1.0 - (1.0 + alpha2) * rep.delta;
    if (remark_den > 0.0) best = std::min(best, (1.0 + alpha2) / remark_den);
    rep.sandwich_available = std::isfinite(best);
    rep.beta_max_guaranteed = rep.sandwich_available ? best : kNaN;
    return rep;
}

RateReport rate_modified(const IterationTrace& trace, const Schedule& a, const Schedule& b,
                         double alpha1, double alpha2) {
    if (trace.scheme != SchemeId::ModifiedIshikawa)
        raise(Errc::PreconditionViolated, "rate_modified needs a modified-scheme trace");
    RateReport rep;
    rep.scheme = trace.scheme;
    const std::int64_t T = trace.steps();
    KahanSum denom;
    rep.epsilon1 = std::numeric_limits<double>::infinity();
    rep.epsilon2 = std::numeric_limits<double>::infinity();
    for (std::int64_t n = 0; n < T; ++n) {
        const double an = a.eval(n);
        const double bn = b.eval(n);
        denom.add(an + bn);
        rep.denominator.push_back(denom.value());
        rep.sigma.push_back(sigma_entry(trace.err[static_cast<std::size_t>(n) + 1],
                                        denom.value()));
        rep.epsilon1 = std::min(rep.epsilon1, 1.0 - an - alpha1 * an);
        rep.epsilon2 = std::min(rep.epsilon2, 1.0 - bn - alpha2 * bn);
    }
    rep.beta_min = std::min(1.0 - alpha1, 1.0 - alpha2);
    rep.hypotheses.cond_ra_im = rep.epsilon1 > 0.0 && rep.epsilon2 > 0.0;

    const double b1 = rep.epsilon1 > 0.0 ? (1.0 + alpha1) / rep.epsilon1 : kNaN;
    const double b2 = rep.epsilon2 > 0.0 ? (1.0 + alpha2) / rep.epsilon2 : kNaN;
    double best = -std::numeric_limits<double>::infinity();
    if (!std::isnan(b1)) best = std::max(best, b1);
    if (!std::isnan(b2)) best = std::max(best, b2);
    rep.sandwich_available = std::isfinite(best);
    rep.beta_max_guaranteed = rep.sandwich_available ? best : kNaN;
    if (!std::isnan(b1) && !std::isnan(b2)) rep.beta_max_paper = std::min(b1, b2);
    return rep;
}

const char* to_string(ComparisonVerdict v) {
    switch (v) {
        case ComparisonVerdict::FasterIM: return "faster-im";
        case ComparisonVerdict::PositiveLimit: return "positive-limit";
        case ComparisonVerdict::Inconclusive: return "inconclusive";
    }
    return "?";
}

ComparisonReport compare_schemes(const IterationTrace& trace_im, const IterationTrace& trace_i,
                                 const Schedule& a, const Schedule& b, double alpha1,
                                 double alpha2) {
    if (trace_im.scheme != SchemeId::ModifiedIshikawa || trace_i.scheme != SchemeId::Ishikawa)
        raise(Errc::PreconditionViolated, "compare_schemes wants (modified, ishikawa) traces");
    if (trace_im.steps() != trace_i.steps())
        raise(Errc::MismatchedRuns, "horizons differ");
    if (trace_im.x0.size() != trace_i.x0.size() ||
        !(trace_im.x0.array() == trace_i.x0.array()).all())
        raise(Errc::MismatchedRuns, "initial points differ");

    ComparisonReport rep;
    const std::int64_t T = trace_im.steps();
    const Domain& dom = trace_i.domain;
    const Eigen::VectorXd& xs = trace_i.x_star;
    for (std::int64_t n = 0; n <= T; ++n)
        rep.ratio.push_back(
            ratio(trace_im.x[static_cast<std::size_t>(n)], trace_i.x[static_cast<std::size_t>(n)],
                  xs, dom));

    bool termwise = true;
    for (std::int64_t k = 0; k < T; ++k) {
        const double ak = a.eval(k);
        const double bk = b.eval(k);
        const double cap = (1.0 - alpha1) * ak / (1.0 + alpha2 * (1.0 - ak + alpha1 * ak));
        if (bk > cap && termwise) {
            termwise = false;
            rep.first_violation = k;
        }
        if (1.0 - bk - alpha2 * bk * (1.0 - ak + alpha1 * ak) <= 0.0)
            rep.lower_hypothesis_ok = false;
    }
    rep.cond_holds = termwise && b.series_class() == SeriesClass::Divergent;

    // Flatness of the ratio tail: relative spread over the last quarter.
    const std::size_t lo = rep.ratio.size() - rep.ratio.size() / 4;
    double mx = 0.0, mn = std::numeric_limits<double>::infinity();
    for (std::size_t i = lo; i < rep.ratio.size(); ++i) {
        mx = std::max(mx, rep.ratio[i]);
        mn = std::min(mn, rep.ratio[i]);
    }
    rep.last_quartile_variation = mx > 0.0 ? (mx - mn) / mx : 0.0;

    if (rep.cond_holds) {
        rep.verdict = ComparisonVerdict::FasterIM;
    } else {
        // "Both converge" proxy at finite horizons: three decades of decay
        // from Err_0 = 1 separates the converging runs from the plateaued
        // ones without demanding machine-level convergence.
        const bool both_converged =
            trace_i.err.back() <= 1e-3 && trace_im.err.back() <= 1e-3;
        rep.verdict = (both_converged && rep.last_quartile_variation < 0.10)
                          ? ComparisonVerdict::PositiveLimit
                          : ComparisonVerdict::Inconclusive;
    }
    return rep;
}

} // namespace oeb
