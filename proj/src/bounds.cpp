#include "oeb/bounds.hpp"

#include <cmath>
#include <string>

#include "oeb/errors.hpp"
#include "oeb/log_product.hpp"
#include "oeb/summation.hpp"

namespace oeb {

namespace {

void check_alphas(double a1, double a2) {
    if (!(a1 >= 0.0 && a1 <= 1.0 && a2 >= 0.0 && a2 <= 1.0))
        raise(Errc::BadAlpha, "alpha values must lie in [0,1]");
    const double s = a1 + a2;
    if (!(s > 0.0 && s < 2.0))
        raise(Errc::BadAlpha, "alpha1 + alpha2 must lie in (0,2)");
}

double ish_upper_factor(double a, double b, double a1, double a2) {
    return 1.0 - b + a2 * b * (1.0 - a + a1 * a);
}
double ish_lower_factor(double a, double b, double a1, double a2) {
    return 1.0 - b - a2 * b * (1.0 - a + a1 * a);
}

BoundsTrace upper_trace(SchemeId scheme, const Schedule& a, const Schedule& b, double a1,
                        double a2, std::int64_t N) {
    BoundsTrace tr;
    tr.scheme = scheme;
    RunningProduct p;
    for (std::int64_t k = 0; k <= N; ++k) {
        const double ak = a.eval(k);
        const double bk = b.eval(k);
        double f;
        if (scheme == SchemeId::Ishikawa) {
            f = ish_upper_factor(ak, bk, a1, a2);
            tr.a_aux.push_back(1.0 + a2 * (1.0 - ak + a1 * ak));
        } else {
            f = (1.0 - ak + a1 * ak) * (1.0 - bk + a2 * bk);
        }
        p.multiply(f);
        tr.u_factors.push_back(f);
        tr.u.push_back(p.value());
        tr.log_u.push_back(p.log_abs());
    }
    return tr;
}

BoundsTrace lower_trace(SchemeId scheme, const Schedule& a, const Schedule& b, double a1,
                        double a2, std::int64_t N, bool signed_mode) {
    BoundsTrace tr;
    tr.scheme = scheme;
    tr.lower_defined = true;
    RunningProduct p;
    for (std::int64_t k = 0; k <= N; ++k) {
        const double ak = a.eval(k);
        const double bk = b.eval(k);
        double f;
        int bad = 0;
        if (scheme == SchemeId::Ishikawa) {
            f = ish_lower_factor(ak, bk, a1, a2);
            tr.a_aux.push_back(1.0 + a2 * (1.0 - ak + a1 * ak));
            if (f <= 0.0) bad = 1;
        } else {
            const double fa = 1.0 - ak - a1 * ak;
            const double fb = 1.0 - bk - a2 * bk;
            f = fa * fb;
            if (fa <= 0.0) bad = 1;
            else if (fb <= 0.0) bad = 2;
        }
        if (bad != 0 && tr.lower_defined) {
            if (!signed_mode)
                raise(Errc::LowerUndefined,
                      "lower factor " + std::to_string(bad) + " is " + std::to_string(f) +
                          " at k=" + std::to_string(k),
                      k);
            tr.lower_defined = false;
            tr.first_lower_violation = k;
            tr.violating_factor = bad;
        }
        p.multiply(f);
        tr.l_factors.push_back(f);
        tr.l.push_back(p.value());
        tr.log_abs_l.push_back(p.log_abs());
        tr.sign_l.push_back(p.sign());
    }
    return tr;
}

} // namespace

BoundsTrace oueb_ishikawa(const Schedule& a, const Schedule& b, double a1, double a2,
                          std::int64_t N) {
    check_alphas(a1, a2);
    if (N < 0) raise(Errc::PreconditionViolated, "horizon must be >= 0", N);
    return upper_trace(SchemeId::Ishikawa, a, b, a1, a2, N);
}

BoundsTrace oueb_modified(const Schedule& a, const Schedule& b, double a1, double a2,
                          std::int64_t N) {
    check_alphas(a1, a2);
    if (N < 0) raise(Errc::PreconditionViolated, "horizon must be >= 0", N);
    return upper_trace(SchemeId::ModifiedIshikawa, a, b, a1, a2, N);
}

BoundsTrace oleb_ishikawa(const Schedule& a, const Schedule& b, double a1, double a2,
                          std::int64_t N) {
    check_alphas(a1, a2);
    return lower_trace(SchemeId::Ishikawa, a, b, a1, a2, N, false);
}

BoundsTrace oleb_ishikawa_signed(const Schedule& a, const Schedule& b, double a1, double a2,
                                 std::int64_t N) {
    check_alphas(a1, a2);
    return lower_trace(SchemeId::Ishikawa, a, b, a1, a2, N, true);
}

BoundsTrace oleb_modified(const Schedule& a, const Schedule& b, double a1, double a2,
                          std::int64_t N) {
    check_alphas(a1, a2);
    return lower_trace(SchemeId::ModifiedIshikawa, a, b, a1, a2, N, false);
}

BoundsTrace oleb_modified_signed(const Schedule& a, const Schedule& b, double a1, double a2,
                                 std::int64_t N) {
    check_alphas(a1, a2);
    return lower_trace(SchemeId::ModifiedIshikawa, a, b, a1, a2, N, true);
}

const char* to_string(TriState t) {
    switch (t) {
        case TriState::Yes: return "yes";
        case TriState::No: return "no";
        case TriState::Unknown: return "unknown";
    }
    return "?";
}

namespace {
TriState from_class(SeriesClass c) {
    switch (c) {
        case SeriesClass::Divergent: return TriState::Yes;
        case SeriesClass::Convergent: return TriState::No;
        case SeriesClass::Unknown: return TriState::Unknown;
    }
    return TriState::Unknown;
}

// Three-valued OR over "this weighted series diverges" claims.
TriState tri_or(TriState x, TriState y) {
    if (x == TriState::Yes || y == TriState::Yes) return TriState::Yes;
    if (x == TriState::Unknown || y == TriState::Unknown) return TriState::Unknown;
    return TriState::No;
}
} // namespace

ConvergencePrediction predict_convergence(SchemeId scheme, double alpha1, double alpha2,
                                          SeriesClass class_a, SeriesClass class_b,
                                          SeriesClass class_ab, SeriesClass class_a_plus_b) {
    check_alphas(alpha1, alpha2);
    ConvergencePrediction pred;
    pred.scheme = scheme;
    pred.chi_alpha2_eq_1 = (alpha2 == 1.0);
    if (scheme == SchemeId::Ishikawa || scheme == SchemeId::Mann || scheme == SchemeId::Picard) {
        if (alpha2 != 1.0) {
            pred.upper_to_zero = from_class(class_b);
            pred.rationale = "alpha2<1: U->0 iff sum b_k diverges";
        } else {
            pred.upper_to_zero = from_class(class_ab);
            pred.rationale = "alpha2=1: U->0 iff sum a_k b_k diverges";
        }
        pred.lower_to_zero = from_class(class_b);
    } else {
        // Modified scheme: (1-alpha1) sum a_k + (1-alpha2) sum b_k, branch-wise.
        TriState a_part = alpha1 < 1.0 ? from_class(class_a) : TriState::No;
        TriState b_part = alpha2 < 1.0 ? from_class(class_b) : TriState::No;
        pred.upper_to_zero = tri_or(a_part, b_part);
        pred.rationale = "U->0 iff (1-a1) sum a_k + (1-a2) sum b_k diverges";
        pred.lower_to_zero = from_class(class_a_plus_b);
    }
    return pred;
}

LogSandwich log_sandwich(SchemeId scheme, const Schedule& a, const Schedule& b, double a1,
                         double a2, std::int64_t N) {
    check_alphas(a1, a2);
    LogSandwich out;
    KahanSum log_u, log_l;
    KahanSum sum_b, sum_b_over_lower;
    KahanSum u_lo_acc, u_hi_acc, l_lo_acc, l_hi_acc;
    bool lower_ok = true;

    for (std::int64_t k = 0; k <= N; ++k) {
        const double ak = a.eval(k);
        const double bk = b.eval(k);
        if (scheme == SchemeId::Ishikawa) {
            const double fu = ish_upper_factor(ak, bk, a1, a2);
            if (fu <= 0.0)
                raise(Errc::NonpositiveFactor,
                      "upper factor " + std::to_string(fu) + " at k=" + std::to_string(k), k);
            log_u.add(std::log(fu));
            sum_b.add(bk);
            const double fl = ish_lower_factor(ak, bk, a1, a2);
            if (fl <= 0.0) lower_ok = false;
            if (lower_ok) {
                log_l.add(std::log(fl));
                sum_b_over_lower.add(bk / fl);
            }
        } else {
            const double fa = 1.0 - ak + a1 * ak;
            const double fb = 1.0 - bk + a2 * bk;
            if (fa <= 0.0 || fb <= 0.0)
                raise(Errc::NonpositiveFactor, "upper factor vanished at k=" + std::to_string(k),
                      k);
            log_u.add(std::log(fa) + std::log(fb));
            u_lo_acc.add(-(1.0 - a1) * ak / fa - (1.0 - a2) * bk / fb);
            u_hi_acc.add(-(1.0 - a1) * ak - (1.0 - a2) * bk);
            const double ga = 1.0 - ak - a1 * ak;
            const double gb = 1.0 - bk - a2 * bk;
            if (ga <= 0.0 || gb <= 0.0) lower_ok = false;
            if (lower_ok) {
                const double s1 = 1.0 + a1, s2 = 1.0 + a2;
                log_l.add(std::log(ga) + std::log(gb));
                l_lo_acc.add(-(s1 * ak / (1.0 - s1 * ak) + s2 * bk / (1.0 - s2 * bk)));
                l_hi_acc.add(-(s1 * ak + s2 * bk));
            }
        }
    }

    out.log_u = log_u.value();
    if (scheme == SchemeId::Ishikawa) {
        // (alpha1 alpha2 - 1)/(alpha1 alpha2) sum b <= log U <= (alpha2 - 1) sum b
        if (a1 * a2 > 0.0) out.u_lo = (a1 * a2 - 1.0) / (a1 * a2) * sum_b.value();
        out.u_hi = (a2 - 1.0) * sum_b.value();
        if (lower_ok) {
            out.log_l = log_l.value();
            out.l_lo = -(1.0 + a2) * sum_b_over_lower.value();
            out.l_hi = -(1.0 + a1 * a2) * sum_b.value();
        }
    } else {
        out.u_lo = u_lo_acc.value();
        out.u_hi = u_hi_acc.value();
        if (lower_ok) {
            out.log_l = log_l.value();
            out.l_lo = l_lo_acc.value();
            out.l_hi = l_hi_acc.value();
        }
    }
    return out;
}

SeriesEquivWitness series_equiv_witness(const Schedule& a,
                                        const std::function<double(std::int64_t)>& u,
                                        double u_max, std::int64_t N) {
    if (N < 4) raise(Errc::PreconditionViolated, "witness horizon must be >= 4", N);
    SeriesEquivWitness w;
    w.termwise_lower_ok = true;
    const std::int64_t tail_start = N - N / 4;
    for (std::int64_t k = 0; k < N; ++k) {
        const double ak = a.eval(k);
        const double uk = u(k);
        if (std::fabs(uk) > u_max + 1e-15)
            raise(Errc::PreconditionViolated,
                  "u_k exceeds the declared bound at k=" + std::to_string(k), k);
        const double denom = 1.0 - ak * uk;
        if (denom <= 0.0)
            raise(Errc::PreconditionViolated,
                  "1 - a_k u_k must stay positive, failed at k=" + std::to_string(k), k);
        if (ak / denom < ak) w.termwise_lower_ok = false;
        if (k >= tail_start && ak > 0.0)
            w.ratio_tail = std::max(w.ratio_tail, std::fabs(1.0 / denom - 1.0));
    }
    return w;
}

} // namespace oeb
