#include "oeb/iteration.hpp"

#include <cmath>
#include <limits>

#include "oeb/errors.hpp"
#include "oeb/ratio.hpp"

namespace oeb {

namespace {
constexpr double kNumericFloor = 1e-300;
const double kNegInf = -std::numeric_limits<double>::infinity();

bool bitwise_equal(const Eigen::VectorXd& a, const Eigen::VectorXd& b) {
    return (a.array() == b.array()).all();
}

// Exact per-step error multiplier of an affine-extremal pair; s is +alpha
// for a map toward x* and -alpha for a reflected one.
double signed_alpha(const NonExpansiveMap& t) {
    return t.rule() == MapRule::AffineReflectedFP ? -t.alpha() : t.alpha();
}

double affine_step_multiplier(SchemeId scheme, double a, double b, const MapPair& pair) {
    const double s1 = signed_alpha(pair.t1);
    const double s2 = signed_alpha(pair.t2);
    const double c1 = 1.0 - a + s1 * a;
    switch (scheme) {
        case SchemeId::Picard: return s2;
        case SchemeId::Mann: return 1.0 - b + s2 * b;
        case SchemeId::Ishikawa: return 1.0 - b + s2 * b * c1;
        case SchemeId::ModifiedIshikawa: return (1.0 - b + s2 * b) * c1;
    }
    return 1.0;
}
} // namespace

const char* to_string(SchemeId s) {
    switch (s) {
        case SchemeId::Picard: return "picard";
        case SchemeId::Mann: return "mann";
        case SchemeId::Ishikawa: return "ishikawa";
        case SchemeId::ModifiedIshikawa: return "modified-ishikawa";
    }
    return "?";
}

SchemeId scheme_from_string(std::string_view name) {
    if (name == "picard") return SchemeId::Picard;
    if (name == "mann") return SchemeId::Mann;
    if (name == "ishikawa") return SchemeId::Ishikawa;
    if (name == "modified-ishikawa" || name == "im") return SchemeId::ModifiedIshikawa;
    raise(Errc::ConfigError, "unknown scheme '" + std::string(name) + "'");
}

std::pair<Eigen::VectorXd, Eigen::VectorXd> step_ishikawa(const Eigen::VectorXd& x, double a,
                                                          double b, const MapPair& pair) {
    Eigen::VectorXd y = (1.0 - a) * x + a * pair.t1.apply(x);
    Eigen::VectorXd xn = (1.0 - b) * x + b * pair.t2.apply(y);
    return {std::move(y), std::move(xn)};
}

std::pair<Eigen::VectorXd, Eigen::VectorXd> step_modified_ishikawa(const Eigen::VectorXd& x,
                                                                   double a, double b,
                                                                   const MapPair& pair) {
    Eigen::VectorXd y = (1.0 - a) * x + a * pair.t1.apply(x);
    Eigen::VectorXd xn = (1.0 - b) * y + b * pair.t2.apply(y);
    return {std::move(y), std::move(xn)};
}

IterationTrace run(SchemeId scheme, const MapPair& pair, const Schedule& a, const Schedule& b,
                   const Eigen::VectorXd& x0, std::int64_t N, double floor) {
    if (N < 1) raise(Errc::PreconditionViolated, "horizon must be >= 1", N);
    if (floor < 0.0) raise(Errc::PreconditionViolated, "floor must be >= 0");
    const Domain& dom = pair.domain();
    const Eigen::VectorXd& xs = pair.common_fixed_point;
    if (!dom.contains(x0)) raise(Errc::OutOfDomain, "x0 outside the pair's domain");

    IterationTrace tr;
    tr.scheme = scheme;
    tr.x0 = x0;
    tr.x_star = xs;
    tr.domain = dom;
    tr.started_at_fixed_point = bitwise_equal(x0, xs);
    const bool affine = pair.affine_extremal();
    const double norm0 = dom.norm(x0 - xs);

    tr.x.reserve(static_cast<std::size_t>(N) + 1);
    tr.err.reserve(static_cast<std::size_t>(N) + 1);
    tr.log10_err.reserve(static_cast<std::size_t>(N) + 1);

    double log10_rec = 0.0; // affine pairs: exact log10 recurrence of Err
    auto push_state = [&](const Eigen::VectorXd& xn) {
        tr.x.push_back(xn);
        const double e = ratio(xn, x0, xs, dom);
        tr.err.push_back(e);
        const double abs_err = dom.norm(xn - xs);
        if (abs_err >= kNumericFloor || tr.started_at_fixed_point) {
            tr.log10_err.push_back(e > 0.0 ? std::log10(e) : kNegInf);
        } else if (affine) {
            tr.log10_err.push_back(log10_rec);
        } else {
            tr.log10_err.push_back(-300.0);
            tr.status = TraceStatus::Stalled;
        }
        return abs_err;
    };

    push_state(x0);
    Eigen::VectorXd x = x0;
    for (std::int64_t n = 0; n < N; ++n) {
        const double an = a.eval(n);
        const double bn = b.eval(n);
        Eigen::VectorXd xn;
        switch (scheme) {
            case SchemeId::Picard: {
                xn = pair.t2.apply(x);
                break;
            }
            case SchemeId::Mann: {
                xn = (1.0 - bn) * x + bn * pair.t2.apply(x);
                break;
            }
            case SchemeId::Ishikawa: {
                auto [y, next] = step_ishikawa(x, an, bn, pair);
                tr.y.push_back(std::move(y));
                xn = std::move(next);
                break;
            }
            case SchemeId::ModifiedIshikawa: {
                auto [y, next] = step_modified_ishikawa(x, an, bn, pair);
                tr.y.push_back(std::move(y));
                xn = std::move(next);
                break;
            }
        }
        if (!dom.contains(xn))
            raise(Errc::OutOfDomain, "iterate escaped the domain at step " + std::to_string(n),
                  n);
        if (affine) {
            const double m = std::fabs(affine_step_multiplier(scheme, an, bn, pair));
            log10_rec += m > 0.0 ? std::log10(m) : kNegInf;
        }
        const double abs_err = push_state(xn);
        x = std::move(xn);
        if (floor > 0.0 && abs_err < floor * norm0) {
            tr.status = TraceStatus::ConvergedEarly;
            break;
        }
    }
    return tr;
}

} // namespace oeb
