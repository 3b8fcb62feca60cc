#include "oeb/mapping.hpp"

#include <cmath>
#include <limits>

#include "oeb/errors.hpp"
#include "oeb/prng.hpp"

namespace oeb {

namespace {
constexpr double kEps = std::numeric_limits<double>::epsilon();
}

const char* to_string(MapRule r) {
    switch (r) {
        case MapRule::AffineTowardFP: return "affine-toward-fp";
        case MapRule::AffineReflectedFP: return "affine-reflected-fp";
        case MapRule::PaperSqrt: return "sqrt-contraction";
        case MapRule::PaperSine: return "sine-nonexpansive";
        case MapRule::Custom: return "custom";
    }
    return "?";
}

const char* to_string(NormKind n) {
    switch (n) {
        case NormKind::Euclidean: return "euclidean";
        case NormKind::Max: return "max";
        case NormKind::Sum: return "sum";
    }
    return "?";
}

double Domain::norm(const Eigen::VectorXd& v) const {
    switch (norm_kind) {
        // stableNorm: plain squaring underflows for components below
        // ~1e-154, and the bound-equality checks track errors to 1e-300.
        case NormKind::Euclidean: return v.stableNorm();
        case NormKind::Max: return v.lpNorm<Eigen::Infinity>();
        case NormKind::Sum: return v.lpNorm<1>();
    }
    return v.stableNorm();
}

double Domain::escape(const Eigen::VectorXd& x) const {
    double worst = -std::numeric_limits<double>::infinity();
    for (int i = 0; i < x.size(); ++i) {
        worst = std::max(worst, lower[i] - x[i]);
        worst = std::max(worst, x[i] - upper[i]);
    }
    return worst;
}

bool Domain::contains(const Eigen::VectorXd& x) const {
    const double scale = std::max({1.0, lower.cwiseAbs().maxCoeff(), upper.cwiseAbs().maxCoeff()});
    return escape(x) <= 16.0 * kEps * scale;
}

bool Domain::symmetric_about(const Eigen::VectorXd& center) const {
    const double scale = std::max({1.0, lower.cwiseAbs().maxCoeff(), upper.cwiseAbs().maxCoeff()});
    return ((upper - center) - (center - lower)).cwiseAbs().maxCoeff() <= 16.0 * kEps * scale;
}

Domain Domain::interval(double lo, double hi, NormKind nk) {
    Domain d;
    d.lower = Eigen::VectorXd::Constant(1, lo);
    d.upper = Eigen::VectorXd::Constant(1, hi);
    d.norm_kind = nk;
    return d;
}

Domain Domain::symmetric_box(const Eigen::VectorXd& center, double radius, NormKind nk) {
    Domain d;
    d.lower = center.array() - radius;
    d.upper = center.array() + radius;
    d.norm_kind = nk;
    return d;
}

NonExpansiveMap::NonExpansiveMap(std::string id, double alpha, Domain domain, MapRule rule,
                                 Eigen::VectorXd x_star, Fn fn)
    : id_(std::move(id)), alpha_(alpha), domain_(std::move(domain)), rule_(rule),
      x_star_(std::move(x_star)), fn_(std::move(fn)) {
    if (!(alpha_ >= 0.0 && alpha_ <= 1.0))
        raise(Errc::BadAlpha, "map constant must lie in [0,1], got " + std::to_string(alpha_));
}

Eigen::VectorXd NonExpansiveMap::apply(const Eigen::VectorXd& x) const {
    if (!domain_.contains(x))
        raise(Errc::OutOfDomain, "argument of map '" + id_ + "' escapes its box");
    return fn_(x);
}

NonExpansiveMap make_extremal_upper(double alpha, const Eigen::VectorXd& x_star,
                                    const Domain& domain) {
    if (!domain.contains(x_star))
        raise(Errc::OutOfDomain, "fixed point outside the domain box");
    Eigen::VectorXd xs = x_star;
    return NonExpansiveMap(
        "extremal-upper", alpha, domain, MapRule::AffineTowardFP, xs,
        [alpha, xs](const Eigen::VectorXd& x) -> Eigen::VectorXd {
            return alpha * x + (1.0 - alpha) * xs;
        });
}

NonExpansiveMap make_extremal_lower(double alpha, const Eigen::VectorXd& x_star,
                                    const Domain& domain) {
    if (!domain.contains(x_star))
        raise(Errc::OutOfDomain, "fixed point outside the domain box");
    if (!domain.symmetric_about(x_star))
        raise(Errc::AsymmetricDomain,
              "reflected map needs a box symmetric about its fixed point");
    Eigen::VectorXd xs = x_star;
    return NonExpansiveMap(
        "extremal-lower", alpha, domain, MapRule::AffineReflectedFP, xs,
        [alpha, xs](const Eigen::VectorXd& x) -> Eigen::VectorXd {
            return -alpha * x + (1.0 + alpha) * xs;
        });
}

NonExpansiveMap make_paper_sqrt(double alpha1, const Domain& domain) {
    if (domain.dimension() != 1)
        raise(Errc::ConfigError, "sqrt-contraction map is one-dimensional");
    Eigen::VectorXd xs = Eigen::VectorXd::Constant(1, 1.0);
    return NonExpansiveMap("paper-T1", alpha1, domain, MapRule::PaperSqrt, xs,
                           [alpha1](const Eigen::VectorXd& x) -> Eigen::VectorXd {
                               Eigen::VectorXd r(1);
                               r[0] = std::sqrt(alpha1 * x[0] + 1.0 - alpha1);
                               return r;
                           });
}

NonExpansiveMap make_paper_sine(double alpha2, const Domain& domain) {
    if (domain.dimension() != 1)
        raise(Errc::ConfigError, "sine map is one-dimensional");
    Eigen::VectorXd xs = Eigen::VectorXd::Constant(1, 1.0);
    return NonExpansiveMap("paper-T2", alpha2, domain, MapRule::PaperSine, xs,
                           [alpha2](const Eigen::VectorXd& x) -> Eigen::VectorXd {
                               Eigen::VectorXd r(1);
                               r[0] = alpha2 * std::sin(x[0] - 1.0) + 1.0;
                               return r;
                           });
}

bool MapPair::affine_extremal() const {
    auto affine = [](MapRule r) {
        return r == MapRule::AffineTowardFP || r == MapRule::AffineReflectedFP;
    };
    return affine(t1.rule()) && affine(t2.rule());
}

namespace {
void check_pair(const MapPair& p) {
    const double scale = p.domain().norm(p.common_fixed_point);
    const double tol = 4.0 * kEps * scale + 1e-15;
    if (fixed_point_residual(p.t1, p.common_fixed_point) > tol ||
        fixed_point_residual(p.t2, p.common_fixed_point) > tol)
        raise(Errc::ConfigError, "maps do not share the declared fixed point");
}
} // namespace

MapPair paper_pair(double alpha1, double alpha2) {
    Domain omega = Domain::interval(0.25, 3.0);
    MapPair p{make_paper_sqrt(alpha1, omega), make_paper_sine(alpha2, omega),
              Eigen::VectorXd::Constant(1, 1.0)};
    check_pair(p);
    return p;
}

MapPair extremal_upper_pair(double alpha1, double alpha2, const Eigen::VectorXd& x_star,
                            const Domain& domain) {
    MapPair p{make_extremal_upper(alpha1, x_star, domain),
              make_extremal_upper(alpha2, x_star, domain), x_star};
    check_pair(p);
    return p;
}

MapPair extremal_lower_pair(double alpha1, double alpha2, const Eigen::VectorXd& x_star,
                            const Domain& domain) {
    MapPair p{make_extremal_upper(alpha1, x_star, domain),
              make_extremal_lower(alpha2, x_star, domain), x_star};
    check_pair(p);
    return p;
}

MapPair extremal_reflected_pair(double alpha1, double alpha2, const Eigen::VectorXd& x_star,
                                const Domain& domain) {
    MapPair p{make_extremal_lower(alpha1, x_star, domain),
              make_extremal_lower(alpha2, x_star, domain), x_star};
    check_pair(p);
    return p;
}

double fixed_point_residual(const NonExpansiveMap& t, const Eigen::VectorXd& x) {
    return t.domain().norm(t.apply(x) - x);
}

NonexpansivenessReport verify_nonexpansive(const NonExpansiveMap& t, int sample_count,
                                           std::uint64_t seed) {
    if (sample_count < 2)
        raise(Errc::PreconditionViolated, "need at least two samples");
    const Domain& d = t.domain();
    const int dim = d.dimension();

    auto sample = [&](std::uint64_t idx) {
        Eigen::VectorXd x(dim);
        for (int i = 0; i < dim; ++i) {
            const double u = uniform01_at(seed, idx * static_cast<std::uint64_t>(dim) + i);
            x[i] = d.lower[i] + u * (d.upper[i] - d.lower[i]);
        }
        return x;
    };

    NonexpansivenessReport rep;
    rep.max_escape = -std::numeric_limits<double>::infinity();
    // Pairs closer than 1e-3 of the box diagonal carry only rounding noise
    // at the 1e-12 comparison scale and are skipped (still "distinct pairs",
    // just resolvable ones).
    const double min_gap = 1e-3 * d.norm(d.upper - d.lower);
    Eigen::VectorXd prev = sample(0);
    Eigen::VectorXd prev_img = t.apply(prev);
    rep.max_escape = std::max(rep.max_escape, d.escape(prev_img));
    for (int k = 1; k < sample_count; ++k) {
        Eigen::VectorXd x = sample(static_cast<std::uint64_t>(k));
        Eigen::VectorXd img = t.apply(x);
        rep.max_escape = std::max(rep.max_escape, d.escape(img));
        const double dist = d.norm(x - prev);
        if (dist >= min_gap)
            rep.max_ratio = std::max(rep.max_ratio, d.norm(img - prev_img) / dist);
        prev = x;
        prev_img = img;
    }
    rep.pass = rep.max_ratio <= t.alpha() * (1.0 + 1e-12) && rep.max_escape <= 0.0;
    return rep;
}

} // namespace oeb
