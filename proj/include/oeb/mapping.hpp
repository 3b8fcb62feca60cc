#pragma once

#include <Eigen/Core>
#include <cstdint>
#include <functional>
#include <string>
#include <vector>

namespace oeb {

enum class NormKind { Euclidean, Max, Sum };

// Axis-aligned box in R^d with a selected norm. All experiment domains are
// 1-d intervals; d > 1 exercises the norm generality of the estimates.
struct Domain {
    Eigen::VectorXd lower;
    Eigen::VectorXd upper;
    NormKind norm_kind = NormKind::Euclidean;

    int dimension() const { return static_cast<int>(lower.size()); }
    double norm(const Eigen::VectorXd& v) const;
    // Membership with a small ulp-scale slack so convex combinations that
    // round just past a face still count as inside.
    bool contains(const Eigen::VectorXd& x) const;
    // Signed distance outside the box (max over components; <= 0 inside).
    double escape(const Eigen::VectorXd& x) const;
    bool symmetric_about(const Eigen::VectorXd& center) const;

    static Domain interval(double lo, double hi, NormKind nk = NormKind::Euclidean);
    static Domain symmetric_box(const Eigen::VectorXd& center, double radius,
                                NormKind nk = NormKind::Euclidean);
};

enum class MapRule { AffineTowardFP, AffineReflectedFP, PaperSqrt, PaperSine, Custom };

const char* to_string(MapRule r);
const char* to_string(NormKind n);

// A self-map of a domain with a declared constant alpha in [0,1] such that
// ||T(x) - T(y)|| <= alpha ||x - y||. The constant is declared, not derived;
// verify_nonexpansive probes it by sampling.
class NonExpansiveMap {
  public:
    using Fn = std::function<Eigen::VectorXd(const Eigen::VectorXd&)>;

    NonExpansiveMap(std::string id, double alpha, Domain domain, MapRule rule,
                    Eigen::VectorXd x_star, Fn fn);

    // Throws OutOfDomain for x outside the box (a scheme bug: convex
    // combinations of in-domain points must stay in-domain).
    Eigen::VectorXd apply(const Eigen::VectorXd& x) const;

    const std::string& id() const { return id_; }
    double alpha() const { return alpha_; }
    const Domain& domain() const { return domain_; }
    MapRule rule() const { return rule_; }
    // Fixed point used by the affine rules; for the built-in experiment
    // maps, the known common fixed point. Empty when not applicable.
    const Eigen::VectorXd& x_star() const { return x_star_; }

  private:
    std::string id_;
    double alpha_;
    Domain domain_;
    MapRule rule_;
    Eigen::VectorXd x_star_;
    Fn fn_;
};

// T(x) = alpha x + (1-alpha) x*; the equality witness of the upper bounds.
NonExpansiveMap make_extremal_upper(double alpha, const Eigen::VectorXd& x_star,
                                    const Domain& domain);

// T(x) = -alpha x + (1+alpha) x*; the equality witness of the lower bounds.
// The domain must be symmetric about x*, else T would leave it.
NonExpansiveMap make_extremal_lower(double alpha, const Eigen::VectorXd& x_star,
                                    const Domain& domain);

// The two 1-d experiment mappings: T1(x) = sqrt(a1 x + 1 - a1) and
// T2(x) = a2 sin(x-1) + 1 on [1/4, 3], with common fixed point 1.
NonExpansiveMap make_paper_sqrt(double alpha1, const Domain& domain);
NonExpansiveMap make_paper_sine(double alpha2, const Domain& domain);

struct MapPair {
    NonExpansiveMap t1;
    NonExpansiveMap t2;
    Eigen::VectorXd common_fixed_point;

    const Domain& domain() const { return t1.domain(); }
    bool affine_extremal() const;
};

// T1, T2 of the experiments on [1/4, 3] with x* = 1.
MapPair paper_pair(double alpha1, double alpha2);
// Both maps affine toward x* (upper-bound equality case).
MapPair extremal_upper_pair(double alpha1, double alpha2, const Eigen::VectorXd& x_star,
                            const Domain& domain);
// T1 toward, T2 reflected (Ishikawa lower-bound equality case).
MapPair extremal_lower_pair(double alpha1, double alpha2, const Eigen::VectorXd& x_star,
                            const Domain& domain);
// Both maps reflected (modified-scheme lower-bound equality case).
MapPair extremal_reflected_pair(double alpha1, double alpha2, const Eigen::VectorXd& x_star,
                                const Domain& domain);

double fixed_point_residual(const NonExpansiveMap& t, const Eigen::VectorXd& x);

struct NonexpansivenessReport {
    double max_ratio = 0.0;   // max ||T(x)-T(y)|| / ||x-y|| over sampled pairs
    double max_escape = 0.0;  // max signed distance of T(x) outside the box
    bool pass = false;        // max_ratio <= alpha (1 + 1e-12) and max_escape <= 0
};

NonexpansivenessReport verify_nonexpansive(const NonExpansiveMap& t, int sample_count,
                                           std::uint64_t seed);

} // namespace oeb
