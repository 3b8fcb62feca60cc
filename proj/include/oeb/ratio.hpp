#pragma once

#include <Eigen/Core>

#include "oeb/mapping.hpp"

namespace oeb {

// Piecewise error ratio:
//   ||u - p|| / ||x - p||  if x != p,
//   1                      if u != x = p,
//   0                      if u = x = p.
// Equality is exact bitwise comparison of the stored vectors, which makes
// the rule discontinuous at x = p; the branch values are asserted verbatim.
inline double ratio(const Eigen::VectorXd& u, const Eigen::VectorXd& x,
                    const Eigen::VectorXd& p, const Domain& d) {
    const bool x_is_p = (x.array() == p.array()).all();
    if (!x_is_p) return d.norm(u - p) / d.norm(x - p);
    const bool u_is_p = (u.array() == p.array()).all();
    return u_is_p ? 0.0 : 1.0;
}

} // namespace oeb
