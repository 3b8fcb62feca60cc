#pragma once

#include <cmath>
#include <limits>

namespace oeb {

// Running product of signed factors, tracked simultaneously in linear space
// and as (sign, log|.|). The linear track underflows for horizons like 1e5;
// the log track does not. Both tracks must agree to 1e-12 relative wherever
// the linear value is a normal double (see test suite).
class RunningProduct {
  public:
    void multiply(double factor) {
        linear_ *= factor;
        if (factor == 0.0) {
            sign_ = 0;
            log_abs_ = -std::numeric_limits<double>::infinity();
        } else if (sign_ != 0) {
            if (factor < 0.0) sign_ = -sign_;
            log_abs_ += std::log(std::fabs(factor));
        }
    }

    // Signed product in linear space; may underflow to (+/-)0.
    double value() const { return linear_; }
    // Natural log of |product|; -inf once a zero factor was seen.
    double log_abs() const { return log_abs_; }
    int sign() const { return sign_; }
    // Underflow-safe signed value, recovered from the log track.
    double value_from_log() const {
        return sign_ == 0 ? 0.0 : sign_ * std::exp(log_abs_);
    }

  private:
    double linear_ = 1.0;
    double log_abs_ = 0.0;
    int sign_ = 1;
};

} // namespace oeb
