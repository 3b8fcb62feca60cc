#pragma once

namespace oeb {

// Kahan compensated accumulator. Keeps partial sums of O(1e5) schedule terms
// accurate enough to serve as rate-ratio denominators.
class KahanSum {
  public:
    void add(double x) {
        const double y = x - comp_;
        const double t = sum_ + y;
        comp_ = (t - sum_) - y;
        sum_ = t;
    }
    double value() const { return sum_; }

  private:
    double sum_ = 0.0;
    double comp_ = 0.0;
};

} // namespace oeb
