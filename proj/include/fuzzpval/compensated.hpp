#pragma once

#include <cmath>

namespace fuzzpval {

// Neumaier-compensated accumulator. Tail sums over all (m+1)(n+1) outcome
// pairs must stay stable to 1e-12, which plain summation does not guarantee
// once the term count grows.
class CompensatedSum {
 public:
  void add(double x) noexcept {
    const double t = sum_ + x;
    if (std::fabs(sum_) >= std::fabs(x)) {
      comp_ += (sum_ - t) + x;
    } else {
      comp_ += (x - t) + sum_;
    }
    sum_ = t;
  }

  double value() const noexcept { return sum_ + comp_; }

 private:
  double sum_ = 0.0;
  double comp_ = 0.0;
};

}  // namespace fuzzpval
