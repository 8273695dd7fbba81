#pragma once

#include <stdexcept>
#include <vector>

namespace fuzzpval {

// Uniform grid over [lo, hi]. Points are generated as lo + span * (i / (n-1))
// so that both endpoints are reproduced exactly and symmetric grids contain
// their midpoint exactly.
struct GridSpec {
  double lo;
  double hi;
  int count;
};

inline std::vector<double> linspace(double lo, double hi, int count) {
  if (count < 2) throw std::invalid_argument("linspace: count must be >= 2");
  if (!(lo <= hi)) throw std::invalid_argument("linspace: need lo <= hi");
  std::vector<double> pts(static_cast<std::size_t>(count));
  const double span = hi - lo;
  const double denom = static_cast<double>(count - 1);
  for (int i = 0; i < count; ++i) {
    pts[static_cast<std::size_t>(i)] = lo + span * (static_cast<double>(i) / denom);
  }
  pts.front() = lo;
  pts.back() = hi;
  return pts;
}

inline std::vector<double> linspace(const GridSpec& spec) {
  return linspace(spec.lo, spec.hi, spec.count);
}

}  // namespace fuzzpval
