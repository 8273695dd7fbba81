#pragma once

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <utility>
#include <vector>

#include "fuzzpval/grid.hpp"

namespace fuzzpval {

struct Interval {
  double lo;
  double hi;

  Interval(double lo_, double hi_) : lo(lo_), hi(hi_) {
    if (!(lo <= hi)) throw std::invalid_argument("Interval: need lo <= hi");
  }

  double width() const { return hi - lo; }
  bool contains(double u) const { return u >= lo && u <= hi; }
};

// A fuzzy set sampled on a strictly increasing grid; between grid points the
// membership function is the linear interpolant, outside the grid it is 0.
class MembershipCurve {
 public:
  MembershipCurve(std::vector<double> grid, std::vector<double> values)
      : grid_(std::move(grid)), values_(std::move(values)) {
    if (grid_.size() != values_.size()) {
      throw std::invalid_argument("MembershipCurve: grid/value size mismatch");
    }
    if (grid_.size() < 2) {
      throw std::invalid_argument("MembershipCurve: need at least 2 points");
    }
    for (std::size_t i = 1; i < grid_.size(); ++i) {
      if (!(grid_[i - 1] < grid_[i])) {
        throw std::invalid_argument("MembershipCurve: grid must be strictly increasing");
      }
    }
    for (double v : values_) {
      if (!(v >= 0.0 && v <= 1.0)) {
        throw std::invalid_argument("MembershipCurve: memberships must lie in [0, 1]");
      }
    }
    meta_ = GridSpec{grid_.front(), grid_.back(), static_cast<int>(grid_.size())};
  }

  std::size_t size() const { return grid_.size(); }
  const std::vector<double>& grid() const { return grid_; }
  const std::vector<double>& values() const { return values_; }
  const GridSpec& meta() const { return meta_; }
  double domain_lo() const { return grid_.front(); }
  double domain_hi() const { return grid_.back(); }

  double height() const {
    return *std::max_element(values_.begin(), values_.end());
  }

  // index of the largest membership; first one on ties
  std::size_t argmax() const {
    return static_cast<std::size_t>(
        std::max_element(values_.begin(), values_.end()) - values_.begin());
  }

  double operator()(double u) const {
    if (u < grid_.front() || u > grid_.back()) return 0.0;
    const auto it = std::upper_bound(grid_.begin(), grid_.end(), u);
    if (it == grid_.end()) return values_.back();
    const std::size_t j = static_cast<std::size_t>(it - grid_.begin());
    if (j == 0) return values_.front();
    const double t = (u - grid_[j - 1]) / (grid_[j] - grid_[j - 1]);
    return values_[j - 1] + t * (values_[j] - values_[j - 1]);
  }

 private:
  std::vector<double> grid_;
  std::vector<double> values_;
  GridSpec meta_;
};

// Strong alpha-cut {u : mu(u) > alpha} of the interpolated curve, stored as
// the disjoint union of closed intervals (boundaries located to within the
// refinement tolerance).
struct AlphaCut {
  double alpha;
  std::vector<Interval> intervals;

  bool empty() const { return intervals.empty(); }

  Interval hull() const {
    if (empty()) throw std::logic_error("AlphaCut: hull of an empty cut");
    return Interval(intervals.front().lo, intervals.back().hi);
  }

  double total_width() const {
    double w = 0.0;
    for (const auto& iv : intervals) w += iv.width();
    return w;
  }
};

namespace detail {

// Crossing of the linear interpolant with level alpha on [lo, hi], where one
// endpoint is above and the other is not; bisection keeps the same code path
// as any future non-linear refinement.
inline double bisect_crossing(double lo, double mu_lo, double hi, double mu_hi,
                              double alpha, double tol) {
  bool above_lo = mu_lo > alpha;
  while (hi - lo > tol) {
    const double mid = 0.5 * (lo + hi);
    const double t = (mid - lo) / (hi - lo);
    const double mu_mid = mu_lo + t * (mu_hi - mu_lo);
    const bool above_mid = mu_mid > alpha;
    if (above_mid == above_lo) {
      lo = mid;
      mu_lo = mu_mid;
    } else {
      hi = mid;
      mu_hi = mu_mid;
    }
    above_lo = mu_lo > alpha;
  }
  return 0.5 * (lo + hi);
}

}  // namespace detail

inline AlphaCut strong_cut(const MembershipCurve& c, double alpha,
                           double boundary_tol = 1e-6) {
  if (!(alpha >= 0.0 && alpha <= 1.0)) {
    throw std::domain_error("strong_cut: alpha must lie in [0, 1]");
  }
  const auto& g = c.grid();
  const auto& v = c.values();
  AlphaCut cut{alpha, {}};
  std::size_t i = 0;
  while (i < g.size()) {
    if (!(v[i] > alpha)) {
      ++i;
      continue;
    }
    std::size_t j = i;
    while (j + 1 < g.size() && v[j + 1] > alpha) ++j;
    double lo = g[i];
    if (i > 0) {
      lo = detail::bisect_crossing(g[i - 1], v[i - 1], g[i], v[i], alpha,
                                   boundary_tol);
    }
    double hi = g[j];
    if (j + 1 < g.size()) {
      hi = detail::bisect_crossing(g[j], v[j], g[j + 1], v[j + 1], alpha,
                                   boundary_tol);
    }
    cut.intervals.emplace_back(lo, hi);
    i = j + 1;
  }
  return cut;
}

// Pointwise inclusion a <= b on a shared grid; resampling onto a common grid
// is the caller's job.
inline bool included_in(const MembershipCurve& a, const MembershipCurve& b,
                        double tol = 1e-12) {
  if (a.grid() != b.grid()) {
    throw std::domain_error("included_in: curves must share one grid");
  }
  for (std::size_t i = 0; i < a.size(); ++i) {
    if (a.values()[i] > b.values()[i] + tol) return false;
  }
  return true;
}

inline double triangular_value(double center, double half_width, double u) {
  return std::max(0.0, 1.0 - std::fabs(u - center) / half_width);
}

inline MembershipCurve triangular_curve(double center, double half_width,
                                        const GridSpec& spec) {
  if (!(half_width > 0.0)) {
    throw std::invalid_argument("triangular_curve: half_width must be positive");
  }
  auto grid = linspace(spec);
  std::vector<double> vals(grid.size());
  for (std::size_t i = 0; i < grid.size(); ++i) {
    vals[i] = triangular_value(center, half_width, grid[i]);
  }
  return MembershipCurve(std::move(grid), std::move(vals));
}

}  // namespace fuzzpval
