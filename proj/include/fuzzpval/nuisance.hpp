#pragma once

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <vector>

#include "fuzzpval/exact_tail.hpp"
#include "fuzzpval/grid.hpp"

namespace fuzzpval {

// Closed omega interval to maximize over: the full nuisance range of a
// ThetaPoint, or a Berger-Boos restriction of it.
struct NuisanceSet {
  double lower;
  double upper;

  NuisanceSet(double lower_, double upper_) : lower(lower_), upper(upper_) {
    if (!(lower <= upper)) throw std::invalid_argument("NuisanceSet: need lower <= upper");
  }

  static NuisanceSet full_range(const ThetaPoint& theta) {
    return NuisanceSet(theta.omega_lower(), theta.omega_upper());
  }

  double width() const { return upper - lower; }
};

struct SupConfig {
  int grid_points = 1001;   // coarse scan density
  double omega_tol = 1e-8;  // golden-section bracket width target
};

struct SupResult {
  double sup_value;
  double arg_omega;
  int grid_points;
  bool refined;  // maximizer came from golden-section polish, not the raw grid
};

namespace detail {

// Golden-section search for a maximum of f on [a, b]. Applied to brackets
// around grid local maxima, where unimodality is a safe working assumption.
template <typename F>
std::pair<double, double> golden_section_max(F&& f, double a, double b, double tol) {
  constexpr double invphi = 0.6180339887498949;
  double x1 = b - invphi * (b - a);
  double x2 = a + invphi * (b - a);
  double f1 = f(x1);
  double f2 = f(x2);
  while (b - a > tol) {
    if (f1 < f2) {
      a = x1;
      x1 = x2;
      f1 = f2;
      x2 = a + invphi * (b - a);
      f2 = f(x2);
    } else {
      b = x2;
      x2 = x1;
      f2 = f1;
      x1 = b - invphi * (b - a);
      f1 = f(x1);
    }
  }
  return f1 >= f2 ? std::pair{f1, x1} : std::pair{f2, x2};
}

}  // namespace detail

// sup over omega in `set` of the joint tail at the evaluator's theta. Coarse
// uniform scan, then golden-section polish around every candidate: both
// endpoints and each interior grid local maximum. The objective is a
// polynomial of degree <= m+n, so this resolves all modes at desk scale;
// heuristic-complete, not certified.
inline SupResult sup_tail(TailEvaluator& eval, const NuisanceSet& set,
                          const SupConfig& cfg = {}) {
  if (cfg.grid_points < 3) throw std::invalid_argument("SupConfig: grid_points must be >= 3");
  if (!(cfg.omega_tol > 0.0)) throw std::invalid_argument("SupConfig: omega_tol must be positive");
  if (set.width() == 0.0) {
    return SupResult{eval(set.lower), set.lower, cfg.grid_points, false};
  }

  const auto grid = linspace(set.lower, set.upper, cfg.grid_points);
  std::vector<double> vals(grid.size());
  std::size_t best = 0;
  for (std::size_t i = 0; i < grid.size(); ++i) {
    vals[i] = eval(grid[i]);
    if (vals[i] > vals[best]) best = i;
  }

  std::vector<std::size_t> candidates;
  candidates.push_back(0);
  for (std::size_t i = 1; i + 1 < grid.size(); ++i) {
    const bool peak = vals[i] >= vals[i - 1] && vals[i] >= vals[i + 1] &&
                      (vals[i] > vals[i - 1] || vals[i] > vals[i + 1]);
    if (peak) candidates.push_back(i);
  }
  candidates.push_back(grid.size() - 1);
  if (std::find(candidates.begin(), candidates.end(), best) == candidates.end()) {
    candidates.push_back(best);  // covers plateaus with no strict peak
  }

  SupResult out{vals[best], grid[best], cfg.grid_points, false};
  for (std::size_t c : candidates) {
    const double a = grid[c == 0 ? 0 : c - 1];
    const double b = grid[c + 1 == grid.size() ? c : c + 1];
    if (!(a < b)) continue;
    const auto [fv, fx] =
        detail::golden_section_max([&eval](double w) { return eval(w); }, a, b,
                                   cfg.omega_tol);
    if (fv > out.sup_value) {
      out.sup_value = fv;
      out.arg_omega = fx;
      out.refined = true;
    }
  }
  return out;
}

inline SupResult sup_tail(const TwoSampleData& data, const ThetaPoint& theta,
                          const NuisanceSet& set, const SupConfig& cfg = {}) {
  TailEvaluator eval(data, theta);
  return sup_tail(eval, set, cfg);
}

}  // namespace fuzzpval
