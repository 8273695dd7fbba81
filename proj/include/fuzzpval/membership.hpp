#pragma once

#include <algorithm>
#include <cmath>
#include <optional>
#include <stdexcept>
#include <utility>
#include <vector>

#include "fuzzpval/exact_tail.hpp"
#include "fuzzpval/fuzzy.hpp"
#include "fuzzpval/grid.hpp"
#include "fuzzpval/normal.hpp"
#include "fuzzpval/nuisance.hpp"
#include "fuzzpval/parallel.hpp"

namespace fuzzpval {

// H0: theta in Theta0 — a closed interval inside (-1, 1) or a finite list of
// theta points.
class HypothesisSet {
 public:
  static HypothesisSet interval(double lo, double hi) {
    if (!(lo <= hi)) throw std::domain_error("HypothesisSet: need lo <= hi");
    check_range(lo);
    check_range(hi);
    HypothesisSet h;
    h.lo_ = lo;
    h.hi_ = hi;
    return h;
  }

  static HypothesisSet points(std::vector<double> pts) {
    if (pts.empty()) throw std::domain_error("HypothesisSet: empty point list");
    for (double t : pts) check_range(t);
    HypothesisSet h;
    h.points_ = std::move(pts);
    h.lo_ = *std::min_element(h.points_.begin(), h.points_.end());
    h.hi_ = *std::max_element(h.points_.begin(), h.points_.end());
    return h;
  }

  bool is_interval() const { return points_.empty(); }
  double lo() const { return lo_; }
  double hi() const { return hi_; }
  const std::vector<double>& point_list() const { return points_; }

 private:
  static void check_range(double t) {
    if (!(t > -1.0 && t < 1.0)) {
      throw std::domain_error("HypothesisSet: theta values must lie in (-1, 1)");
    }
  }

  HypothesisSet() = default;
  double lo_ = 0.0;
  double hi_ = 0.0;
  std::vector<double> points_;
};

struct BergerBoosConfig {
  double gamma;
  double z;  // the 1 - gamma/2 standard normal quantile

  explicit BergerBoosConfig(double gamma_ = 1e-4)
      : gamma(gamma_), z(0.0) {
    if (!(gamma > 0.0 && gamma < 1.0)) {
      throw std::domain_error("BergerBoosConfig: gamma must lie in (0, 1)");
    }
    z = normal_upper_quantile(gamma / 2.0);
  }
};

struct EvalConfig {
  SupConfig sup{};                          // omega supremum accuracy
  GridSpec theta_grid{-0.999, 0.999, 401};  // default curve grid
  int h0_grid_points = 201;                 // theta scan for extended p-values
  double theta_tol = 1e-6;                  // theta refinement resolution
};

struct ExtendedPValue {
  double theta_lo;
  double theta_hi;
  double p_value;
  double argmax_theta;
  bool refined;
};

// p-value of H0: theta = theta0, read as the membership grade of theta0.
inline double mu_at(const TwoSampleData& data, const ThetaPoint& theta,
                    const EvalConfig& cfg = {}) {
  TailEvaluator eval(data, theta);
  return sup_tail(eval, NuisanceSet::full_range(theta), cfg.sup).sup_value;
}

// Wald interval for omega centered at x/m, intersected with the closed omega
// range of theta. Empty (nullopt) when the intersection is void, or when it
// degenerates to a single point that is not strictly inside the open range —
// the open-inequality intent of the set S.
inline std::optional<NuisanceSet> wald_set(const TwoSampleData& data,
                                           const ThetaPoint& theta,
                                           const BergerBoosConfig& bb) {
  const double center = static_cast<double>(data.x) / data.m;
  const double mm = static_cast<double>(data.m);
  const double half =
      bb.z * std::sqrt(static_cast<double>(data.x) * (data.m - data.x) /
                       (mm * mm * mm));
  const double lo = std::max(center - half, theta.omega_lower());
  const double hi = std::min(center + half, theta.omega_upper());
  if (lo > hi) return std::nullopt;
  if (lo == hi &&
      !(lo > theta.omega_lower() && lo < theta.omega_upper())) {
    return std::nullopt;
  }
  return NuisanceSet(lo, hi);
}

// mu^S(theta) = gamma + sup over the Wald set; empty set contributes 0, so
// the result is exactly gamma there.
inline double mu_bb_at(const TwoSampleData& data, const ThetaPoint& theta,
                       const BergerBoosConfig& bb, const EvalConfig& cfg = {}) {
  const auto set = wald_set(data, theta, bb);
  if (!set) return bb.gamma;
  TailEvaluator eval(data, theta);
  const double sup = sup_tail(eval, *set, cfg.sup).sup_value;
  return std::min(1.0, bb.gamma + sup);
}

namespace detail {

template <typename F>
MembershipCurve sample_curve(const GridSpec& spec, unsigned workers, F&& f) {
  if (spec.count < 2) throw std::domain_error("curve grid: count must be >= 2");
  if (!(spec.lo > -1.0 && spec.hi < 1.0)) {
    throw std::domain_error("curve grid: must lie inside (-1, 1)");
  }
  auto grid = linspace(spec);
  std::vector<double> vals(grid.size());
  parallel_for(grid.size(), workers,
               [&](std::size_t i) { vals[i] = f(grid[i]); });
  return MembershipCurve(std::move(grid), std::move(vals));
}

// Grid scan plus golden-section polish around endpoints and interior local
// maxima; anchors are probed directly (used for theta-hat, where the value
// is exactly 1).
template <typename F>
ExtendedPValue maximize_over_interval(F&& f, double lo, double hi, int count,
                                      double tol,
                                      const std::vector<double>& anchors) {
  ExtendedPValue out{lo, hi, 0.0, lo, false};
  if (lo == hi) {
    out.p_value = f(lo);
    out.argmax_theta = lo;
    return out;
  }
  if (count < 2) throw std::domain_error("maximize_over_interval: count must be >= 2");
  const auto grid = linspace(lo, hi, count);
  std::vector<double> vals(grid.size());
  std::size_t best = 0;
  for (std::size_t i = 0; i < grid.size(); ++i) {
    vals[i] = f(grid[i]);
    if (vals[i] > vals[best]) best = i;
  }
  out.p_value = vals[best];
  out.argmax_theta = grid[best];

  std::vector<std::size_t> candidates;
  candidates.push_back(0);
  for (std::size_t i = 1; i + 1 < grid.size(); ++i) {
    const bool peak = vals[i] >= vals[i - 1] && vals[i] >= vals[i + 1] &&
                      (vals[i] > vals[i - 1] || vals[i] > vals[i + 1]);
    if (peak) candidates.push_back(i);
  }
  candidates.push_back(grid.size() - 1);
  if (std::find(candidates.begin(), candidates.end(), best) == candidates.end()) {
    candidates.push_back(best);
  }
  for (std::size_t c : candidates) {
    const double a = grid[c == 0 ? 0 : c - 1];
    const double b = grid[c + 1 == grid.size() ? c : c + 1];
    if (!(a < b)) continue;
    const auto [fv, fx] = golden_section_max(f, a, b, tol);
    if (fv > out.p_value) {
      out.p_value = fv;
      out.argmax_theta = fx;
      out.refined = true;
    }
  }
  for (double t : anchors) {
    if (t < lo || t > hi) continue;
    const double fv = f(t);
    if (fv > out.p_value) {
      out.p_value = fv;
      out.argmax_theta = t;
      out.refined = false;
    }
  }
  out.p_value = std::clamp(out.p_value, 0.0, 1.0);
  return out;
}

template <typename F>
ExtendedPValue maximize_over_set(F&& f, const HypothesisSet& h, int count,
                                 double tol, const std::vector<double>& anchors) {
  if (h.is_interval()) {
    return maximize_over_interval(f, h.lo(), h.hi(), count, tol, anchors);
  }
  ExtendedPValue out{h.lo(), h.hi(), -1.0, h.lo(), false};
  for (double t : h.point_list()) {
    const double fv = f(t);
    if (fv > out.p_value) {
      out.p_value = fv;
      out.argmax_theta = t;
    }
  }
  out.p_value = std::clamp(out.p_value, 0.0, 1.0);
  return out;
}

inline std::vector<double> theta_hat_anchor(const TwoSampleData& data) {
  const double th = data.theta_hat();
  if (th > -1.0 && th < 1.0) return {th};
  return {};
}

}  // namespace detail

inline MembershipCurve mu_curve(const TwoSampleData& data,
                                const GridSpec& spec = GridSpec{-0.999, 0.999, 401},
                                const EvalConfig& cfg = {}, unsigned workers = 1) {
  return detail::sample_curve(spec, workers, [&](double t) {
    return mu_at(data, ThetaPoint(t), cfg);
  });
}

inline MembershipCurve mu_bb_curve(const TwoSampleData& data,
                                   const BergerBoosConfig& bb,
                                   const GridSpec& spec = GridSpec{-0.999, 0.999, 401},
                                   const EvalConfig& cfg = {},
                                   unsigned workers = 1) {
  return detail::sample_curve(spec, workers, [&](double t) {
    return mu_bb_at(data, ThetaPoint(t), bb, cfg);
  });
}

// sup of mu over Theta0 — Theorem 1b's valid p-value for H0: theta in Theta0,
// a.k.a. the height of the membership curve restricted to Theta0.
inline ExtendedPValue extended_pvalue(const TwoSampleData& data,
                                      const HypothesisSet& h,
                                      const EvalConfig& cfg = {}) {
  return detail::maximize_over_set(
      [&](double t) { return mu_at(data, ThetaPoint(t), cfg); }, h,
      cfg.h0_grid_points, cfg.theta_tol, detail::theta_hat_anchor(data));
}

// Theorem 2b: same construction with the Berger-Boos integrand.
inline ExtendedPValue bb_extended_pvalue(const TwoSampleData& data,
                                         const HypothesisSet& h,
                                         const BergerBoosConfig& bb,
                                         const EvalConfig& cfg = {}) {
  return detail::maximize_over_set(
      [&](double t) { return mu_bb_at(data, ThetaPoint(t), bb, cfg); }, h,
      cfg.h0_grid_points, cfg.theta_tol, detail::theta_hat_anchor(data));
}

// Theorem 1c: the strong alpha-cut of the membership curve is a level-(1-a)
// confidence set; the hull is the conservative interval form.
inline AlphaCut confidence_cut(const MembershipCurve& curve, double alpha) {
  if (!(alpha > 0.0 && alpha < 1.0)) {
    throw std::domain_error("confidence_cut: alpha must lie in (0, 1)");
  }
  return strong_cut(curve, alpha);
}

enum class TestPreference { a_preferred, b_preferred, equal, incomparable };

// Prefer the test whose curve is included in the other's: smaller membership
// everywhere means tighter confidence intervals at every level.
inline TestPreference prefer_test(const MembershipCurve& a,
                                  const MembershipCurve& b) {
  const bool ab = included_in(a, b);
  const bool ba = included_in(b, a);
  if (ab && ba) return TestPreference::equal;
  if (ab) return TestPreference::a_preferred;
  if (ba) return TestPreference::b_preferred;
  return TestPreference::incomparable;
}

}  // namespace fuzzpval
