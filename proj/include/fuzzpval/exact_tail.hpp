#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <stdexcept>
#include <vector>

#include "fuzzpval/binomial.hpp"
#include "fuzzpval/compensated.hpp"

namespace fuzzpval {

// Observed counts of the two arms: x of m successes vs y of n successes.
struct TwoSampleData {
  int x;
  int m;
  int y;
  int n;

  TwoSampleData(int x_, int m_, int y_, int n_) : x(x_), m(m_), y(y_), n(n_) {
    if (m < 1 || n < 1) throw std::domain_error("TwoSampleData: sizes must be >= 1");
    if (x < 0 || x > m) throw std::domain_error("TwoSampleData: need 0 <= x <= m");
    if (y < 0 || y > n) throw std::domain_error("TwoSampleData: need 0 <= y <= n");
  }

  double theta_hat() const {
    return static_cast<double>(y) / n - static_cast<double>(x) / m;
  }
};

// Hypothesized difference of success probabilities, theta in (-1, 1), plus
// the induced nuisance range max{0,-theta} <= omega <= min{1,1-theta}
// (closure; the tail sum is a polynomial in omega, continuous up to the
// boundary).
class ThetaPoint {
 public:
  explicit ThetaPoint(double theta) : theta_(theta) {
    if (!(theta > -1.0 && theta < 1.0)) {
      throw std::domain_error("ThetaPoint: theta must lie in (-1, 1)");
    }
  }

  double value() const { return theta_; }
  double omega_lower() const { return theta_ < 0.0 ? -theta_ : 0.0; }
  double omega_upper() const { return theta_ > 0.0 ? 1.0 - theta_ : 1.0; }

 private:
  double theta_;
};

namespace detail {

// theta * m * n with the integer product formed exactly first; computed once
// per theta so that score comparisons on both sides of the C-membership
// inequality see the identical rounding.
inline double theta_scale(const TwoSampleData& d, const ThetaPoint& t) {
  return t.value() *
         static_cast<double>(static_cast<std::int64_t>(d.m) * d.n);
}

inline double scaled_score_with_tau(int u, int v, const TwoSampleData& d, double tau) {
  const double duv = static_cast<double>(static_cast<std::int64_t>(d.m) * v -
                                         static_cast<std::int64_t>(d.n) * u);
  return std::fabs(duv - tau);
}

}  // namespace detail

// m*n*|v/n - u/m - theta| evaluated as |m*v - n*u - theta*m*n| with the
// integer part exact. Weak >= against the observed score defines the
// rejection set C; ties in this representation are the real ties.
inline double scaled_score(int u, int v, const TwoSampleData& d, const ThetaPoint& t) {
  if (u < 0 || u > d.m || v < 0 || v > d.n) {
    throw std::domain_error("scaled_score: (u, v) outside the sample space");
  }
  return detail::scaled_score_with_tau(u, v, d, detail::theta_scale(d, t));
}

// Evaluates the joint tail probability P(score(U,V) >= score(x,y)) at fixed
// theta for many omega values. The rejection set depends only on theta, so
// it is computed once at construction and reused across the omega sweep; for
// each u the kept v indices form a prefix plus a suffix of {0..n}.
//
// Instances hold scratch buffers: use one evaluator per thread.
class TailEvaluator {
 public:
  TailEvaluator(const TwoSampleData& data, const ThetaPoint& theta)
      : data_(data), theta_(theta), tau_(detail::theta_scale(data, theta)) {
    observed_ = detail::scaled_score_with_tau(data.x, data.y, data, tau_);
    const std::size_t rows = static_cast<std::size_t>(data.m) + 1;
    low_end_.resize(rows);
    high_start_.resize(rows);
    for (int u = 0; u <= data_.m; ++u) {
      // excluded v's (score < observed) form one contiguous block
      int first_excl = -1;
      int last_excl = -2;
      for (int v = 0; v <= data_.n; ++v) {
        if (detail::scaled_score_with_tau(u, v, data_, tau_) < observed_) {
          if (first_excl < 0) first_excl = v;
          last_excl = v;
        }
      }
      if (first_excl < 0) {
        low_end_[static_cast<std::size_t>(u)] = data_.n;
        high_start_[static_cast<std::size_t>(u)] = data_.n + 1;
      } else {
        low_end_[static_cast<std::size_t>(u)] = first_excl - 1;
        high_start_[static_cast<std::size_t>(u)] = last_excl + 1;
      }
    }
    pmf_x_.resize(rows);
    pmf_y_.resize(static_cast<std::size_t>(data_.n) + 1);
    prefix_.resize(pmf_y_.size());
    suffix_.resize(pmf_y_.size());
  }

  double operator()(double omega) {
    const double lo = theta_.omega_lower();
    const double hi = theta_.omega_upper();
    if (!(omega >= lo - 1e-12 && omega <= hi + 1e-12)) {
      throw std::domain_error("joint_tail: omega outside the nuisance range");
    }
    omega = std::clamp(omega, lo, hi);
    // omega + theta stays in [0,1] in real arithmetic; clamp the rounding
    const double p2 = std::clamp(omega + theta_.value(), 0.0, 1.0);

    fill_pmf(pmf_x_, data_.m, omega);
    fill_pmf(pmf_y_, data_.n, p2);

    CompensatedSum pre;
    for (std::size_t j = 0; j < pmf_y_.size(); ++j) {
      pre.add(pmf_y_[j]);
      prefix_[j] = pre.value();
    }
    CompensatedSum suf;
    for (std::size_t j = pmf_y_.size(); j-- > 0;) {
      suf.add(pmf_y_[j]);
      suffix_[j] = suf.value();
    }

    CompensatedSum total;
    for (int u = 0; u <= data_.m; ++u) {
      const std::size_t su = static_cast<std::size_t>(u);
      double mass = 0.0;
      if (low_end_[su] >= 0) mass += prefix_[static_cast<std::size_t>(low_end_[su])];
      if (high_start_[su] <= data_.n) {
        mass += suffix_[static_cast<std::size_t>(high_start_[su])];
      }
      total.add(pmf_x_[su] * mass);
    }
    return std::clamp(total.value(), 0.0, 1.0);
  }

  double observed_score() const { return observed_; }
  const TwoSampleData& data() const { return data_; }
  const ThetaPoint& theta() const { return theta_; }

 private:
  static void fill_pmf(std::vector<double>& out, int trials, double p) {
    const BinomParams b(trials, p);
    for (int k = 0; k <= trials; ++k) {
      out[static_cast<std::size_t>(k)] = pmf(k, b);
    }
  }

  TwoSampleData data_;
  ThetaPoint theta_;
  double tau_;
  double observed_;
  std::vector<int> low_end_;     // kept: v <= low_end_[u]
  std::vector<int> high_start_;  // kept: v >= high_start_[u]
  std::vector<double> pmf_x_, pmf_y_, prefix_, suffix_;
};

inline double joint_tail(const TwoSampleData& data, const ThetaPoint& theta, double omega) {
  TailEvaluator eval(data, theta);
  return eval(omega);
}

}  // namespace fuzzpval
