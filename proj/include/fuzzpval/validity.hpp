#pragma once

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>
#include <string>
#include <vector>

#include "fuzzpval/binomial.hpp"
#include "fuzzpval/compensated.hpp"
#include "fuzzpval/grid.hpp"
#include "fuzzpval/membership.hpp"
#include "fuzzpval/parallel.hpp"

namespace fuzzpval {

// Empirical counterparts of Theorems 1 and 2: everything below is an exact
// finite sum over the (m+1)(n+1) outcome space — no Monte Carlo anywhere.

struct PValueVariant {
  enum class Kind { plain, berger_boos };
  Kind kind = Kind::plain;
  double gamma = 1e-4;  // meaningful only for berger_boos

  static PValueVariant plain() { return {}; }
  static PValueVariant berger_boos(double gamma) {
    PValueVariant v;
    v.kind = Kind::berger_boos;
    v.gamma = gamma;
    return v;
  }

  std::string name() const {
    return kind == Kind::plain ? "plain" : "berger_boos";
  }
};

struct ValidityGrids {
  GridSpec theta{-0.9, 0.9, 21};
  int omega_points = 21;  // interior points of each theta's omega range
  GridSpec alpha{0.05, 0.95, 19};
};

struct ValidityCell {
  double theta;
  double omega;
  double alpha;
  double excess;    // P[p <= alpha] - alpha
  double coverage;  // P[p > alpha] = 1 - P[p <= alpha]
};

struct ValidityReport {
  static constexpr double kSlack = 1e-6;

  int m = 0;
  int n = 0;
  PValueVariant variant;
  ValidityGrids grids;
  double worst_excess = -std::numeric_limits<double>::infinity();
  double worst_coverage_deficit = -std::numeric_limits<double>::infinity();
  std::vector<ValidityCell> cells;

  bool passed() const {
    return worst_excess <= kSlack && worst_coverage_deficit <= kSlack;
  }
};

// p-values of H0: theta = theta0 with every outcome (u, v) in turn treated
// as the observation; row-major index u*(n+1)+v.
struct PValueTable {
  int m;
  int n;
  double theta;
  PValueVariant variant;
  std::vector<double> p;

  double at(int u, int v) const {
    return p[static_cast<std::size_t>(u) * (n + 1) + v];
  }
};

constexpr int kOutcomeGuard = 400;

inline void check_outcome_guard(int m, int n, bool allow_large) {
  if (m < 1 || n < 1) throw std::domain_error("sample sizes must be >= 1");
  if (!allow_large && (m + 1) * (n + 1) > kOutcomeGuard) {
    throw std::domain_error(
        "enumeration needs (m+1)(n+1) <= " + std::to_string(kOutcomeGuard) +
        " outcomes; pass the override to force larger spaces");
  }
}

inline PValueTable enumerate_pvalues(int m, int n, const ThetaPoint& theta,
                                     const EvalConfig& cfg = {},
                                     const PValueVariant& variant = {},
                                     bool allow_large = false,
                                     unsigned workers = 1) {
  check_outcome_guard(m, n, allow_large);
  PValueTable table{m, n, theta.value(), variant, {}};
  table.p.assign(static_cast<std::size_t>(m + 1) * (n + 1), 0.0);
  const BergerBoosConfig bb =
      variant.kind == PValueVariant::Kind::berger_boos
          ? BergerBoosConfig(variant.gamma)
          : BergerBoosConfig(0.5);  // placeholder, unused for plain
  parallel_for(table.p.size(), workers, [&](std::size_t i) {
    const int u = static_cast<int>(i) / (n + 1);
    const int v = static_cast<int>(i) % (n + 1);
    const TwoSampleData outcome(u, m, v, n);
    table.p[i] = variant.kind == PValueVariant::Kind::plain
                     ? mu_at(outcome, theta, cfg)
                     : mu_bb_at(outcome, theta, bb, cfg);
  });
  return table;
}

// Equispaced points strictly inside theta's omega range.
inline std::vector<double> interior_omegas(const ThetaPoint& theta, int count) {
  if (count < 1) throw std::domain_error("interior_omegas: count must be >= 1");
  const double lo = theta.omega_lower();
  const double hi = theta.omega_upper();
  std::vector<double> pts(static_cast<std::size_t>(count));
  for (int j = 0; j < count; ++j) {
    pts[static_cast<std::size_t>(j)] =
        lo + (hi - lo) * (static_cast<double>(j + 1) / (count + 1));
  }
  return pts;
}

// Exact P[p <= alpha] under (theta, omega).
inline double rejection_probability(const PValueTable& table,
                                    const ThetaPoint& theta, double omega,
                                    double alpha) {
  const double p2 = std::clamp(omega + theta.value(), 0.0, 1.0);
  const BinomParams bx(table.m, std::clamp(omega, 0.0, 1.0));
  const BinomParams by(table.n, p2);
  const auto px = pmf_vector(bx);
  const auto py = pmf_vector(by);
  CompensatedSum sum;
  for (int u = 0; u <= table.m; ++u) {
    for (int v = 0; v <= table.n; ++v) {
      if (table.at(u, v) <= alpha) {
        sum.add(px[static_cast<std::size_t>(u)] * py[static_cast<std::size_t>(v)]);
      }
    }
  }
  return std::clamp(sum.value(), 0.0, 1.0);
}

inline double validity_excess(const PValueTable& table, const ThetaPoint& theta,
                              double omega, double alpha) {
  return rejection_probability(table, theta, omega, alpha) - alpha;
}

// Theorem 1c/2c: P[theta in I_{1-alpha}] = P[p > alpha], the exact complement
// of the rejection probability.
inline double coverage_probability(const PValueTable& table,
                                   const ThetaPoint& theta, double omega,
                                   double alpha) {
  return 1.0 - rejection_probability(table, theta, omega, alpha);
}

inline ValidityReport run_validity(int m, int n,
                                   const ValidityGrids& grids = {},
                                   const PValueVariant& variant = {},
                                   const EvalConfig& cfg = {},
                                   bool allow_large = false,
                                   unsigned workers = 1) {
  check_outcome_guard(m, n, allow_large);
  ValidityReport report;
  report.m = m;
  report.n = n;
  report.variant = variant;
  report.grids = grids;

  const auto thetas = linspace(grids.theta);
  const auto alphas = linspace(grids.alpha);
  std::vector<PValueTable> tables(thetas.size());
  parallel_for(thetas.size(), workers, [&](std::size_t i) {
    tables[i] = enumerate_pvalues(m, n, ThetaPoint(thetas[i]), cfg, variant,
                                  allow_large, 1);
  });

  report.cells.reserve(thetas.size() * static_cast<std::size_t>(grids.omega_points) *
                       alphas.size());
  for (std::size_t ti = 0; ti < thetas.size(); ++ti) {
    const ThetaPoint theta(thetas[ti]);
    for (double omega : interior_omegas(theta, grids.omega_points)) {
      for (double alpha : alphas) {
        const double rej = rejection_probability(tables[ti], theta, omega, alpha);
        ValidityCell cell{thetas[ti], omega, alpha, rej - alpha, 1.0 - rej};
        report.worst_excess = std::max(report.worst_excess, cell.excess);
        report.worst_coverage_deficit = std::max(
            report.worst_coverage_deficit, (1.0 - alpha) - cell.coverage);
        report.cells.push_back(cell);
      }
    }
  }
  return report;
}

}  // namespace fuzzpval
