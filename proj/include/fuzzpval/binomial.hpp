#pragma once

#include <cmath>
#include <limits>
#include <stdexcept>
#include <vector>

namespace fuzzpval {

inline constexpr double kNegInf = -std::numeric_limits<double>::infinity();

// log(k!) from a table built once per process (immutable afterwards, so
// concurrent readers are fine). Falls back to lgamma beyond the table.
inline double log_factorial(int k) {
  static const std::vector<double>& table = *[] {
    auto* t = new std::vector<double>(4096);
    for (std::size_t i = 0; i < t->size(); ++i) {
      (*t)[i] = std::lgamma(static_cast<double>(i) + 1.0);
    }
    return t;
  }();
  if (k < 0) throw std::domain_error("log_factorial: negative argument");
  if (static_cast<std::size_t>(k) < table.size()) {
    return table[static_cast<std::size_t>(k)];
  }
  return std::lgamma(static_cast<double>(k) + 1.0);
}

inline double log_choose(int n, int k) {
  return log_factorial(n) - log_factorial(k) - log_factorial(n - k);
}

// One binomial arm: trials and a success probability. Endpoints p = 0 and
// p = 1 are legal (degenerate point masses); the nuisance parameter reaches
// the closure of its range during supremum search.
struct BinomParams {
  int trials;
  double success_prob;

  BinomParams(int trials_, double success_prob_)
      : trials(trials_), success_prob(success_prob_) {
    if (trials < 0) throw std::domain_error("BinomParams: trials must be >= 0");
    if (!(success_prob >= 0.0 && success_prob <= 1.0)) {
      throw std::domain_error("BinomParams: success_prob must lie in [0, 1]");
    }
  }
};

// log P(K = k) for K ~ Bin(trials, p). -inf exactly where the pmf vanishes.
// The p = 0 and p = 1 point masses are explicit branches, never log
// arithmetic.
inline double log_pmf(int k, const BinomParams& b) {
  if (k < 0 || k > b.trials) {
    throw std::domain_error("log_pmf: k outside {0, ..., trials}");
  }
  const double p = b.success_prob;
  if (p == 0.0) return k == 0 ? 0.0 : kNegInf;
  if (p == 1.0) return k == b.trials ? 0.0 : kNegInf;
  return log_choose(b.trials, k) + static_cast<double>(k) * std::log(p) +
         static_cast<double>(b.trials - k) * std::log1p(-p);
}

inline double pmf(int k, const BinomParams& b) { return std::exp(log_pmf(k, b)); }

// Full pmf as a vector of trials+1 probabilities, entry k = P(K = k).
inline std::vector<double> pmf_vector(const BinomParams& b) {
  std::vector<double> out(static_cast<std::size_t>(b.trials) + 1);
  for (int k = 0; k <= b.trials; ++k) {
    out[static_cast<std::size_t>(k)] = pmf(k, b);
  }
  return out;
}

}  // namespace fuzzpval
