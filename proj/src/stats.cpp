#include "vlcp/stats.hpp"

#include <cassert>
#include <cmath>
#include <functional>
#include <stdexcept>
#include <string>

namespace vlcp {

double latency_eq1(std::size_t n_frame, double fps) {
  assert(fps > 0);
  return 2.0 * static_cast<double>(n_frame) / fps;
}

std::size_t hamming_distance(const BitVec& a, const BitVec& b) {
  if (a.size() != b.size()) {
    throw std::invalid_argument("bit stream length mismatch: " +
                                std::to_string(a.size()) + " vs " +
                                std::to_string(b.size()));
  }
  std::size_t d = 0;
  for (std::size_t i = 0; i < a.size(); ++i) d += a.bit(i) != b.bit(i);
  return d;
}

double ber(const BitVec& tx, const BitVec& rx) {
  assert(!tx.empty());
  return static_cast<double>(hamming_distance(tx, rx)) /
         static_cast<double>(tx.size());
}

double binomial_cdf(std::uint64_t k, std::uint64_t n, double p) {
  assert(n > 0);
  if (p <= 0.0) return 1.0;
  if (p >= 1.0) return k >= n ? 1.0 : 0.0;
  if (k >= n) return 1.0;

  const double log_p = std::log(p);
  const double log_q = std::log1p(-p);
  const double lgn = std::lgamma(static_cast<double>(n) + 1);
  auto log_pmf = [&](std::uint64_t i) {
    return lgn - std::lgamma(static_cast<double>(i) + 1) -
           std::lgamma(static_cast<double>(n - i) + 1) +
           static_cast<double>(i) * log_p + static_cast<double>(n - i) * log_q;
  };

  // Sum whichever tail is shorter; every term is <= 1 so plain accumulation
  // in double is safe.
  if (k <= n / 2) {
    double s = 0.0;
    for (std::uint64_t i = 0; i <= k; ++i) s += std::exp(log_pmf(i));
    return std::min(1.0, s);
  }
  double s = 0.0;
  for (std::uint64_t i = k + 1; i <= n; ++i) s += std::exp(log_pmf(i));
  return std::max(0.0, 1.0 - s);
}

namespace {

// Solves f(p) = target for monotone-decreasing f over [lo, hi] by bisection.
double bisect_decreasing(double lo, double hi, double target,
                         const std::function<double(double)>& f) {
  for (int i = 0; i < 100 && hi - lo > 1e-15; ++i) {
    const double mid = 0.5 * (lo + hi);
    if (f(mid) > target) {
      lo = mid;
    } else {
      hi = mid;
    }
  }
  return 0.5 * (lo + hi);
}

}  // namespace

double cp_upper(std::uint64_t errors, std::uint64_t n, double confidence) {
  assert(n > 0 && errors <= n);
  const double alpha = (1.0 - confidence) / 2.0;
  if (errors >= n) return 1.0;
  // Smallest p with P(X <= errors; n, p) <= alpha.
  return bisect_decreasing(
      static_cast<double>(errors) / static_cast<double>(n), 1.0, alpha,
      [&](double p) { return binomial_cdf(errors, n, p); });
}

double cp_lower(std::uint64_t errors, std::uint64_t n, double confidence) {
  assert(n > 0 && errors <= n);
  const double alpha = (1.0 - confidence) / 2.0;
  if (errors == 0) return 0.0;
  // Largest p with P(X >= errors; n, p) <= alpha, i.e.
  // P(X <= errors - 1; n, p) >= 1 - alpha.
  return bisect_decreasing(0.0, static_cast<double>(errors) / static_cast<double>(n),
                           1.0 - alpha,
                           [&](double p) { return binomial_cdf(errors - 1, n, p); });
}

}  // namespace vlcp
