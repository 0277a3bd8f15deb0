#pragma once

#include <cstdint>

#include "vlcp/bits.hpp"

namespace vlcp {

/// Communication delay for n_frame transmitted LED frames sampled at 2x:
/// tau = 2 * n_frame / fps.
double latency_eq1(std::size_t n_frame, double fps);

/// Throws std::invalid_argument on length mismatch (an accounting error;
/// lost packets are reported as erasures, not compared bitwise).
std::size_t hamming_distance(const BitVec& a, const BitVec& b);

/// Bit errors / bits. Lengths must match.
double ber(const BitVec& tx, const BitVec& rx);

/// Exact (binomial) Clopper-Pearson bounds on an error probability given
/// `errors` failures in `n` trials. `confidence` is the two-sided level; the
/// default 0.95 makes the upper bound a one-sided 97.5% limit, which for
/// errors = 0 reduces to 1 - 0.025^(1/n).
double cp_upper(std::uint64_t errors, std::uint64_t n, double confidence = 0.95);
double cp_lower(std::uint64_t errors, std::uint64_t n, double confidence = 0.95);

/// P(Binomial(n, p) <= k), evaluated from the smaller tail in log space.
double binomial_cdf(std::uint64_t k, std::uint64_t n, double p);

}  // namespace vlcp
