#pragma once

#include <cstddef>
#include <cstdint>
#include <string>

#include "conv_codec.hpp"

namespace streamcode {

/// k(T+1) x n(T+1) block upper-triangular matrix with block (r, c) = G_{c-r}.
FieldMatrix truncated_generator(const ConvCode& code, std::size_t T);

inline constexpr std::uint64_t default_enumeration_budget = std::uint64_t{1} << 24;

struct DistanceReport {
  std::size_t d = 0;
  std::size_t c = 0;
  bool optimal = false;
  /// "brute-force" or "erasure-probe" (lower bounds only).
  std::string method;
};

/// Minimum number of nonzero packets among x_0..x_T over all prefixes with
/// s_0 != 0. Throws budget_exceeded when p^{k(T+1)} exceeds `budget`.
std::size_t column_distance_bruteforce(const ConvCode& code, std::size_t T,
                                       std::uint64_t budget = default_enumeration_budget);
/// Minimum support length (last - first nonzero packet, plus one) over the
/// same prefixes.
std::size_t column_span_bruteforce(const ConvCode& code, std::size_t T,
                                   std::uint64_t budget = default_enumeration_budget);

/// k/n == (T - d + 2) / (T + c - d + 1), exactly.
bool check_optimal(std::size_t k, std::size_t n, std::size_t T, std::size_t d, std::size_t c);
bool check_optimal(const ConvCode& code, std::size_t d, std::size_t c);
/// k/n <= (T - d + 2) / (T + c - d + 1).
bool rate_within_bound(std::size_t k, std::size_t n, std::size_t T, std::size_t d, std::size_t c);

struct ProbeBounds {
  std::size_t d_lower = 1;
  std::size_t c_lower = 1;
};

/// d_lower - 1 is the largest N such that s_0 is recoverable from x_0..x_T
/// under every placement of N erasures; c_lower - 1 is the analogous burst
/// length.
ProbeBounds erasure_probe_bounds(const ConvCode& code, std::size_t T);

/// Brute force when it fits in the budget, otherwise the probe bounds.
DistanceReport distance_report(const ConvCode& code, std::size_t T,
                               std::uint64_t budget = default_enumeration_budget);

}  // namespace streamcode
