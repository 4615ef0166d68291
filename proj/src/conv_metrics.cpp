#include "conv_metrics.hpp"

#include <algorithm>
#include <limits>
#include <vector>

#include "error.hpp"

namespace streamcode {

FieldMatrix truncated_generator(const ConvCode& code, std::size_t T) {
  const std::size_t k = code.k();
  const std::size_t n = code.n();
  FieldMatrix out(k * (T + 1), n * (T + 1), code.base.field());
  for (std::size_t br = 0; br <= T; ++br)
    for (std::size_t bc = br; bc <= T; ++bc) {
      const std::size_t l = bc - br;
      if (l > code.memory) continue;
      const FieldMatrix& gl = code.gens[l];
      for (std::size_t r = 0; r < k; ++r)
        for (std::size_t j = 0; j < n; ++j) out.set(br * k + r, bc * n + j, gl.at(r, j));
    }
  return out;
}

namespace {

struct PrefixExtremes {
  std::size_t weight = std::numeric_limits<std::size_t>::max();
  std::size_t span = std::numeric_limits<std::size_t>::max();
};

// Odometer over all message prefixes; x is updated incrementally, since
// bumping digit j by one (including the wrap p-1 -> 0) adds row j once.
PrefixExtremes enumerate_prefixes(const ConvCode& code, std::size_t T, std::uint64_t budget) {
  const std::size_t k = code.k();
  const std::size_t n = code.n();
  const std::size_t digits = k * (T + 1);
  const std::uint64_t p = code.base.field().modulus();

  std::uint64_t total = 1;
  for (std::size_t i = 0; i < digits; ++i) {
    if (total > budget / p) throw Error(ErrorCode::budget_exceeded,
                                        "message space exceeds the enumeration budget");
    total *= p;
  }

  const FieldMatrix g = truncated_generator(code, T);
  const PrimeField& f = g.field();
  std::vector<Element> digit(digits, 0);
  std::vector<Element> x(g.cols(), 0);
  PrefixExtremes best;

  for (std::uint64_t step = 1; step < total; ++step) {
    for (std::size_t j = 0; j < digits; ++j) {
      const auto row = g.row(j);
      for (std::size_t c = 0; c < x.size(); ++c) x[c] = f.add(x[c], row[c]);
      digit[j] = (digit[j] + 1) % static_cast<Element>(p);
      if (digit[j] != 0) break;
    }
    bool s0_nonzero = false;
    for (std::size_t j = 0; j < k; ++j) s0_nonzero = s0_nonzero || digit[j] != 0;
    if (!s0_nonzero) continue;

    std::size_t weight = 0, lo = T + 1, hi = 0;
    for (std::size_t t = 0; t <= T; ++t) {
      const bool nz = std::any_of(x.begin() + t * n, x.begin() + (t + 1) * n,
                                  [](Element v) { return v != 0; });
      if (!nz) continue;
      ++weight;
      lo = std::min(lo, t);
      hi = t;
    }
    best.weight = std::min(best.weight, weight);
    if (weight > 0) best.span = std::min(best.span, hi - lo + 1);
  }
  return best;
}

}  // namespace

std::size_t column_distance_bruteforce(const ConvCode& code, std::size_t T, std::uint64_t budget) {
  return enumerate_prefixes(code, T, budget).weight;
}

std::size_t column_span_bruteforce(const ConvCode& code, std::size_t T, std::uint64_t budget) {
  return enumerate_prefixes(code, T, budget).span;
}

bool check_optimal(std::size_t k, std::size_t n, std::size_t T, std::size_t d, std::size_t c) {
  if (d < 1 || d > T + 2 || c + T + 1 < d) return false;
  const std::uint64_t num = T - d + 2;
  const std::uint64_t den = T + c - d + 1;
  return std::uint64_t{k} * den == std::uint64_t{n} * num;
}

bool check_optimal(const ConvCode& code, std::size_t d, std::size_t c) {
  return check_optimal(code.k(), code.n(), code.delay(), d, c);
}

bool rate_within_bound(std::size_t k, std::size_t n, std::size_t T, std::size_t d, std::size_t c) {
  if (d < 1 || d > T + 2 || c + T + 1 < d) return false;
  const std::uint64_t num = T - d + 2;
  const std::uint64_t den = T + c - d + 1;
  return std::uint64_t{k} * den <= std::uint64_t{n} * num;
}

namespace {

// True iff every coordinate of s_0 is determined by the unerased packets.
bool first_packet_recoverable(const FieldMatrix& g, std::size_t k, std::size_t n,
                              const std::vector<std::uint8_t>& erased_packet) {
  std::vector<std::size_t> cols;
  for (std::size_t c = 0; c < g.cols(); ++c)
    if (!erased_packet[c / n]) cols.push_back(c);
  FieldMatrix masked(g.rows(), cols.size(), g.field());
  for (std::size_t r = 0; r < g.rows(); ++r)
    for (std::size_t c = 0; c < cols.size(); ++c) masked.set(r, c, g.at(r, cols[c]));
  FieldMatrix tail(g.rows() - k, cols.size(), g.field());
  for (std::size_t r = k; r < g.rows(); ++r)
    for (std::size_t c = 0; c < cols.size(); ++c) tail.set(r - k, c, masked.at(r, c));
  return rank(masked) == rank(tail) + k;
}

bool all_combinations_ok(const FieldMatrix& g, std::size_t k, std::size_t n, std::size_t window,
                         std::size_t count) {
  std::vector<std::uint8_t> pick(window, 0);
  std::fill(pick.end() - static_cast<std::ptrdiff_t>(count), pick.end(), 1);
  do {
    if (!first_packet_recoverable(g, k, n, pick)) return false;
  } while (std::next_permutation(pick.begin(), pick.end()));
  return true;
}

bool all_bursts_ok(const FieldMatrix& g, std::size_t k, std::size_t n, std::size_t window,
                   std::size_t length) {
  for (std::size_t start = 0; start + length <= window; ++start) {
    std::vector<std::uint8_t> e(window, 0);
    std::fill(e.begin() + start, e.begin() + start + length, 1);
    if (!first_packet_recoverable(g, k, n, e)) return false;
  }
  return true;
}

}  // namespace

ProbeBounds erasure_probe_bounds(const ConvCode& code, std::size_t T) {
  const FieldMatrix g = truncated_generator(code, T);
  const std::size_t k = code.k();
  const std::size_t n = code.n();
  const std::size_t window = T + 1;
  ProbeBounds out;
  while (out.d_lower - 1 < window && all_combinations_ok(g, k, n, window, out.d_lower))
    ++out.d_lower;
  while (out.c_lower - 1 < window && all_bursts_ok(g, k, n, window, out.c_lower)) ++out.c_lower;
  return out;
}

DistanceReport distance_report(const ConvCode& code, std::size_t T, std::uint64_t budget) {
  DistanceReport out;
  try {
    const auto ext = enumerate_prefixes(code, T, budget);
    out.d = ext.weight;
    out.c = ext.span;
    out.method = "brute-force";
  } catch (const Error& e) {
    if (e.code() != ErrorCode::budget_exceeded) throw;
    const auto b = erasure_probe_bounds(code, T);
    out.d = b.d_lower;
    out.c = b.c_lower;
    out.method = "erasure-probe";
  }
  out.optimal = check_optimal(code.k(), code.n(), T, out.d, out.c);
  return out;
}

}  // namespace streamcode
