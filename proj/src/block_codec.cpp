#include "block_codec.hpp"

#include <algorithm>

#include "error.hpp"

namespace streamcode {

std::vector<Element> block_encode(std::span<const Element> s, const GeneratorMatrix& g) {
  if (s.size() != g.k())
    throw Error(ErrorCode::dimension_mismatch,
                "source block has " + std::to_string(s.size()) + " symbols, code needs " +
                    std::to_string(g.k()));
  return g.matrix().left_multiply(s);
}

ReceivedBlock ReceivedBlock::through(std::span<const Element> x, const ErasurePattern& pattern) {
  if (x.size() != pattern.size())
    throw Error(ErrorCode::dimension_mismatch, "pattern length differs from codeword length");
  ReceivedBlock r{std::vector<Element>(x.begin(), x.end()), pattern};
  for (std::size_t j = 0; j < x.size(); ++j)
    if (pattern.erased(j)) r.symbols[j] = 0;
  return r;
}

namespace {

void check_block(const ReceivedBlock& r, const GeneratorMatrix& g, const DecodeOptions& o) {
  if (r.symbols.size() != g.n() || r.pattern.size() != g.n())
    throw Error(ErrorCode::dimension_mismatch, "received block length differs from n");
  if (!o.known.empty() && o.known.size() != g.k())
    throw Error(ErrorCode::dimension_mismatch, "known-symbol list must have k entries");
}

// Solves for row `target` of the system restricted to rows flagged in
// `unknown` and the given columns. Returns the combining coefficients a with
// sum_c a_c g[u][c] = [u == target] for every unknown row u.
std::optional<std::vector<Element>> combiner(const FieldMatrix& g,
                                             std::span<const std::size_t> cols,
                                             std::span<const std::uint8_t> unknown,
                                             std::size_t target) {
  std::vector<std::size_t> rows;
  for (std::size_t u = 0; u < g.rows(); ++u)
    if (unknown[u]) rows.push_back(u);
  FieldMatrix a(rows.size(), cols.size(), g.field());
  std::vector<Element> rhs(rows.size(), 0);
  for (std::size_t r = 0; r < rows.size(); ++r) {
    for (std::size_t c = 0; c < cols.size(); ++c) a.set(r, c, g.at(rows[r], cols[c]));
    if (rows[r] == target) rhs[r] = 1;
  }
  return solve(a, rhs);
}

std::vector<std::size_t> available_columns(std::span<const std::uint8_t> available,
                                           std::size_t limit) {
  std::vector<std::size_t> cols;
  for (std::size_t c = 0; c <= limit && c < available.size(); ++c)
    if (available[c]) cols.push_back(c);
  return cols;
}

}  // namespace

std::optional<Element> recover_symbol(const FieldMatrix& g, std::span<const Element> y,
                                      std::span<const std::uint8_t> available,
                                      std::span<const std::optional<Element>> known,
                                      std::size_t target) {
  if (y.size() != g.cols() || available.size() != g.cols())
    throw Error(ErrorCode::dimension_mismatch, "received vector length differs from n");
  if (!known.empty() && known.size() != g.rows())
    throw Error(ErrorCode::dimension_mismatch, "known-symbol list must have k entries");
  if (!known.empty() && known[target]) return *known[target];

  const PrimeField& f = g.field();
  std::vector<std::uint8_t> unknown(g.rows(), 1);
  for (std::size_t u = 0; u < known.size(); ++u)
    if (known[u]) unknown[u] = 0;
  const auto cols = available_columns(available, g.cols() - 1);
  const auto a = combiner(g, cols, unknown, target);
  if (!a) return std::nullopt;

  Element value = 0;
  for (std::size_t c = 0; c < cols.size(); ++c) {
    Element yc = y[cols[c]];
    for (std::size_t u = 0; u < known.size(); ++u)
      if (known[u]) yc = f.sub(yc, f.mul(*known[u], g.at(u, cols[c])));
    value = f.add(value, f.mul((*a)[c], yc));
  }
  return value;
}

bool symbol_recoverable(const FieldMatrix& g, std::span<const std::uint8_t> available,
                        std::span<const std::uint8_t> unknown, std::size_t target) {
  if (!unknown[target]) return true;
  const auto cols = available_columns(available, g.cols() - 1);
  return combiner(g, cols, unknown, target).has_value();
}

namespace {

std::vector<std::uint8_t> availability_until(const ReceivedBlock& r, std::size_t last) {
  std::vector<std::uint8_t> av(r.symbols.size(), 0);
  for (std::size_t j = 0; j <= last && j < av.size(); ++j) av[j] = r.pattern.erased(j) ? 0 : 1;
  return av;
}

std::size_t symbol_deadline(const GeneratorMatrix& g, std::size_t i) {
  return std::min(i + g.params().design_delay(), g.n() - 1);
}

}  // namespace

std::vector<SymbolEstimate> decode_oracle(const ReceivedBlock& r, const GeneratorMatrix& g,
                                          const DecodeOptions& options) {
  check_block(r, g, options);
  std::vector<SymbolEstimate> out(g.k());
  for (std::size_t i = 0; i < g.k(); ++i) {
    auto& est = out[i];
    est.deadline = symbol_deadline(g, i);
    const auto av = availability_until(r, est.deadline);
    const auto value = recover_symbol(g.matrix(), r.symbols, av, options.known, i);
    if (!value) continue;
    est.recovered = true;
    est.value = *value;
    if (options.track_earliest) {
      for (std::size_t t = 0; t <= est.deadline; ++t) {
        const auto partial = availability_until(r, t);
        if (recover_symbol(g.matrix(), r.symbols, partial, options.known, i)) {
          est.earliest = t;
          break;
        }
      }
    }
  }
  return out;
}

std::vector<SymbolEstimate> decode_sequential(const ReceivedBlock& r, const GeneratorMatrix& g,
                                              const DecodeOptions& options) {
  check_block(r, g, options);
  const std::size_t k = g.k();
  const std::size_t n = g.n();
  const PrimeField& f = g.field();

  std::vector<std::optional<Element>> known = options.known;
  if (known.empty()) known.assign(k, std::nullopt);
  std::vector<SymbolEstimate> out(k);

  for (std::size_t i = 0; i < k; ++i) {
    auto& est = out[i];
    est.deadline = symbol_deadline(g, i);
    if (known[i]) {
      est.recovered = true;
      est.value = *known[i];
      if (options.track_earliest) est.earliest = 0;
      continue;
    }
    // Unknowns: earlier symbols still missing, plus s[i..k-1] not known upfront.
    std::vector<std::uint8_t> unknown(k, 0);
    for (std::size_t u = 0; u < k; ++u) unknown[u] = known[u] ? 0 : 1;

    auto attempt = [&](std::size_t last) -> std::optional<Element> {
      std::vector<std::size_t> cols;
      for (std::size_t c = i; c <= last && c < n; ++c)
        if (!r.pattern.erased(c)) cols.push_back(c);
      const auto a = combiner(g.matrix(), cols, unknown, i);
      if (!a) return std::nullopt;
      Element value = 0;
      for (std::size_t c = 0; c < cols.size(); ++c) {
        Element yc = r.symbols[cols[c]];
        for (std::size_t u = 0; u < k; ++u)
          if (known[u]) yc = f.sub(yc, f.mul(*known[u], g.matrix().at(u, cols[c])));
        value = f.add(value, f.mul((*a)[c], yc));
      }
      return value;
    };

    const auto value = attempt(est.deadline);
    if (!value) continue;
    est.recovered = true;
    est.value = *value;
    if (options.track_earliest)
      for (std::size_t t = 0; t <= est.deadline; ++t)
        if (attempt(t)) {
          est.earliest = t;
          break;
        }
    known[i] = *value;
  }
  return out;
}

}  // namespace streamcode
