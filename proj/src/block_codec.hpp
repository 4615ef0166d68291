#pragma once

#include <cstddef>
#include <optional>
#include <span>
#include <vector>

#include "code_construct.hpp"
#include "erasure_model.hpp"

namespace streamcode {

/// x = s * G. Throws dimension_mismatch unless s has k entries.
std::vector<Element> block_encode(std::span<const Element> s, const GeneratorMatrix& g);

/// Channel output for one block. Erased positions hold 0 in `symbols`.
struct ReceivedBlock {
  std::vector<Element> symbols;
  ErasurePattern pattern;

  /// Applies pattern to a transmitted codeword; erased entries are zeroed.
  static ReceivedBlock through(std::span<const Element> x, const ErasurePattern& pattern);
};

struct SymbolEstimate {
  bool recovered = false;
  Element value = 0;
  /// Last block position that may be used: min(i + T, n - 1).
  std::size_t deadline = 0;
  /// First position by which the symbol was determined, when tracked.
  std::optional<std::size_t> earliest;
};

struct DecodeOptions {
  /// Source symbols the receiver already knows (e.g. zeros before time 0).
  /// Empty, or k entries.
  std::vector<std::optional<Element>> known;
  bool track_earliest = false;
};

/// Symbol-by-symbol decoder: s[i] is solved from unerased positions up to its
/// deadline after subtracting every earlier symbol already recovered. Earlier
/// symbols that could not be recovered stay as unknowns.
std::vector<SymbolEstimate> decode_sequential(const ReceivedBlock& r, const GeneratorMatrix& g,
                                              const DecodeOptions& options = {});

/// Maximal-recovery decoder: s[i] is declared recovered iff it is uniquely
/// determined by all unerased positions up to its deadline.
std::vector<SymbolEstimate> decode_oracle(const ReceivedBlock& r, const GeneratorMatrix& g,
                                          const DecodeOptions& options = {});

/// Core of decode_oracle for one symbol over an explicit matrix: rows whose
/// source value is known are subtracted, columns flagged unavailable are
/// ignored. Returns the value of `target` when it is determined.
std::optional<Element> recover_symbol(const FieldMatrix& g, std::span<const Element> y,
                                      std::span<const std::uint8_t> available,
                                      std::span<const std::optional<Element>> known,
                                      std::size_t target);

/// Pattern-only version of recover_symbol: `unknown` flags the rows that are
/// not known to the receiver.
bool symbol_recoverable(const FieldMatrix& g, std::span<const std::uint8_t> available,
                        std::span<const std::uint8_t> unknown, std::size_t target);

}  // namespace streamcode
