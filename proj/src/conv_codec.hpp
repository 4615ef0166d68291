#pragma once

#include <cstddef>
#include <cstdint>
#include <deque>
#include <optional>
#include <span>
#include <unordered_map>
#include <vector>

#include "block_codec.hpp"
#include "code_construct.hpp"

namespace streamcode {

/// Streaming code obtained by spreading each block codeword along a diagonal:
/// packet t coordinate j carries position j of the block started at t - j, so
/// x_t[j] = sum_r s_{t-j+r}[r] g[r][j]. gens[l] holds the entries with j - r = l.
struct ConvCode {
  GeneratorMatrix base;
  std::vector<FieldMatrix> gens;
  std::size_t memory = 0;

  std::size_t k() const noexcept { return base.k(); }
  std::size_t n() const noexcept { return base.n(); }
  std::size_t delay() const noexcept { return base.params().design_delay(); }
};

ConvCode interleave(const GeneratorMatrix& g);

class ConvEncoder {
public:
  explicit ConvEncoder(const ConvCode& code);

  /// x_t = sum_l s_{t-l} G_l, with s_{<0} = 0.
  std::vector<Element> step(std::span<const Element> source);
  std::size_t time() const noexcept { return time_; }

private:
  const ConvCode* code_;
  std::deque<std::vector<Element>> history_;  // most recent first
  std::size_t time_ = 0;
};

struct DecodedPacket {
  std::size_t time = 0;
  bool recovered = false;
  /// False for packets emitted by flush() before their deadline arrived.
  bool deadline_met = true;
  std::vector<Element> symbols;
  std::vector<std::uint8_t> symbol_recovered;
};

/// Receives packets in time order and emits the estimate of s_{t-T} at time t.
/// Each coordinate is decoded from its own diagonal with the oracle decoder,
/// using only packets received so far; a packet that arrives intact yields
/// its source symbols directly.
class ConvDecoder {
public:
  explicit ConvDecoder(const ConvCode& code);

  /// Feeds the channel output at `time` (nullopt = erased). `time` must be the
  /// next expected index.
  std::optional<DecodedPacket> step(std::size_t time,
                                    std::optional<std::span<const Element>> packet);
  /// Estimates for every received time whose deadline has not been reached.
  std::vector<DecodedPacket> flush();
  std::size_t next_time() const noexcept { return next_; }

private:
  DecodedPacket decode_packet(std::size_t i, bool deadline_met) const;
  const std::vector<Element>* packet_at(std::size_t t) const;

  const ConvCode* code_;
  std::deque<std::optional<std::vector<Element>>> window_;  // packets [first_, next_)
  std::size_t first_ = 0;
  std::size_t next_ = 0;
  std::size_t emitted_ = 0;
};

/// Decides packet losses from the erasure sequence alone. Because the code is
/// linear and decoding is exact, whether s_i survives depends only on which
/// packets arrived, so no symbol values are needed. Results are memoised per
/// (coordinate, startup rows, local mask).
class PatternLossEvaluator {
public:
  explicit PatternLossEvaluator(const ConvCode& code);

  /// True iff s_i cannot be fully recovered by time i + T. `erased(t)` must be
  /// answerable for t in [i - k + 1, i + T].
  template <class Erased>
  bool lost(std::size_t i, Erased&& erased) {
    if (!erased(i)) return false;
    const std::size_t k = code_->k();
    const std::size_t n = code_->n();
    const std::size_t T = code_->delay();
    for (std::size_t r = 0; r < k; ++r) {
      // Diagonal that starts at i - r; negative starts see only the tail.
      const std::int64_t d = static_cast<std::int64_t>(i) - static_cast<std::int64_t>(r);
      const std::size_t startup = d < 0 ? static_cast<std::size_t>(-d) : 0;
      const std::size_t last = std::min(n - 1, r + T);
      std::uint64_t mask = 0;
      for (std::size_t j = 0; j <= last; ++j) {
        const std::int64_t t = d + static_cast<std::int64_t>(j);
        if (t >= 0 && !erased(static_cast<std::size_t>(t))) mask |= std::uint64_t{1} << j;
      }
      if (!recoverable(r, startup, mask)) return true;
    }
    return false;
  }

  bool recoverable(std::size_t r, std::size_t startup, std::uint64_t mask);
  std::size_t cache_size() const noexcept { return cache_.size(); }

private:
  const ConvCode* code_;
  std::unordered_map<std::uint64_t, bool> cache_;
};

}  // namespace streamcode
