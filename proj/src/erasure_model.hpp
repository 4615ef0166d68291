#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "gf_linalg.hpp"

namespace streamcode {

/// Fixed-length binary erasure mask, 1 = erased. Serialized as a 0/1 string
/// with time 0 first.
class ErasurePattern {
public:
  ErasurePattern() = default;
  explicit ErasurePattern(std::size_t length) : bits_(length, 0) {}
  explicit ErasurePattern(std::vector<std::uint8_t> bits);
  static ErasurePattern parse(std::string_view text);

  std::size_t size() const noexcept { return bits_.size(); }
  bool erased(std::size_t i) const noexcept { return bits_[i] != 0; }
  void set(std::size_t i, bool erased) noexcept { bits_[i] = erased ? 1 : 0; }
  std::size_t weight() const noexcept;
  std::span<const std::uint8_t> bits() const noexcept { return bits_; }
  std::string to_string() const;

  auto operator<=>(const ErasurePattern&) const = default;

private:
  std::vector<std::uint8_t> bits_;
};

/// Sliding-window channel constraint: every length-W window holds either one
/// burst of length <= B or at most N erasures anywhere.
struct WbnSpec {
  std::size_t W;
  std::size_t B;
  std::size_t N;

  void validate() const;
};

/// All maximal (W, B, N) patterns: exactly B consecutive ones, or exactly N
/// ones anywhere. Deduplicated, in lexicographic ("0" < "1") order.
std::vector<ErasurePattern> enumerate_maximal_patterns(std::size_t W, std::size_t B, std::size_t N);

/// Checks every window start of the prefix; windows running past the end are
/// padded with zeros.
bool is_valid_wbn_sequence(std::span<const std::uint8_t> erasures, const WbnSpec& spec);

/// m * E_eps: zero the columns flagged in eps.
FieldMatrix mask_columns(const FieldMatrix& m, const ErasurePattern& eps);

}  // namespace streamcode
