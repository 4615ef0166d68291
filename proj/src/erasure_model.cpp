#include "erasure_model.hpp"

#include <algorithm>
#include <numeric>

#include "error.hpp"

namespace streamcode {

ErasurePattern::ErasurePattern(std::vector<std::uint8_t> bits) : bits_(std::move(bits)) {
  for (auto& b : bits_)
    if (b > 1) throw Error(ErrorCode::invalid_argument, "erasure bits must be 0 or 1");
}

ErasurePattern ErasurePattern::parse(std::string_view text) {
  std::vector<std::uint8_t> bits;
  bits.reserve(text.size());
  for (char ch : text) {
    if (ch != '0' && ch != '1')
      throw Error(ErrorCode::parse_error, "erasure pattern must contain only 0/1");
    bits.push_back(ch == '1');
  }
  return ErasurePattern(std::move(bits));
}

std::size_t ErasurePattern::weight() const noexcept {
  return static_cast<std::size_t>(std::count(bits_.begin(), bits_.end(), 1));
}

std::string ErasurePattern::to_string() const {
  std::string s(bits_.size(), '0');
  for (std::size_t i = 0; i < bits_.size(); ++i)
    if (bits_[i]) s[i] = '1';
  return s;
}

void WbnSpec::validate() const {
  if (W == 0) throw Error(ErrorCode::invalid_argument, "window W must be positive");
  if (B > 0 && !(B >= N && N >= 1))
    throw Error(ErrorCode::invalid_argument, "need B >= N >= 1 when B > 0");
  if (B == 0 && N != 0) throw Error(ErrorCode::invalid_argument, "B = 0 forces N = 0");
}

std::vector<ErasurePattern> enumerate_maximal_patterns(std::size_t W, std::size_t B,
                                                       std::size_t N) {
  if (!(W >= B && B >= N && N >= 1))
    throw Error(ErrorCode::invalid_argument, "maximal patterns need W >= B >= N >= 1");
  std::vector<ErasurePattern> out;
  // N ones anywhere: walk index combinations.
  std::vector<std::size_t> pick(N);
  std::iota(pick.begin(), pick.end(), 0);
  for (;;) {
    ErasurePattern p(W);
    for (std::size_t i : pick) p.set(i, true);
    out.push_back(std::move(p));
    std::size_t i = N;
    while (i > 0 && pick[i - 1] == W - N + i - 1) --i;
    if (i == 0) break;
    ++pick[i - 1];
    for (std::size_t j = i; j < N; ++j) pick[j] = pick[j - 1] + 1;
  }
  if (B > N) {
    for (std::size_t start = 0; start + B <= W; ++start) {
      ErasurePattern p(W);
      for (std::size_t i = start; i < start + B; ++i) p.set(i, true);
      out.push_back(std::move(p));
    }
  }
  std::sort(out.begin(), out.end(), [](const ErasurePattern& a, const ErasurePattern& b) {
    return a.to_string() < b.to_string();
  });
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

bool is_valid_wbn_sequence(std::span<const std::uint8_t> erasures, const WbnSpec& spec) {
  spec.validate();
  const std::size_t len = erasures.size();
  for (std::size_t start = 0; start < len; ++start) {
    const std::size_t end = std::min(len, start + spec.W);
    std::size_t count = 0;
    std::size_t first = end;
    std::size_t last = start;
    for (std::size_t i = start; i < end; ++i) {
      if (!erasures[i]) continue;
      ++count;
      first = std::min(first, i);
      last = i;
    }
    if (count <= spec.N) continue;
    if (count > spec.B) return false;
    if (last - first + 1 != count) return false;
  }
  return true;
}

FieldMatrix mask_columns(const FieldMatrix& m, const ErasurePattern& eps) {
  if (m.cols() != eps.size())
    throw Error(ErrorCode::dimension_mismatch, "pattern length != matrix columns");
  FieldMatrix out = m;
  for (std::size_t c = 0; c < m.cols(); ++c)
    if (eps.erased(c))
      for (std::size_t r = 0; r < m.rows(); ++r) out.set(r, c, 0);
  return out;
}

}  // namespace streamcode
