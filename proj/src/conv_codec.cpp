#include "conv_codec.hpp"

#include <algorithm>

#include "error.hpp"

namespace streamcode {

ConvCode interleave(const GeneratorMatrix& g) {
  const std::size_t k = g.k();
  const std::size_t n = g.n();
  std::vector<FieldMatrix> gens(n, FieldMatrix(k, n, g.field()));
  std::size_t memory = 0;
  for (std::size_t r = 0; r < k; ++r)
    for (std::size_t j = 0; j < n; ++j) {
      const Element v = g.matrix().at(r, j);
      if (v == 0) continue;
      if (j < r) throw Error(ErrorCode::invalid_argument, "generator is not systematic");
      gens[j - r].set(r, j, v);
      memory = std::max(memory, j - r);
    }
  gens.resize(memory + 1, FieldMatrix(k, n, g.field()));
  return ConvCode{g, std::move(gens), memory};
}

ConvEncoder::ConvEncoder(const ConvCode& code) : code_(&code) {}

std::vector<Element> ConvEncoder::step(std::span<const Element> source) {
  const std::size_t k = code_->k();
  const std::size_t n = code_->n();
  if (source.size() != k)
    throw Error(ErrorCode::dimension_mismatch,
                "source packet has " + std::to_string(source.size()) + " symbols, code needs " +
                    std::to_string(k));
  history_.emplace_front(source.begin(), source.end());
  if (history_.size() > code_->memory + 1) history_.pop_back();

  const PrimeField& f = code_->base.field();
  std::vector<Element> x(n, 0);
  for (std::size_t l = 0; l < history_.size(); ++l) {
    const FieldMatrix& gl = code_->gens[l];
    const auto& s = history_[l];
    for (std::size_t r = 0; r < k; ++r) {
      if (s[r] == 0) continue;
      for (std::size_t j = 0; j < n; ++j)
        if (gl.at(r, j) != 0) x[j] = f.add(x[j], f.mul(s[r], gl.at(r, j)));
    }
  }
  ++time_;
  return x;
}

ConvDecoder::ConvDecoder(const ConvCode& code) : code_(&code) {}

const std::vector<Element>* ConvDecoder::packet_at(std::size_t t) const {
  if (t < first_ || t >= next_) return nullptr;
  const auto& p = window_[t - first_];
  return p ? &*p : nullptr;
}

DecodedPacket ConvDecoder::decode_packet(std::size_t i, bool deadline_met) const {
  const std::size_t k = code_->k();
  const std::size_t n = code_->n();
  const std::size_t T = code_->delay();
  const FieldMatrix& g = code_->base.matrix();

  DecodedPacket out;
  out.time = i;
  out.deadline_met = deadline_met;
  out.symbols.assign(k, 0);
  out.symbol_recovered.assign(k, 0);

  if (const auto* direct = packet_at(i)) {
    std::copy_n(direct->begin(), k, out.symbols.begin());
    std::fill(out.symbol_recovered.begin(), out.symbol_recovered.end(), 1);
    out.recovered = true;
    return out;
  }

  std::vector<Element> y(n, 0);
  std::vector<std::uint8_t> available(n, 0);
  std::vector<std::optional<Element>> known(k);
  out.recovered = true;
  for (std::size_t r = 0; r < k; ++r) {
    const std::int64_t d = static_cast<std::int64_t>(i) - static_cast<std::int64_t>(r);
    std::fill(y.begin(), y.end(), 0);
    std::fill(available.begin(), available.end(), 0);
    for (std::size_t u = 0; u < k; ++u)
      known[u] = d + static_cast<std::int64_t>(u) < 0 ? std::optional<Element>(0) : std::nullopt;
    const std::size_t last = std::min(n - 1, r + T);
    for (std::size_t j = 0; j <= last; ++j) {
      const std::int64_t t = d + static_cast<std::int64_t>(j);
      if (t < 0) continue;
      if (const auto* p = packet_at(static_cast<std::size_t>(t))) {
        y[j] = (*p)[j];
        available[j] = 1;
      }
    }
    const auto value = recover_symbol(g, y, available, known, r);
    if (value) {
      out.symbols[r] = *value;
      out.symbol_recovered[r] = 1;
    } else {
      out.recovered = false;
    }
  }
  return out;
}

std::optional<DecodedPacket> ConvDecoder::step(std::size_t time,
                                               std::optional<std::span<const Element>> packet) {
  if (time != next_)
    throw Error(ErrorCode::invalid_argument,
                "packet for time " + std::to_string(time) + " arrived, expected " +
                    std::to_string(next_));
  if (packet && packet->size() != code_->n())
    throw Error(ErrorCode::dimension_mismatch, "channel packet length differs from n");
  if (packet)
    window_.emplace_back(std::vector<Element>(packet->begin(), packet->end()));
  else
    window_.emplace_back(std::nullopt);
  ++next_;

  const std::size_t T = code_->delay();
  std::optional<DecodedPacket> out;
  if (time >= T) {
    out = decode_packet(time - T, true);
    emitted_ = time - T + 1;
  }
  // Keep what the oldest pending diagonal can still need.
  const std::size_t keep_from = emitted_ >= code_->k() ? emitted_ - code_->k() + 1 : 0;
  while (first_ < keep_from && !window_.empty()) {
    window_.pop_front();
    ++first_;
  }
  return out;
}

std::vector<DecodedPacket> ConvDecoder::flush() {
  std::vector<DecodedPacket> out;
  for (std::size_t i = emitted_; i < next_; ++i) out.push_back(decode_packet(i, false));
  emitted_ = next_;
  return out;
}

PatternLossEvaluator::PatternLossEvaluator(const ConvCode& code) : code_(&code) {
  if (code.n() > 48 || code.k() > 255)
    throw Error(ErrorCode::invalid_argument, "pattern evaluator supports n <= 48");
}

bool PatternLossEvaluator::recoverable(std::size_t r, std::size_t startup, std::uint64_t mask) {
  const std::uint64_t key = mask | (std::uint64_t{r} << 48) | (std::uint64_t{startup} << 56);
  if (auto it = cache_.find(key); it != cache_.end()) return it->second;

  const std::size_t k = code_->k();
  const std::size_t n = code_->n();
  std::vector<std::uint8_t> available(n, 0);
  for (std::size_t j = 0; j < n; ++j) available[j] = (mask >> j) & 1u;
  std::vector<std::uint8_t> unknown(k, 1);
  for (std::size_t u = 0; u < std::min(startup, k); ++u) unknown[u] = 0;
  const bool ok = symbol_recoverable(code_->base.matrix(), available, unknown, r);
  cache_.emplace(key, ok);
  return ok;
}

}  // namespace streamcode
