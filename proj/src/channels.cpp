#include "channels.hpp"

#include <cmath>

#include "error.hpp"

namespace streamcode {

namespace {

void check_probability(double v, const char* name) {
  if (!(v >= 0.0 && v <= 1.0))
    throw Error(ErrorCode::invalid_argument, std::string(name) + " must lie in [0, 1]");
}

}  // namespace

void GEParams::validate() const {
  check_probability(alpha, "alpha");
  check_probability(beta, "beta");
  check_probability(epsilon, "epsilon");
}

void FritchmanParams::validate() const {
  check_probability(alpha, "alpha");
  check_probability(beta, "beta");
  check_probability(epsilon, "epsilon");
  if (M < 1) throw Error(ErrorCode::invalid_argument, "Fritchman channel needs M >= 1");
}

double ge_average_loss_rate(const GEParams& p) {
  p.validate();
  if (p.alpha + p.beta == 0)
    throw Error(ErrorCode::invalid_argument, "alpha + beta must be positive");
  return p.beta / (p.alpha + p.beta) * p.epsilon + p.alpha / (p.alpha + p.beta);
}

double fritchman_average_loss_rate(const FritchmanParams& p) {
  p.validate();
  if (p.beta == 0) {
    if (p.alpha == 0) throw Error(ErrorCode::invalid_argument, "alpha + beta must be positive");
    return 1.0;
  }
  const double good = 1.0 / (1.0 + static_cast<double>(p.M) * p.alpha / p.beta);
  return good * p.epsilon + (1.0 - good);
}

std::pair<bool, int> ge_step(int state, const GEParams& p, Rng& rng) {
  if (state == 0) {
    if (rng.bernoulli(p.alpha)) state = 1;
  } else if (rng.bernoulli(p.beta)) {
    state = 0;
  }
  const bool erased = state == 1 ? true : rng.bernoulli(p.epsilon);
  return {erased, state};
}

std::pair<bool, std::size_t> fritchman_step(std::size_t state, const FritchmanParams& p,
                                            Rng& rng) {
  if (state == 0) {
    if (rng.bernoulli(p.alpha)) state = 1;
  } else if (rng.bernoulli(p.beta)) {
    state = state == p.M ? 0 : state + 1;
  }
  const bool erased = state != 0 ? true : rng.bernoulli(p.epsilon);
  return {erased, state};
}

GilbertElliottChannel::GilbertElliottChannel(GEParams p, std::uint64_t seed, InitialState init)
    : p_(p), rng_(seed) {
  p_.validate();
  if (init == InitialState::stationary) {
    if (p_.alpha + p_.beta == 0)
      throw Error(ErrorCode::invalid_argument, "no stationary state when alpha = beta = 0");
    const double bad = p_.alpha / (p_.alpha + p_.beta);
    state_ = rng_.bernoulli(bad) ? 1 : 0;
  }
}

bool GilbertElliottChannel::next() {
  const auto [erased, s] = ge_step(state_, p_, rng_);
  state_ = s;
  return erased;
}

FritchmanChannel::FritchmanChannel(FritchmanParams p, std::uint64_t seed, InitialState init)
    : p_(p), rng_(seed) {
  p_.validate();
  if (init == InitialState::stationary) {
    if (p_.alpha + p_.beta == 0)
      throw Error(ErrorCode::invalid_argument, "no stationary state when alpha = beta = 0");
    const double good = 1.0 / (1.0 + static_cast<double>(p_.M) * p_.alpha / p_.beta);
    if (!rng_.bernoulli(good)) state_ = 1 + rng_.uniform_below(p_.M);
  }
}

bool FritchmanChannel::next() {
  const auto [erased, s] = fritchman_step(state_, p_, rng_);
  state_ = s;
  return erased;
}

ReplayChannel::ReplayChannel(std::vector<std::uint8_t> bits, std::size_t period)
    : bits_(std::move(bits)), period_(period == 0 ? bits_.size() : period) {
  if (bits_.empty()) throw Error(ErrorCode::invalid_argument, "replay sequence is empty");
}

bool ReplayChannel::next() {
  const std::size_t idx = t_ % period_;
  ++t_;
  return idx < bits_.size() && bits_[idx] != 0;
}

IidChannel::IidChannel(double epsilon, std::uint64_t seed) : epsilon_(epsilon), rng_(seed) {
  check_probability(epsilon, "epsilon");
}

bool IidChannel::next() { return rng_.bernoulli(epsilon_); }

std::vector<std::uint8_t> replay_sequence(const std::vector<std::uint8_t>& bits,
                                          std::size_t period, std::size_t count) {
  ReplayChannel ch(bits, period);
  return draw(ch, count);
}

std::vector<std::uint8_t> draw(ErasureSource& source, std::size_t count) {
  std::vector<std::uint8_t> out(count);
  for (auto& b : out) b = source.next() ? 1 : 0;
  return out;
}

}  // namespace streamcode
