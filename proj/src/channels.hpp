#pragma once

#include <cstddef>
#include <cstdint>
#include <memory>
#include <utility>
#include <vector>

#include "rng.hpp"

namespace streamcode {

/// Two-state Gilbert-Elliott channel. The bad state always erases.
struct GEParams {
  double alpha = 0;    // good -> bad
  double beta = 0;     // bad -> good
  double epsilon = 0;  // erasure probability in the good state

  void validate() const;
};

/// One good state G and a chain of M bad states E_1..E_M:
/// G -> E_1 w.p. alpha, E_l -> E_{l+1} w.p. beta, E_M -> G w.p. beta.
struct FritchmanParams {
  double alpha = 0;
  double beta = 0;
  double epsilon = 0;
  std::size_t M = 1;

  void validate() const;
};

enum class InitialState { stationary, good };

/// beta/(alpha+beta) * epsilon + alpha/(alpha+beta).
double ge_average_loss_rate(const GEParams& p);
double fritchman_average_loss_rate(const FritchmanParams& p);

/// State 0 is good. One step moves the chain, then draws the erasure.
std::pair<bool, int> ge_step(int state, const GEParams& p, Rng& rng);
/// State 0 is G, state l is E_l.
std::pair<bool, std::size_t> fritchman_step(std::size_t state, const FritchmanParams& p, Rng& rng);

class ErasureSource {
public:
  virtual ~ErasureSource() = default;
  virtual bool next() = 0;
};

class GilbertElliottChannel final : public ErasureSource {
public:
  GilbertElliottChannel(GEParams p, std::uint64_t seed,
                        InitialState init = InitialState::stationary);
  bool next() override;
  int state() const noexcept { return state_; }

private:
  GEParams p_;
  Rng rng_;
  int state_ = 0;
};

class FritchmanChannel final : public ErasureSource {
public:
  FritchmanChannel(FritchmanParams p, std::uint64_t seed,
                   InitialState init = InitialState::stationary);
  bool next() override;
  std::size_t state() const noexcept { return state_; }

private:
  FritchmanParams p_;
  Rng rng_;
  std::size_t state_ = 0;
};

/// Repeats bits[0..period) forever; indices past bits.size() read as 0.
class ReplayChannel final : public ErasureSource {
public:
  explicit ReplayChannel(std::vector<std::uint8_t> bits, std::size_t period = 0);
  bool next() override;

private:
  std::vector<std::uint8_t> bits_;
  std::size_t period_;
  std::size_t t_ = 0;
};

class IidChannel final : public ErasureSource {
public:
  IidChannel(double epsilon, std::uint64_t seed);
  bool next() override;

private:
  double epsilon_;
  Rng rng_;
};

/// First `count` bits of a periodic replay.
std::vector<std::uint8_t> replay_sequence(const std::vector<std::uint8_t>& bits,
                                          std::size_t period, std::size_t count);

std::vector<std::uint8_t> draw(ErasureSource& source, std::size_t count);

}  // namespace streamcode
