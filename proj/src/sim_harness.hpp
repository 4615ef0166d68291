#pragma once

#include <cstddef>
#include <cstdint>
#include <map>
#include <memory>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "channels.hpp"
#include "code_construct.hpp"
#include "conv_codec.hpp"

namespace streamcode {

struct ChannelSpec {
  enum class Type { ge, fritchman, replay, iid };
  Type type = Type::ge;
  double alpha = 0;
  double beta = 1;
  double epsilon = 0;
  std::size_t M = 1;
  std::vector<std::uint8_t> bits;  // replay only
  std::size_t period = 0;          // replay only; 0 = bits.size()
  InitialState initial = InitialState::stationary;

  std::string name() const;
  void validate() const;
};

/// Channel instance with the good-state erasure probability replaced by
/// `epsilon` (ignored for replay channels).
std::unique_ptr<ErasureSource> make_channel(const ChannelSpec& spec, double epsilon,
                                            std::uint64_t seed);

enum class CodeKind { random, martinian_sundberg, mds };

struct CodeSpec {
  std::string name;
  CodeKind kind = CodeKind::random;
  std::size_t W = 0, T = 0, B = 0, N = 0;
  ConstructionMode mode = ConstructionMode::random;
  std::size_t attempts = 5000;
  std::optional<std::uint64_t> seed;
  std::optional<std::uint32_t> field;
};

enum class DecoderKind {
  /// Loss decided from the erasure pattern alone.
  pattern,
  /// Random sources pushed through the streaming encoder and decoder.
  full,
};

struct RunConfig {
  std::uint64_t seed = 1;
  std::size_t horizon = 1000000;  // scored packets per trial
  std::size_t trials = 1;
  std::uint32_t field = 997;
  ChannelSpec channel;
  std::vector<double> epsilons;
  std::vector<CodeSpec> codes;
  DecoderKind decoder = DecoderKind::pattern;

  void validate() const;
};

struct LossStats {
  std::uint64_t packets_sent = 0;
  std::uint64_t packets_lost = 0;
  double loss_probability = 0;
  /// Standard error of loss_probability from the spread across trials; 0 with
  /// a single trial.
  double standard_error = 0;
  std::vector<double> trial_loss;
  double seconds = 0;
};

struct SweepPoint {
  std::string code;
  std::string channel;
  double epsilon = 0;
  LossStats stats;
};

/// Builds the generator for one code entry of a run config.
GeneratorMatrix build_code(const CodeSpec& spec, std::uint32_t default_field,
                           std::uint64_t master_seed, std::size_t index, unsigned threads = 1);

/// Seeds: code c uses derive_seed(derive_seed(seed, code_stream), c) unless it
/// names its own; trial t at sweep point e uses
/// derive_seed(derive_seed(derive_seed(seed, channel_stream), e), t), shared by
/// all codes so they see the same erasures.
inline constexpr std::uint64_t code_stream = 0x636f6465;
inline constexpr std::uint64_t channel_stream = 0x6368616e;
inline constexpr std::uint64_t source_stream = 0x73726373;

/// Results ordered by (code, epsilon).
std::vector<SweepPoint> run_loss_sweep(const RunConfig& cfg, unsigned threads = 1);

/// Counts source packets 0..scored-1 lost by the code over a fixed erasure
/// trace; the trace must cover scored + T packets.
std::uint64_t count_losses(const ConvCode& code, std::span<const std::uint8_t> erasures,
                           std::size_t scored, DecoderKind decoder, std::uint64_t source_seed = 0);

std::string sweep_csv(const std::vector<SweepPoint>& points, bool timing);

/// Maximal runs of consecutive erasures, length -> count.
std::map<std::size_t, std::uint64_t> burst_histogram(std::span<const std::uint8_t> trace);

struct Table2Case {
  std::size_t T, c, d;
};

struct Table2Row {
  Table2Case params;
  std::uint32_t p = 0;
  std::size_t samples = 0;
  std::size_t successes = 0;
  double rate = 0;
};

struct Table2Config {
  std::vector<Table2Case> cases;
  std::vector<std::uint32_t> fields;
  std::size_t samples = 3000;
  std::uint64_t seed = 1;
  ConstructionMode mode = ConstructionMode::random;
};

/// The six parameter triples and five fields of the reference experiment.
Table2Config default_table2_config();

/// (T, c, d) maps to W = T+1, B = c-1, N = d-1. Sample s of case a over GF(p)
/// is construct_random with derive_seed(derive_seed(derive_seed(seed, a), p), s).
std::vector<Table2Row> run_table2_experiment(const Table2Config& cfg, unsigned threads = 1);

std::string table2_csv(const std::vector<Table2Row>& rows);

}  // namespace streamcode
