#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "erasure_model.hpp"
#include "gf_linalg.hpp"
#include "rng.hpp"

namespace streamcode {

struct Rational {
  std::int64_t num = 0;
  std::int64_t den = 1;

  static Rational make(std::int64_t num, std::int64_t den);
  bool operator==(const Rational&) const = default;
  std::string to_string() const;
};

/// (W, T, B, N) with k = T - N + 1 and n = T + B - N + 1. The main constructor
/// enforces W > T >= B >= N >= 1 (or the uncoded B = N = 0 case);
/// short_window() admits W <= T, in which case codes are designed for delay
/// W - 1.
class CodeParams {
public:
  CodeParams(std::size_t W, std::size_t T, std::size_t B, std::size_t N);
  static CodeParams short_window(std::size_t W, std::size_t T, std::size_t B, std::size_t N);
  /// Picks the main or short-window constructor depending on W.
  static CodeParams any(std::size_t W, std::size_t T, std::size_t B, std::size_t N);

  std::size_t W() const noexcept { return W_; }
  std::size_t T() const noexcept { return T_; }
  std::size_t B() const noexcept { return B_; }
  std::size_t N() const noexcept { return N_; }
  /// Delay the code is built for: T, or W - 1 when W <= T.
  std::size_t design_delay() const noexcept { return W_ > T_ ? T_ : W_ - 1; }
  std::size_t k() const noexcept { return design_delay() - N_ + 1; }
  std::size_t n() const noexcept { return k() + B_; }
  Rational rate() const { return Rational::make(k(), n()); }

  bool operator==(const CodeParams&) const = default;

private:
  CodeParams() = default;
  std::size_t W_ = 0, T_ = 0, B_ = 0, N_ = 0;
};

/// Capacity of the sliding-window channel: (T-N+1)/(T+B-N+1) for W >= T+1,
/// (W-N)/(W+B-N) otherwise.
Rational capacity(std::size_t W, std::size_t T, std::size_t B, std::size_t N);

/// 2 * (C(T+1, N) + T - B + 2). Any prime above it admits a verified code.
std::uint64_t field_size_bound(std::size_t T, std::size_t B, std::size_t N);

std::uint64_t binomial(std::uint64_t n, std::uint64_t r);

enum class CellKind : std::uint8_t { zero, one, mds, free };
enum class Regime { high_rate, low_rate, mds, martinian_sundberg };
const char* regime_name(Regime r);

/// Structure of the k x (n-k) parity block P. At most one MDS block V is
/// embedded; mds cells record their (row, col) inside V.
struct GeneratorTemplate {
  Regime regime;
  std::size_t rows = 0;
  std::size_t cols = 0;
  std::size_t mds_rows = 0;
  std::size_t mds_cols = 0;
  std::vector<CellKind> cells;
  std::vector<std::pair<std::size_t, std::size_t>> mds_index;

  CellKind at(std::size_t r, std::size_t c) const { return cells[r * cols + c]; }
  std::size_t count(CellKind kind) const;
};

/// High-rate form when k >= B, low-rate form when k < B, plain MDS when B = N.
GeneratorTemplate build_template(const CodeParams& params);
/// P = [I_B; V]. Requires k >= B.
GeneratorTemplate martinian_sundberg_template(const CodeParams& params);

class GeneratorMatrix {
public:
  /// g must be k x n for params and of the form [I_k P].
  GeneratorMatrix(CodeParams params, FieldMatrix g);

  const CodeParams& params() const noexcept { return params_; }
  const FieldMatrix& matrix() const noexcept { return g_; }
  const PrimeField& field() const noexcept { return g_.field(); }
  std::size_t k() const noexcept { return g_.rows(); }
  std::size_t n() const noexcept { return g_.cols(); }
  FieldMatrix parity() const { return g_.column_block(k(), n() - k()); }

  bool operator==(const GeneratorMatrix&) const = default;

private:
  CodeParams params_;
  FieldMatrix g_;
};

enum class ConstructionMode {
  /// Every non-fixed cell, MDS cells included, is an i.i.d. uniform draw over F.
  random,
  /// MDS cells come from mds_parity(); only free cells are drawn.
  deterministic_mds,
};

/// Draws the template's random cells in row-major order from rng.
GeneratorMatrix fill_template(const CodeParams& params, const GeneratorTemplate& tpl,
                              const PrimeField& field, ConstructionMode mode, Rng& rng);

GeneratorMatrix construct_random(const CodeParams& params, const PrimeField& field,
                                 std::uint64_t seed,
                                 ConstructionMode mode = ConstructionMode::random);

struct VerifyWitness {
  std::size_t symbol;
  ErasurePattern pattern;
};

struct VerifyResult {
  bool achievable = false;
  std::optional<VerifyWitness> witness;
};

/// Sufficient condition for (T+1, B, N)-achievability of the k x n block code g:
/// for every symbol i and maximal pattern eps over T+1 positions, the unit
/// vector u_i lies in space(I_{k-i} G_i E_eps), G_i being columns i..i+T of g
/// padded with zeros. Visits i ascending and patterns lexicographically and
/// reports the first failure.
VerifyResult verify_achievable(const FieldMatrix& g, std::size_t T, std::size_t B, std::size_t N);
VerifyResult verify_achievable(const GeneratorMatrix& g);

struct ConstructionResult {
  GeneratorMatrix code;
  std::size_t attempts;
};

/// Rejection sampling: attempt a uses seed derive_seed(seed, a). The
/// lowest-index verified attempt is returned regardless of thread count.
/// Throws ErrorCode::exhausted when no attempt verifies.
ConstructionResult construct_verified(const CodeParams& params, const PrimeField& field,
                                      std::size_t max_attempts, std::uint64_t seed,
                                      ConstructionMode mode = ConstructionMode::random,
                                      unsigned threads = 1);

/// [I_k | [I_B; V]]; requires k >= B.
GeneratorMatrix baseline_martinian_sundberg(const CodeParams& params, const PrimeField& field);
/// [I_k | V^{k x B}]; requires p >= n.
GeneratorMatrix baseline_mds(const CodeParams& params, const PrimeField& field);

}  // namespace streamcode
