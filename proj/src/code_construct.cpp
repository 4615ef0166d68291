#include "code_construct.hpp"

#include <algorithm>
#include <numeric>

#include "error.hpp"
#include "parallel.hpp"

namespace streamcode {

Rational Rational::make(std::int64_t num, std::int64_t den) {
  if (den == 0) throw Error(ErrorCode::invalid_argument, "zero denominator");
  if (den < 0) {
    num = -num;
    den = -den;
  }
  const std::int64_t g = std::gcd(num < 0 ? -num : num, den);
  return {num / (g == 0 ? 1 : g), den / (g == 0 ? 1 : g)};
}

std::string Rational::to_string() const {
  return std::to_string(num) + "/" + std::to_string(den);
}

namespace {

void check_ordering(std::size_t T, std::size_t B, std::size_t N) {
  if (B == 0 && N == 0) return;
  if (!(T >= B && B >= N && N >= 1))
    throw Error(ErrorCode::invalid_argument,
                "parameters must satisfy T >= B >= N >= 1 (got T=" + std::to_string(T) +
                    ", B=" + std::to_string(B) + ", N=" + std::to_string(N) + ")");
}

}  // namespace

CodeParams::CodeParams(std::size_t W, std::size_t T, std::size_t B, std::size_t N)
    : W_(W), T_(T), B_(B), N_(N) {
  check_ordering(T, B, N);
  if (W <= T)
    throw Error(ErrorCode::invalid_argument,
                "W must exceed T (use the short-window constructor for W <= T)");
}

CodeParams CodeParams::short_window(std::size_t W, std::size_t T, std::size_t B, std::size_t N) {
  check_ordering(T, B, N);
  if (W <= B)
    throw Error(ErrorCode::invalid_argument, "short-window codes need W > B");
  CodeParams p;
  p.W_ = W;
  p.T_ = T;
  p.B_ = B;
  p.N_ = N;
  return p;
}

CodeParams CodeParams::any(std::size_t W, std::size_t T, std::size_t B, std::size_t N) {
  return W > T ? CodeParams(W, T, B, N) : short_window(W, T, B, N);
}

Rational capacity(std::size_t W, std::size_t T, std::size_t B, std::size_t N) {
  check_ordering(T, B, N);
  if (W >= T + 1) return Rational::make(T - N + 1, T + B - N + 1);
  if (W <= N) throw Error(ErrorCode::invalid_argument, "capacity needs W > N");
  return Rational::make(W - N, W + B - N);
}

std::uint64_t binomial(std::uint64_t n, std::uint64_t r) {
  if (r > n) return 0;
  r = std::min(r, n - r);
  std::uint64_t out = 1;
  for (std::uint64_t i = 1; i <= r; ++i) out = out * (n - r + i) / i;
  return out;
}

std::uint64_t field_size_bound(std::size_t T, std::size_t B, std::size_t N) {
  check_ordering(T, B, N);
  return 2 * (binomial(T + 1, N) + T - B + 2);
}

const char* regime_name(Regime r) {
  switch (r) {
    case Regime::high_rate: return "high-rate";
    case Regime::low_rate: return "low-rate";
    case Regime::mds: return "mds";
    case Regime::martinian_sundberg: return "martinian-sundberg";
  }
  return "?";
}

std::size_t GeneratorTemplate::count(CellKind kind) const {
  return static_cast<std::size_t>(std::count(cells.begin(), cells.end(), kind));
}

namespace {

GeneratorTemplate blank_template(Regime regime, std::size_t rows, std::size_t cols) {
  GeneratorTemplate t{regime, rows, cols, 0, 0, {}, {}};
  t.cells.assign(rows * cols, CellKind::zero);
  t.mds_index.assign(rows * cols, {0, 0});
  return t;
}

void mark(GeneratorTemplate& t, std::size_t r, std::size_t c, CellKind kind) {
  t.cells[r * t.cols + c] = kind;
}

void mark_mds(GeneratorTemplate& t, std::size_t r, std::size_t c, std::size_t vr, std::size_t vc) {
  t.cells[r * t.cols + c] = CellKind::mds;
  t.mds_index[r * t.cols + c] = {vr, vc};
}

}  // namespace

GeneratorTemplate build_template(const CodeParams& params) {
  const std::size_t k = params.k();
  const std::size_t B = params.B();
  const std::size_t N = params.N();

  if (B == N) {
    auto t = blank_template(Regime::mds, k, B);
    t.mds_rows = k;
    t.mds_cols = B;
    for (std::size_t r = 0; r < k; ++r)
      for (std::size_t c = 0; c < B; ++c) mark_mds(t, r, c, r, c);
    return t;
  }

  if (k >= B) {
    // [ D_N^{(B-N) x B} ; 0 | P_right ; V^{(k-B) x B} ]
    auto t = blank_template(Regime::high_rate, k, B);
    for (std::size_t r = 0; r < B - N; ++r)
      for (std::size_t c = r; c < r + N; ++c) mark(t, r, c, CellKind::free);
    for (std::size_t r = B - N; r < B; ++r)
      for (std::size_t c = B - N; c < B; ++c) mark(t, r, c, CellKind::free);
    t.mds_rows = k - B;
    t.mds_cols = B;
    for (std::size_t r = B; r < k; ++r)
      for (std::size_t c = 0; c < B; ++c) mark_mds(t, r, c, r - B, c);
    return t;
  }

  // k < B: rows [q_left 0^i q_right 0^{B-N-i}] over [V_left 0 V_right].
  auto t = blank_template(Regime::low_rate, k, B);
  const std::size_t left = B - k;
  const std::size_t right = k + N - B;
  const std::size_t gap = B - N;
  for (std::size_t r = 0; r < gap; ++r) {
    for (std::size_t c = 0; c < left; ++c) mark(t, r, c, CellKind::free);
    for (std::size_t c = left + r; c < left + r + right; ++c) mark(t, r, c, CellKind::free);
  }
  t.mds_rows = right;
  t.mds_cols = N;
  for (std::size_t r = gap; r < k; ++r) {
    for (std::size_t c = 0; c < left; ++c) mark_mds(t, r, c, r - gap, c);
    for (std::size_t c = left + gap; c < B; ++c) mark_mds(t, r, c, r - gap, c - gap);
  }
  return t;
}

GeneratorTemplate martinian_sundberg_template(const CodeParams& params) {
  const std::size_t k = params.k();
  const std::size_t B = params.B();
  if (k < B)
    throw Error(ErrorCode::invalid_argument, "Martinian-Sundberg parity needs k >= B");
  auto t = blank_template(Regime::martinian_sundberg, k, B);
  for (std::size_t r = 0; r < B; ++r) mark(t, r, r, CellKind::one);
  t.mds_rows = k - B;
  t.mds_cols = B;
  for (std::size_t r = B; r < k; ++r)
    for (std::size_t c = 0; c < B; ++c) mark_mds(t, r, c, r - B, c);
  return t;
}

GeneratorMatrix::GeneratorMatrix(CodeParams params, FieldMatrix g)
    : params_(params), g_(std::move(g)) {
  if (g_.rows() != params_.k() || g_.cols() != params_.n())
    throw Error(ErrorCode::dimension_mismatch,
                "generator is " + std::to_string(g_.rows()) + "x" + std::to_string(g_.cols()) +
                    ", parameters need " + std::to_string(params_.k()) + "x" +
                    std::to_string(params_.n()));
  for (std::size_t r = 0; r < k(); ++r)
    for (std::size_t c = 0; c < k(); ++c)
      if (g_.at(r, c) != (r == c ? 1u : 0u))
        throw Error(ErrorCode::invalid_argument, "generator is not systematic [I_k P]");
}

GeneratorMatrix fill_template(const CodeParams& params, const GeneratorTemplate& tpl,
                              const PrimeField& field, ConstructionMode mode, Rng& rng) {
  const std::size_t k = params.k();
  const std::size_t n = params.n();
  if (tpl.rows != k || tpl.cols != n - k)
    throw Error(ErrorCode::dimension_mismatch, "template does not match parameters");
  std::optional<FieldMatrix> v;
  if (mode == ConstructionMode::deterministic_mds && tpl.mds_rows > 0 && tpl.mds_cols > 0)
    v = mds_parity(tpl.mds_rows, tpl.mds_cols, field);

  FieldMatrix g(k, n, field);
  for (std::size_t r = 0; r < k; ++r) g.set(r, r, 1);
  for (std::size_t r = 0; r < k; ++r)
    for (std::size_t c = 0; c < tpl.cols; ++c) {
      Element value = 0;
      switch (tpl.at(r, c)) {
        case CellKind::zero: break;
        case CellKind::one: value = 1; break;
        case CellKind::free:
          value = static_cast<Element>(rng.uniform_below(field.modulus()));
          break;
        case CellKind::mds:
          if (v) {
            const auto [vr, vc] = tpl.mds_index[r * tpl.cols + c];
            value = v->at(vr, vc);
          } else {
            value = static_cast<Element>(rng.uniform_below(field.modulus()));
          }
          break;
      }
      g.set(r, k + c, value);
    }
  return GeneratorMatrix(params, std::move(g));
}

GeneratorMatrix construct_random(const CodeParams& params, const PrimeField& field,
                                 std::uint64_t seed, ConstructionMode mode) {
  Rng rng(seed);
  return fill_template(params, build_template(params), field, mode, rng);
}

namespace {

// Forward elimination on a row-major rows x (cols + 1) augmented buffer;
// true iff the last column is consistent with the first `cols`.
bool augmented_consistent(std::vector<Element>& a, std::size_t rows, std::size_t cols,
                          const PrimeField& f) {
  const std::size_t stride = cols + 1;
  std::size_t lead = 0;
  for (std::size_t c = 0; c < cols && lead < rows; ++c) {
    std::size_t found = lead;
    while (found < rows && a[found * stride + c] == 0) ++found;
    if (found == rows) continue;
    if (found != lead)
      for (std::size_t j = c; j < stride; ++j) std::swap(a[found * stride + j], a[lead * stride + j]);
    const Element scale = f.inv(a[lead * stride + c]);
    for (std::size_t r = lead + 1; r < rows; ++r) {
      const Element factor = a[r * stride + c];
      if (factor == 0) continue;
      const Element m = f.mul(factor, scale);
      for (std::size_t j = c; j < stride; ++j)
        a[r * stride + j] = f.sub(a[r * stride + j], f.mul(m, a[lead * stride + j]));
    }
    ++lead;
  }
  for (std::size_t r = lead; r < rows; ++r)
    if (a[r * stride + cols] != 0) return false;
  return true;
}

std::vector<ErasurePattern> window_patterns(std::size_t window, std::size_t B, std::size_t N) {
  if (B == 0) return {ErasurePattern(window)};
  return enumerate_maximal_patterns(window, B, N);
}

}  // namespace

VerifyResult verify_achievable(const FieldMatrix& g, std::size_t T, std::size_t B, std::size_t N) {
  const std::size_t k = g.rows();
  const std::size_t n = g.cols();
  const std::size_t window = T + 1;
  if (B > window) throw Error(ErrorCode::invalid_argument, "burst longer than the window T+1");
  const auto patterns = window_patterns(window, B, N);
  const PrimeField& f = g.field();

  std::vector<Element> work;
  std::vector<std::size_t> kept;
  for (std::size_t i = 0; i < k; ++i) {
    const std::size_t h = k - i;
    for (const auto& eps : patterns) {
      kept.clear();
      for (std::size_t c = 0; c < window; ++c)
        if (!eps.erased(c) && i + c < n) kept.push_back(i + c);
      const std::size_t m = kept.size();
      work.assign(h * (m + 1), 0);
      for (std::size_t r = 0; r < h; ++r) {
        for (std::size_t c = 0; c < m; ++c) work[r * (m + 1) + c] = g.at(i + r, kept[c]);
      }
      work[m] = 1;  // u_0 of the reduced (k-i)-row system
      if (!augmented_consistent(work, h, m, f))
        return {false, VerifyWitness{i, eps}};
    }
  }
  return {true, std::nullopt};
}

VerifyResult verify_achievable(const GeneratorMatrix& g) {
  const auto& p = g.params();
  return verify_achievable(g.matrix(), p.design_delay(), p.B(), p.N());
}

ConstructionResult construct_verified(const CodeParams& params, const PrimeField& field,
                                      std::size_t max_attempts, std::uint64_t seed,
                                      ConstructionMode mode, unsigned threads) {
  const GeneratorTemplate tpl = build_template(params);
  const std::size_t batch = std::max<std::size_t>(1, std::size_t{threads} * 4);
  std::vector<std::optional<GeneratorMatrix>> results;
  for (std::size_t base = 0; base < max_attempts; base += batch) {
    const std::size_t count = std::min(batch, max_attempts - base);
    results.assign(count, std::nullopt);
    parallel_for(count, threads, [&](std::size_t j) {
      Rng rng(derive_seed(seed, base + j));
      auto g = fill_template(params, tpl, field, mode, rng);
      if (verify_achievable(g).achievable) results[j] = std::move(g);
    });
    for (std::size_t j = 0; j < count; ++j)
      if (results[j]) return {std::move(*results[j]), base + j + 1};
  }
  throw Error(ErrorCode::exhausted,
              "no verified code after " + std::to_string(max_attempts) +
                  " attempts over GF(" + std::to_string(field.modulus()) +
                  "); the field is likely too small");
}

GeneratorMatrix baseline_martinian_sundberg(const CodeParams& params, const PrimeField& field) {
  Rng unused(0);
  return fill_template(params, martinian_sundberg_template(params), field,
                       ConstructionMode::deterministic_mds, unused);
}

GeneratorMatrix baseline_mds(const CodeParams& params, const PrimeField& field) {
  const std::size_t k = params.k();
  const std::size_t B = params.B();
  if (field.modulus() < params.n())
    throw Error(ErrorCode::field_too_small, "MDS baseline needs p >= n");
  FieldMatrix g(k, params.n(), field);
  for (std::size_t r = 0; r < k; ++r) g.set(r, r, 1);
  if (B > 0) {
    const FieldMatrix v = mds_parity(k, B, field);
    for (std::size_t r = 0; r < k; ++r)
      for (std::size_t c = 0; c < B; ++c) g.set(r, k + c, v.at(r, c));
  }
  return GeneratorMatrix(params, std::move(g));
}

}  // namespace streamcode
