#include <doctest.h>

#include "code_construct.hpp"
#include "error.hpp"
#include "oracles.hpp"
#include "worked_examples.hpp"

using namespace streamcode;

namespace {

GeneratorMatrix example_code(const examples::Example& e, std::uint32_t p) {
  return GeneratorMatrix(CodeParams(e.W, e.T, e.B, e.N), FieldMatrix(PrimeField(p), e.rows));
}

// Verification by duality and enumeration instead of elimination.
bool verify_by_enumeration(const FieldMatrix& g, std::size_t T, std::size_t B, std::size_t N) {
  const auto pats = enumerate_maximal_patterns(T + 1, B, N);
  for (std::size_t i = 0; i < g.rows(); ++i)
    for (const auto& eps : pats) {
      std::vector<std::size_t> cols;
      for (std::size_t c = 0; c <= T; ++c)
        if (!eps.erased(c) && i + c < g.cols()) cols.push_back(i + c);
      FieldMatrix m(g.rows() - i, cols.size(), g.field());
      for (std::size_t r = i; r < g.rows(); ++r)
        for (std::size_t c = 0; c < cols.size(); ++c) m.set(r - i, c, g.at(r, cols[c]));
      if (!oracle::first_unit_in_column_space(m)) return false;
    }
  return true;
}

std::vector<std::vector<std::uint8_t>> support(const GeneratorTemplate& t) {
  std::vector<std::vector<std::uint8_t>> s(t.rows, std::vector<std::uint8_t>(t.cols));
  for (std::size_t r = 0; r < t.rows; ++r)
    for (std::size_t c = 0; c < t.cols; ++c) s[r][c] = t.at(r, c) != CellKind::zero;
  return s;
}

std::vector<std::vector<std::uint8_t>> support(const examples::Example& e, std::size_t k) {
  std::vector<std::vector<std::uint8_t>> s;
  for (const auto& row : e.rows) {
    std::vector<std::uint8_t> r;
    for (std::size_t c = k; c < row.size(); ++c) r.push_back(row[c] != 0);
    s.push_back(r);
  }
  return s;
}

}  // namespace

TEST_CASE("parameter validation") {
  CHECK_NOTHROW(CodeParams(6, 5, 3, 2));
  CHECK_THROWS_AS(CodeParams(5, 5, 3, 2), Error);
  CHECK_THROWS_AS(CodeParams(6, 5, 3, 4), Error);
  CHECK_THROWS_AS(CodeParams(6, 2, 3, 2), Error);
  CHECK_THROWS_AS(CodeParams(6, 5, 3, 0), Error);
  const CodeParams p(6, 5, 3, 2);
  CHECK(p.k() == 4);
  CHECK(p.n() == 7);
  CHECK(p.rate() == Rational::make(4, 7));
  const auto s = CodeParams::short_window(4, 6, 2, 1);
  CHECK(s.design_delay() == 3);
  CHECK(s.k() == 3);
  CHECK(CodeParams(3, 2, 0, 0).n() == 3);
}

TEST_CASE("capacity and field bound") {
  CHECK(capacity(6, 5, 3, 2) == Rational::make(4, 7));
  CHECK(capacity(8, 7, 4, 2) == Rational::make(6, 10));
  CHECK(capacity(100, 5, 3, 2) == capacity(6, 5, 3, 2));
  CHECK(capacity(4, 6, 2, 1) == Rational::make(3, 5));
  for (std::size_t T = 1; T <= 7; ++T)
    for (std::size_t B = 1; B <= T; ++B)
      CHECK(capacity(T + 1, T, B, 1) == Rational::make(T, T + B));
  CHECK(field_size_bound(5, 3, 2) == 38);
  CHECK(field_size_bound(7, 4, 2) == 66);
  CHECK(field_size_bound(7, 6, 4) == 146);
  CHECK(field_size_bound(5, 4, 3) == 46);
  CHECK(binomial(8, 4) == 70);
}

TEST_CASE("templates match the supports of the worked examples") {
  const std::pair<examples::Example, Regime> cases[] = {
      {examples::high_rate_small(), Regime::high_rate},
      {examples::high_rate_large(), Regime::high_rate},
      {examples::low_rate_small(), Regime::low_rate},
      {examples::low_rate_large(), Regime::low_rate},
  };
  for (const auto& [e, regime] : cases) {
    CAPTURE(e.name);
    const CodeParams p(e.W, e.T, e.B, e.N);
    const auto t = build_template(p);
    CHECK(t.regime == regime);
    CHECK(support(t) == support(e, p.k()));
  }
  const auto ms = martinian_sundberg_template(CodeParams(6, 5, 3, 2));
  CHECK(support(ms) == support(examples::martinian_sundberg_small(), 4));
  CHECK(build_template(CodeParams(8, 7, 4, 4)).regime == Regime::mds);
  CHECK_THROWS_AS(martinian_sundberg_template(CodeParams(6, 5, 4, 3)), Error);
}

TEST_CASE("template row weight is at least N+1") {
  for (std::size_t T = 1; T <= 9; ++T)
    for (std::size_t B = 1; B <= T; ++B)
      for (std::size_t N = 1; N <= B; ++N) {
        const CodeParams p(T + 1, T, B, N);
        const auto t = build_template(p);
        for (std::size_t r = 0; r < t.rows; ++r) {
          std::size_t w = 1;  // identity entry
          for (std::size_t c = 0; c < t.cols; ++c) w += t.at(r, c) != CellKind::zero;
          CHECK(w >= N + 1);
        }
        CHECK(t.rows == p.k());
        CHECK(t.cols == p.B());
      }
}

TEST_CASE("worked examples pass verification, Martinian-Sundberg does not") {
  CHECK(verify_achievable(example_code(examples::interleaving_example(), 5)).achievable);
  CHECK(verify_achievable(example_code(examples::high_rate_small(), 41)).achievable);
  CHECK(verify_achievable(example_code(examples::low_rate_small(), 47)).achievable);
  CHECK(verify_achievable(example_code(examples::low_rate_small(), 5)).achievable);
  CHECK(verify_achievable(example_code(examples::low_rate_large(), 149)).achievable);

  const auto ms = verify_achievable(example_code(examples::martinian_sundberg_small(), 41));
  REQUIRE_FALSE(ms.achievable);
  REQUIRE(ms.witness);
  CHECK(ms.witness->pattern.weight() == 2);
  // Independent check of the negative result.
  const auto g = example_code(examples::martinian_sundberg_small(), 41);
  CHECK_FALSE(verify_by_enumeration(g.matrix(), 5, 3, 2));
}

TEST_CASE("printed matrices that miss the condition") {
  // Over GF(5) the s1/s2 coefficients on columns 5 and 6 have determinant -5.
  const auto small = verify_achievable(example_code(examples::high_rate_small(), 5));
  REQUIRE_FALSE(small.achievable);
  CHECK(small.witness->symbol == 1);
  CHECK(small.witness->pattern.to_string() == "110000");
  CHECK_FALSE(verify_by_enumeration(example_code(examples::high_rate_small(), 5).matrix(), 5, 3, 2));

  // Rows 3..5 restricted to columns 7..9 are singular over any field.
  const auto large = verify_achievable(example_code(examples::high_rate_large(), 67));
  REQUIRE_FALSE(large.achievable);
  CHECK(large.witness->symbol == 3);
  CHECK(large.witness->pattern.to_string() == "11110000");
  for (std::uint32_t p : {67u, 97u, 101u})
    CHECK_FALSE(verify_achievable(example_code(examples::high_rate_large(), p)).achievable);
}

TEST_CASE("verifier agrees with the enumeration oracle") {
  Rng seeds(3);
  for (auto [T, B, N, p] : {std::tuple{3u, 2u, 1u, 3u}, {3u, 2u, 2u, 3u}, {4u, 3u, 2u, 3u},
                            {4u, 3u, 2u, 5u}, {5u, 3u, 2u, 3u}, {4u, 4u, 3u, 3u}, {5u, 4u, 3u, 3u}}) {
    const CodeParams params(T + 1, T, B, N);
    const PrimeField f(p);
    int passes = 0;
    for (int trial = 0; trial < 40; ++trial) {
      const auto g = construct_random(params, f, seeds.next_u64());
      const bool fast = verify_achievable(g).achievable;
      CHECK(fast == verify_by_enumeration(g.matrix(), T, B, N));
      passes += fast;
    }
  }
}

TEST_CASE("construction is deterministic and rate-optimal") {
  const CodeParams p(6, 5, 3, 2);
  const PrimeField f(41);
  CHECK(construct_random(p, f, 9) == construct_random(p, f, 9));
  const auto r1 = construct_verified(p, f, 100, 5, ConstructionMode::random, 1);
  const auto r4 = construct_verified(p, f, 100, 5, ConstructionMode::random, 4);
  CHECK(r1.code == r4.code);
  CHECK(r1.attempts == r4.attempts);
  CHECK(verify_achievable(r1.code).achievable);
  CHECK(r1.code.params().rate() == capacity(6, 5, 3, 2));

  const auto rep = construct_verified(CodeParams(2, 1, 1, 1), PrimeField(2), 50, 1);
  CHECK(rep.code.matrix() == FieldMatrix(PrimeField(2), {{1, 1}}));

  const auto det = construct_verified(CodeParams(8, 7, 4, 2), PrimeField(67), 100, 2,
                                      ConstructionMode::deterministic_mds);
  CHECK(verify_achievable(det.code).achievable);

  // B = N has no free cells in deterministic mode: the result ignores the seed.
  const CodeParams mds(8, 7, 4, 4);
  CHECK(construct_random(mds, PrimeField(11), 1, ConstructionMode::deterministic_mds) ==
        construct_random(mds, PrimeField(11), 2, ConstructionMode::deterministic_mds));
}

TEST_CASE("tiny fields exhaust attempts where codes cannot exist") {
  // (7,8,6) in reference notation: W=8, T=7, B=7, N=5 over GF(3).
  const CodeParams p(8, 7, 7, 5);
  const PrimeField f(3);
  int passes = 0;
  for (std::uint64_t s = 0; s < 300; ++s) passes += verify_achievable(construct_random(p, f, s)).achievable;
  CHECK(passes == 0);
  CHECK_THROWS_AS(construct_verified(p, f, 50, 1), Error);
}

TEST_CASE("baselines") {
  const CodeParams p(6, 5, 3, 2);
  const auto ms = baseline_martinian_sundberg(p, PrimeField(41));
  for (std::size_t r = 0; r < 3; ++r)
    for (std::size_t c = 0; c < 3; ++c) CHECK(ms.matrix().at(r, 4 + c) == (r == c ? 1u : 0u));
  CHECK_FALSE(verify_achievable(ms).achievable);

  for (std::size_t T = 1; T <= 7; ++T)
    for (std::size_t B = 1; B <= T; ++B) {
      const CodeParams q(T + 1, T, B, 1);
      CHECK(verify_achievable(baseline_martinian_sundberg(q, PrimeField(31))).achievable);
    }

  for (std::size_t T = 1; T <= 7; ++T)
    for (std::size_t B = 1; B <= T; ++B) {
      const CodeParams q(T + 1, T, B, B);
      CHECK(verify_achievable(baseline_mds(q, PrimeField(17))).achievable);
    }
  const auto id = baseline_mds(CodeParams(4, 3, 0, 0), PrimeField(5));
  CHECK(id.matrix() == FieldMatrix::identity(4, PrimeField(5)));
  CHECK(baseline_mds(CodeParams(8, 7, 4, 4), PrimeField(997)).params().rate() ==
        Rational::make(1, 2));
  CHECK_THROWS_AS(baseline_mds(CodeParams(8, 7, 4, 4), PrimeField(7)), Error);
}

TEST_CASE("generator validation") {
  const PrimeField f(5);
  CHECK_THROWS_AS(GeneratorMatrix(CodeParams(6, 5, 3, 2), FieldMatrix(3, 7, f)), Error);
  CHECK_THROWS_AS(GeneratorMatrix(CodeParams(2, 1, 1, 1), FieldMatrix(f, {{2, 1}})), Error);
}
