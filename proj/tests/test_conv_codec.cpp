#include <doctest.h>

#include <random>

#include "conv_codec.hpp"
#include "error.hpp"
#include "worked_examples.hpp"
#include "sim_harness.hpp"

using namespace streamcode;

namespace {

GeneratorMatrix make(const examples::Example& e, std::uint32_t p) {
  return GeneratorMatrix(CodeParams(e.W, e.T, e.B, e.N), FieldMatrix(PrimeField(p), e.rows));
}

using Stream = std::vector<std::vector<Element>>;

Stream random_stream(std::size_t len, std::size_t k, std::uint32_t p, std::mt19937_64& rng) {
  Stream s(len, std::vector<Element>(k));
  for (auto& pkt : s)
    for (auto& v : pkt) v = static_cast<Element>(rng() % p);
  return s;
}

Stream encode_all(const ConvCode& code, const Stream& s) {
  ConvEncoder enc(code);
  Stream x;
  for (const auto& pkt : s) x.push_back(enc.step(pkt));
  return x;
}

// Runs the streaming decoder over `erased`, returning the number of source
// packets (among the first `scored`) not reproduced exactly at their deadline.
std::size_t losses(const ConvCode& code, const std::vector<std::uint8_t>& erased, std::size_t scored,
                   std::mt19937_64& rng) {
  const std::uint32_t p = code.base.field().modulus();
  const auto s = random_stream(erased.size(), code.k(), p, rng);
  const auto x = encode_all(code, s);
  ConvDecoder dec(code);
  std::size_t lost = 0;
  for (std::size_t t = 0; t < erased.size(); ++t) {
    auto out = erased[t] ? dec.step(t, std::nullopt) : dec.step(t, std::span<const Element>(x[t]));
    if (!out) continue;
    CHECK(out->time + code.delay() == t);
    if (out->time < scored && (!out->recovered || out->symbols != s[out->time])) ++lost;
  }
  return lost;
}

}  // namespace

TEST_CASE("interleaving splits G into diagonal slices") {
  const auto g = make(examples::interleaving_example(), 5);
  const auto code = interleave(g);
  FieldMatrix sum(3, 6, g.field());
  for (const auto& gl : code.gens) sum = sum + gl;
  CHECK(sum == g.matrix());
  CHECK(code.memory == 4);
  for (std::size_t l = 0; l < code.gens.size(); ++l)
    for (std::size_t r = 0; r < 3; ++r)
      for (std::size_t j = 0; j < 6; ++j)
        if (code.gens[l].at(r, j) != 0) CHECK(j - r == l);

  const auto rep = interleave(GeneratorMatrix(CodeParams(2, 1, 1, 1), FieldMatrix(PrimeField(2), {{1, 1}})));
  REQUIRE(rep.gens.size() == 2);
  CHECK(rep.gens[0] == FieldMatrix(PrimeField(2), {{1, 0}}));
  CHECK(rep.gens[1] == FieldMatrix(PrimeField(2), {{0, 1}}));
}

TEST_CASE("encoder reproduces the interleaving table") {
  const auto code = interleave(make(examples::interleaving_example(), 5));
  const PrimeField f(5);
  std::mt19937_64 rng(4);
  const auto s = random_stream(12, 3, 5, rng);
  const auto x = encode_all(code, s);
  for (std::size_t i = 2; i + 3 < s.size(); ++i) {
    CHECK(x[i + 2][4] == f.add(f.add(s[i - 2][0], s[i - 1][1]), s[i][2]));
    CHECK(x[i + 3][5] == f.add(s[i - 1][1], f.mul(2, s[i][2])));
    CHECK(x[i + 1][3] == s[i - 2][0]);
    for (std::size_t r = 0; r < 3; ++r) CHECK(x[i][r] == s[i][r]);
  }
  // s_{<0} = 0: the first packet only sees s_0.
  CHECK(x[0] == std::vector<Element>{s[0][0], s[0][1], s[0][2], 0, 0, 0});
  ConvEncoder zero(code);
  CHECK(zero.step(std::vector<Element>(3, 0)) == std::vector<Element>(6, 0));
  CHECK_THROWS_AS(zero.step(std::vector<Element>(2, 0)), Error);
}

TEST_CASE("every diagonal is a block codeword") {
  std::mt19937_64 rng(8);
  for (int trial = 0; trial < 100; ++trial) {
    const std::size_t T = 2 + trial % 5;
    const std::size_t B = 1 + trial % T;
    const std::size_t N = 1 + trial % B;
    const CodeParams params(T + 1, T, B, N);
    if (params.n() > 10) continue;
    const auto g = construct_random(params, PrimeField(7), rng());
    const auto code = interleave(g);
    const auto s = random_stream(3 * g.n(), g.k(), 7, rng);
    const auto x = encode_all(code, s);
    for (std::size_t d = 0; d + g.n() <= s.size(); ++d) {
      std::vector<Element> src(g.k());
      for (std::size_t r = 0; r < g.k(); ++r) src[r] = s[d + r][r];
      const auto cw = g.matrix().left_multiply(src);
      for (std::size_t j = 0; j < g.n(); ++j) CHECK(x[d + j][j] == cw[j]);
    }
  }
}

TEST_CASE("constructed codes have memory at most T") {
  for (std::size_t T = 1; T <= 7; ++T)
    for (std::size_t B = 1; B <= T; ++B)
      for (std::size_t N = 1; N <= B; ++N) {
        const CodeParams params(T + 1, T, B, N);
        const auto code = interleave(construct_random(params, PrimeField(257), 1));
        CHECK(code.memory <= T);
      }
}

TEST_CASE("erasure-free decoding has delay exactly T") {
  const auto code = interleave(make(examples::high_rate_small(), 41));
  std::mt19937_64 rng(1);
  CHECK(losses(code, std::vector<std::uint8_t>(40, 0), 35, rng) == 0);
}

TEST_CASE("interleaving example survives every valid (5,3,2) sequence") {
  const auto code = interleave(make(examples::interleaving_example(), 5));
  const std::size_t len = 5 + code.n() + code.delay();
  std::mt19937_64 rng(3);
  std::size_t valid = 0;
  for (std::uint32_t mask = 0; mask < (1u << len); ++mask) {
    std::vector<std::uint8_t> e(len + code.delay(), 0);
    for (std::size_t t = 0; t < len; ++t) e[t] = (mask >> t) & 1u;
    if (!is_valid_wbn_sequence(e, {5, 3, 2})) continue;
    ++valid;
    PatternLossEvaluator eval(code);
    std::size_t lost = 0;
    for (std::size_t i = 0; i < len; ++i) lost += eval.lost(i, [&](std::size_t t) { return e[t] != 0; });
    CHECK(lost == 0);
    if (valid % 97 == 0) CHECK(losses(code, e, len, rng) == 0);
  }
  CHECK(valid > 100);
}

TEST_CASE("a burst one longer than B causes a loss") {
  for (auto [e, p] : {std::pair{examples::high_rate_small(), 41u}, {examples::low_rate_small(), 47u}}) {
    const auto code = interleave(make(e, p));
    std::vector<std::uint8_t> trace(40, 0);
    for (std::size_t t = 10; t < 10 + e.B + 1; ++t) trace[t] = 1;
    CHECK(count_losses(code, trace, 30, DecoderKind::pattern) > 0);
    CHECK(count_losses(code, trace, 30, DecoderKind::full, 5) ==
          count_losses(code, trace, 30, DecoderKind::pattern));
  }
}

TEST_CASE("pattern evaluator matches full decoding on random traces") {
  std::mt19937_64 rng(12);
  for (auto [e, p] : {std::pair{examples::high_rate_small(), 41u}, {examples::low_rate_large(), 149u},
                      {examples::martinian_sundberg_small(), 41u}}) {
    const auto code = interleave(make(e, p));
    for (double eps : {0.1, 0.3, 0.6}) {
      std::vector<std::uint8_t> trace(300 + code.delay());
      for (auto& b : trace) b = (rng() % 1000) < eps * 1000;
      const auto a = count_losses(code, trace, 300, DecoderKind::pattern);
      const auto b = count_losses(code, trace, 300, DecoderKind::full, rng());
      CHECK(a == b);
      // Source values do not matter.
      CHECK(count_losses(code, trace, 300, DecoderKind::full, rng()) == b);
    }
  }
}

TEST_CASE("decoder input checks and flush") {
  const auto code = interleave(make(examples::high_rate_small(), 41));
  ConvDecoder dec(code);
  const std::vector<Element> pkt(7, 0);
  CHECK_FALSE(dec.step(0, std::span<const Element>(pkt)).has_value());
  CHECK_THROWS_AS(dec.step(2, std::nullopt), Error);
  CHECK_THROWS_AS(dec.step(1, std::span<const Element>(std::vector<Element>(3, 0))), Error);
  dec.step(1, std::nullopt);
  dec.step(2, std::span<const Element>(pkt));
  const auto rest = dec.flush();
  REQUIRE(rest.size() == 3);
  CHECK(rest[0].time == 0);
  CHECK(rest[0].recovered);
  CHECK_FALSE(rest[0].deadline_met);
  CHECK_FALSE(rest[1].recovered);
}
