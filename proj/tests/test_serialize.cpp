#include <doctest.h>

#include "error.hpp"
#include "serialize.hpp"

using namespace streamcode;

TEST_CASE("generator files round-trip") {
  const auto g = construct_verified(CodeParams(6, 5, 3, 2), PrimeField(41), 5000, 1).code;
  const auto text = generator_json(g, 3, "random");
  const auto file = parse_generator_json(text);
  CHECK(file.p == 41);
  CHECK(file.W == 6);
  CHECK(file.attempts == 3);
  CHECK(file.mode == "random");
  CHECK(file.to_code() == g);
  CHECK(generator_json(file.to_code(), 3, "random") == text);
}

TEST_CASE("identity-only generator files") {
  const auto file = parse_generator_json(R"({"p": 5, "W": 4, "T": 3, "B": 1, "N": 1,
    "rows": [[1,0,0],[0,1,0],[0,0,1]]})");
  const auto g = file.to_code();
  CHECK(g.n() == 4);
  CHECK(g.parity() == FieldMatrix(3, 1, PrimeField(5)));
  CHECK_FALSE(verify_achievable(g).achievable);
}

TEST_CASE("malformed generator files") {
  auto code_of = [](const char* text) {
    try {
      parse_generator_json(text).to_code();
    } catch (const Error& e) {
      return e.code();
    }
    return ErrorCode{};
  };
  CHECK(code_of("{") == ErrorCode::parse_error);
  CHECK(code_of("[1, 2]") == ErrorCode::parse_error);
  CHECK(code_of(R"({"p": 5, "W": 2, "T": 1, "B": 1})") == ErrorCode::parse_error);
  CHECK(code_of(R"({"p": 5, "W": 2, "T": 1, "B": 1, "N": 1, "rows": [[1, 1], [1]]})") ==
        ErrorCode::parse_error);
  CHECK(code_of(R"({"p": 5, "W": 2, "T": 1, "B": 1, "N": 1, "rows": [[1, 1, 1]]})") ==
        ErrorCode::dimension_mismatch);
  CHECK(code_of(R"({"p": 6, "W": 2, "T": 1, "B": 1, "N": 1, "rows": [[1, 1]]})") ==
        ErrorCode::invalid_argument);
  CHECK(code_of(R"({"p": "5", "W": 2, "T": 1, "B": 1, "N": 1, "rows": [[1, 1]]})") ==
        ErrorCode::parse_error);
}

TEST_CASE("run configs") {
  const auto cfg = parse_run_config(R"({
    "seed": 4, "horizon": 5000, "trials": 2,
    "channel": {"type": "fritchman", "alpha": 3e-5, "beta": 0.6, "M": 4, "initial": "good"},
    "epsilons": [0.001, 0.01],
    "codes": [
      {"name": "a", "W": 6, "T": 5, "B": 3, "N": 2, "mode": "deterministic-mds", "seed": 2},
      {"kind": "martinian-sundberg", "W": 6, "T": 5, "B": 3, "N": 1, "field": 13},
      {"kind": "mds", "W": 6, "T": 5, "B": 2, "N": 2}
    ],
    "decoder": "full"})");
  CHECK(cfg.seed == 4);
  CHECK(cfg.trials == 2);
  CHECK(cfg.channel.type == ChannelSpec::Type::fritchman);
  CHECK(cfg.channel.M == 4);
  CHECK(cfg.channel.initial == InitialState::good);
  CHECK(cfg.epsilons.size() == 2);
  REQUIRE(cfg.codes.size() == 3);
  CHECK(cfg.codes[0].mode == ConstructionMode::deterministic_mds);
  CHECK(cfg.codes[0].seed == 2);
  CHECK(cfg.codes[1].name == "code1");
  CHECK(cfg.codes[1].kind == CodeKind::martinian_sundberg);
  CHECK(cfg.codes[1].field == 13);
  CHECK(cfg.codes[2].kind == CodeKind::mds);
  CHECK(cfg.decoder == DecoderKind::full);

  const auto replay = parse_run_config(R"({"horizon": 100,
    "channel": {"type": "replay", "bits": "1110000000000000"},
    "codes": [{"W": 6, "T": 5, "B": 3, "N": 2}]})");
  CHECK(replay.channel.bits.size() == 16);
  CHECK(replay.channel.bits[2] == 1);
  CHECK(replay.channel.bits[3] == 0);
  CHECK(replay.horizon == 100);

  CHECK_THROWS_AS(parse_run_config(R"({"channel": {"type": "pareto"}, "codes": []})"), Error);
  CHECK_THROWS_AS(parse_run_config(R"({"horizon": 5, "channel": {"type": "iid"},
    "codes": [{"W": 6, "T": 5, "B": 3, "N": 2}]})"), Error);
}

TEST_CASE("table configs") {
  const auto def = parse_table2_config("{}");
  CHECK(def.cases.size() == 6);
  const auto cfg = parse_table2_config(R"({"cases": [[3, 3, 2]], "fields": [5], "samples": 10})");
  REQUIRE(cfg.cases.size() == 1);
  CHECK(cfg.cases[0].c == 3);
  CHECK(cfg.fields == std::vector<std::uint32_t>{5});
  CHECK(cfg.samples == 10);
  CHECK_THROWS_AS(parse_table2_config(R"({"cases": [[3, 3]]})"), Error);
  CHECK(parse_mode(mode_name(ConstructionMode::deterministic_mds)) == ConstructionMode::deterministic_mds);
}
