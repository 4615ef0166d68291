#include "serialize.hpp"

#include <sstream>

#include <json.hpp>

#include "error.hpp"

namespace streamcode {

using nlohmann::json;

namespace {

json parse_json(const std::string& text) {
  try {
    return json::parse(text);
  } catch (const json::exception& e) {
    throw Error(ErrorCode::parse_error, std::string("malformed JSON: ") + e.what());
  }
}

template <class T>
T get(const json& j, const char* key) {
  if (!j.contains(key)) throw Error(ErrorCode::parse_error, std::string("missing field \"") + key + "\"");
  try {
    return j.at(key).get<T>();
  } catch (const json::exception&) {
    throw Error(ErrorCode::parse_error, std::string("field \"") + key + "\" has the wrong type");
  }
}

template <class T>
T get_or(const json& j, const char* key, T fallback) {
  return j.contains(key) ? get<T>(j, key) : fallback;
}

}  // namespace

const char* mode_name(ConstructionMode m) {
  return m == ConstructionMode::random ? "random" : "deterministic-mds";
}

ConstructionMode parse_mode(const std::string& name) {
  if (name == "random") return ConstructionMode::random;
  if (name == "deterministic-mds") return ConstructionMode::deterministic_mds;
  throw Error(ErrorCode::invalid_argument,
              "unknown construction mode \"" + name + "\" (random | deterministic-mds)");
}

GeneratorMatrix GeneratorFile::to_code() const {
  const auto params = CodeParams::any(W, T, B, N);
  if (rows.rows() == params.k() && rows.cols() == params.k() && params.n() > params.k()) {
    FieldMatrix padded(params.k(), params.n(), rows.field());
    for (std::size_t r = 0; r < rows.rows(); ++r)
      for (std::size_t c = 0; c < rows.cols(); ++c) padded.set(r, c, rows.at(r, c));
    return GeneratorMatrix(params, std::move(padded));
  }
  return GeneratorMatrix(params, rows);
}

GeneratorFile parse_generator_json(const std::string& text) {
  const json j = parse_json(text);
  if (!j.is_object()) throw Error(ErrorCode::parse_error, "generator file must be a JSON object");
  GeneratorFile out;
  out.p = get<std::uint32_t>(j, "p");
  out.W = get<std::size_t>(j, "W");
  out.T = get<std::size_t>(j, "T");
  out.B = get<std::size_t>(j, "B");
  out.N = get<std::size_t>(j, "N");
  const auto rows = get<std::vector<std::vector<std::int64_t>>>(j, "rows");
  if (rows.empty()) throw Error(ErrorCode::parse_error, "generator has no rows");
  for (const auto& r : rows)
    if (r.size() != rows.front().size())
      throw Error(ErrorCode::parse_error, "generator rows have different lengths");
  out.rows = FieldMatrix(PrimeField(out.p), rows);
  if (j.contains("attempts")) out.attempts = get<std::size_t>(j, "attempts");
  if (j.contains("mode")) out.mode = get<std::string>(j, "mode");
  return out;
}

std::string generator_json(const GeneratorMatrix& g, std::optional<std::size_t> attempts,
                           std::optional<std::string> mode) {
  const auto& p = g.params();
  std::ostringstream os;
  os << "{\n  \"p\": " << g.field().modulus() << ",\n  \"W\": " << p.W() << ",\n  \"T\": " << p.T()
     << ",\n  \"B\": " << p.B() << ",\n  \"N\": " << p.N() << ",\n";
  if (attempts) os << "  \"attempts\": " << *attempts << ",\n";
  if (mode) os << "  \"mode\": \"" << *mode << "\",\n";
  os << "  \"rows\": [\n";
  for (std::size_t r = 0; r < g.k(); ++r) {
    os << "    [";
    for (std::size_t c = 0; c < g.n(); ++c) os << (c ? ", " : "") << g.matrix().at(r, c);
    os << "]" << (r + 1 < g.k() ? "," : "") << "\n";
  }
  os << "  ]\n}\n";
  return os.str();
}

namespace {

ChannelSpec parse_channel(const json& j) {
  ChannelSpec c;
  const auto type = get<std::string>(j, "type");
  if (type == "ge") c.type = ChannelSpec::Type::ge;
  else if (type == "fritchman") c.type = ChannelSpec::Type::fritchman;
  else if (type == "replay") c.type = ChannelSpec::Type::replay;
  else if (type == "iid") c.type = ChannelSpec::Type::iid;
  else throw Error(ErrorCode::parse_error, "unknown channel type \"" + type + "\"");
  c.alpha = get_or<double>(j, "alpha", 0.0);
  c.beta = get_or<double>(j, "beta", 1.0);
  c.epsilon = get_or<double>(j, "epsilon", 0.0);
  c.M = get_or<std::size_t>(j, "M", 1);
  c.period = get_or<std::size_t>(j, "period", 0);
  if (j.contains("bits")) {
    const auto s = get<std::string>(j, "bits");
    const auto pattern = ErasurePattern::parse(s);
    c.bits.assign(pattern.bits().begin(), pattern.bits().end());
  }
  const auto init = get_or<std::string>(j, "initial", "stationary");
  if (init == "stationary") c.initial = InitialState::stationary;
  else if (init == "good") c.initial = InitialState::good;
  else throw Error(ErrorCode::parse_error, "initial state must be \"stationary\" or \"good\"");
  return c;
}

CodeSpec parse_code(const json& j, std::size_t index) {
  CodeSpec c;
  c.name = get_or<std::string>(j, "name", "code" + std::to_string(index));
  const auto kind = get_or<std::string>(j, "kind", "random");
  if (kind == "random") c.kind = CodeKind::random;
  else if (kind == "martinian-sundberg") c.kind = CodeKind::martinian_sundberg;
  else if (kind == "mds") c.kind = CodeKind::mds;
  else throw Error(ErrorCode::parse_error, "unknown code kind \"" + kind + "\"");
  c.W = get<std::size_t>(j, "W");
  c.T = get<std::size_t>(j, "T");
  c.B = get<std::size_t>(j, "B");
  c.N = get<std::size_t>(j, "N");
  c.mode = parse_mode(get_or<std::string>(j, "mode", "random"));
  c.attempts = get_or<std::size_t>(j, "attempts", 5000);
  if (j.contains("seed")) c.seed = get<std::uint64_t>(j, "seed");
  if (j.contains("field")) c.field = get<std::uint32_t>(j, "field");
  return c;
}

}  // namespace

RunConfig parse_run_config(const std::string& text) {
  const json j = parse_json(text);
  if (!j.is_object()) throw Error(ErrorCode::parse_error, "run config must be a JSON object");
  RunConfig cfg;
  cfg.seed = get_or<std::uint64_t>(j, "seed", 1);
  cfg.horizon = get_or<std::size_t>(j, "horizon", 1000000);
  cfg.trials = get_or<std::size_t>(j, "trials", 1);
  cfg.field = get_or<std::uint32_t>(j, "field", 997);
  cfg.channel = parse_channel(get<json>(j, "channel"));
  cfg.epsilons = j.contains("epsilons") ? get<std::vector<double>>(j, "epsilons")
                                        : std::vector<double>{cfg.channel.epsilon};
  const auto codes = get<json>(j, "codes");
  if (!codes.is_array()) throw Error(ErrorCode::parse_error, "\"codes\" must be an array");
  for (std::size_t i = 0; i < codes.size(); ++i) cfg.codes.push_back(parse_code(codes[i], i));
  const auto decoder = get_or<std::string>(j, "decoder", "pattern");
  if (decoder == "pattern") cfg.decoder = DecoderKind::pattern;
  else if (decoder == "full") cfg.decoder = DecoderKind::full;
  else throw Error(ErrorCode::parse_error, "decoder must be \"pattern\" or \"full\"");
  try {
    cfg.validate();
  } catch (const Error& e) {
    throw Error(ErrorCode::parse_error, e.what());
  }
  return cfg;
}

Table2Config parse_table2_config(const std::string& text) {
  const json j = parse_json(text);
  if (!j.is_object()) throw Error(ErrorCode::parse_error, "table2 config must be a JSON object");
  Table2Config cfg = default_table2_config();
  cfg.seed = get_or<std::uint64_t>(j, "seed", cfg.seed);
  cfg.samples = get_or<std::size_t>(j, "samples", cfg.samples);
  if (j.contains("fields")) cfg.fields = get<std::vector<std::uint32_t>>(j, "fields");
  if (j.contains("cases")) {
    cfg.cases.clear();
    for (const auto& c : get<std::vector<std::vector<std::size_t>>>(j, "cases")) {
      if (c.size() != 3) throw Error(ErrorCode::parse_error, "each case is [T, cT, dT]");
      cfg.cases.push_back({c[0], c[1], c[2]});
    }
  }
  cfg.mode = parse_mode(get_or<std::string>(j, "mode", "random"));
  return cfg;
}

}  // namespace streamcode
