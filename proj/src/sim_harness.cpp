#include "sim_harness.hpp"

#include <chrono>
#include <charconv>
#include <cmath>
#include <sstream>

#include "error.hpp"
#include "parallel.hpp"

namespace streamcode {

namespace {

std::string format_double(double v) {
  char buf[64];
  const auto res = std::to_chars(buf, buf + sizeof buf, v);
  return std::string(buf, res.ptr);
}

}  // namespace

std::string ChannelSpec::name() const {
  switch (type) {
    case Type::ge: return "ge";
    case Type::fritchman: return "fritchman";
    case Type::replay: return "replay";
    case Type::iid: return "iid";
  }
  return "?";
}

void ChannelSpec::validate() const {
  switch (type) {
    case Type::ge: GEParams{alpha, beta, epsilon}.validate(); break;
    case Type::fritchman: FritchmanParams{alpha, beta, epsilon, M}.validate(); break;
    case Type::replay:
      if (bits.empty()) throw Error(ErrorCode::invalid_argument, "replay channel needs bits");
      break;
    case Type::iid:
      if (!(epsilon >= 0 && epsilon <= 1))
        throw Error(ErrorCode::invalid_argument, "epsilon must lie in [0, 1]");
      break;
  }
}

std::unique_ptr<ErasureSource> make_channel(const ChannelSpec& spec, double epsilon,
                                            std::uint64_t seed) {
  switch (spec.type) {
    case ChannelSpec::Type::ge:
      return std::make_unique<GilbertElliottChannel>(GEParams{spec.alpha, spec.beta, epsilon},
                                                     seed, spec.initial);
    case ChannelSpec::Type::fritchman:
      return std::make_unique<FritchmanChannel>(
          FritchmanParams{spec.alpha, spec.beta, epsilon, spec.M}, seed, spec.initial);
    case ChannelSpec::Type::replay:
      return std::make_unique<ReplayChannel>(spec.bits, spec.period);
    case ChannelSpec::Type::iid:
      return std::make_unique<IidChannel>(epsilon, seed);
  }
  throw Error(ErrorCode::invalid_argument, "unknown channel type");
}

void RunConfig::validate() const {
  if (trials < 1) throw Error(ErrorCode::invalid_argument, "trials must be at least 1");
  if (codes.empty()) throw Error(ErrorCode::invalid_argument, "config lists no codes");
  if (epsilons.empty()) throw Error(ErrorCode::invalid_argument, "config lists no epsilon values");
  channel.validate();
  for (double e : epsilons)
    if (!(e >= 0 && e <= 1)) throw Error(ErrorCode::invalid_argument, "epsilon must lie in [0, 1]");
  for (const auto& c : codes) {
    const auto params = CodeParams::any(c.W, c.T, c.B, c.N);
    const std::size_t need = c.W + params.n() + c.T;
    if (horizon < need)
      throw Error(ErrorCode::invalid_argument,
                  "horizon must be at least W + n + T = " + std::to_string(need) + " for code " +
                      c.name);
  }
}

GeneratorMatrix build_code(const CodeSpec& spec, std::uint32_t default_field,
                           std::uint64_t master_seed, std::size_t index, unsigned threads) {
  const auto params = CodeParams::any(spec.W, spec.T, spec.B, spec.N);
  const PrimeField field(spec.field.value_or(default_field));
  switch (spec.kind) {
    case CodeKind::martinian_sundberg: return baseline_martinian_sundberg(params, field);
    case CodeKind::mds: return baseline_mds(params, field);
    case CodeKind::random: {
      const std::uint64_t seed =
          spec.seed.value_or(derive_seed(derive_seed(master_seed, code_stream), index));
      return construct_verified(params, field, spec.attempts, seed, spec.mode, threads).code;
    }
  }
  throw Error(ErrorCode::invalid_argument, "unknown code kind");
}

std::uint64_t count_losses(const ConvCode& code, std::span<const std::uint8_t> erasures,
                           std::size_t scored, DecoderKind decoder, std::uint64_t source_seed) {
  const std::size_t T = code.delay();
  if (erasures.size() < scored + T)
    throw Error(ErrorCode::invalid_argument, "erasure trace shorter than scored + T");
  std::uint64_t lost = 0;

  if (decoder == DecoderKind::pattern) {
    PatternLossEvaluator eval(code);
    auto erased = [&](std::size_t t) { return erasures[t] != 0; };
    for (std::size_t i = 0; i < scored; ++i)
      if (eval.lost(i, erased)) ++lost;
    return lost;
  }

  const std::size_t k = code.k();
  const std::uint32_t p = code.base.field().modulus();
  Rng rng(source_seed);
  ConvEncoder enc(code);
  ConvDecoder dec(code);
  std::deque<std::vector<Element>> pending;
  std::vector<Element> s(k);
  for (std::size_t t = 0; t < scored + T; ++t) {
    for (auto& v : s) v = static_cast<Element>(rng.uniform_below(p));
    pending.push_back(s);
    const auto x = enc.step(s);
    auto out = erasures[t] ? dec.step(t, std::nullopt)
                           : dec.step(t, std::span<const Element>(x));
    if (!out) continue;
    const auto& truth = pending.front();
    if (out->time < scored && (!out->recovered || out->symbols != truth)) ++lost;
    pending.pop_front();
  }
  return lost;
}

std::vector<SweepPoint> run_loss_sweep(const RunConfig& cfg, unsigned threads) {
  cfg.validate();
  std::vector<ConvCode> codes;
  codes.reserve(cfg.codes.size());
  for (std::size_t c = 0; c < cfg.codes.size(); ++c)
    codes.push_back(interleave(build_code(cfg.codes[c], cfg.field, cfg.seed, c, threads)));

  const std::size_t n_codes = codes.size();
  const std::size_t n_eps = cfg.epsilons.size();
  const std::size_t n_tasks = n_eps * cfg.trials;

  std::size_t max_delay = 0;
  for (const auto& c : codes) max_delay = std::max(max_delay, c.delay());

  // One task per (epsilon, trial): the trace is drawn once and scored by every code.
  std::vector<std::uint64_t> losses(n_tasks * n_codes, 0);
  std::vector<double> seconds(n_tasks * n_codes, 0);
  parallel_for(n_tasks, threads, [&](std::size_t task) {
    const std::size_t e = task / cfg.trials;
    const std::size_t trial = task % cfg.trials;
    const std::uint64_t seed =
        derive_seed(derive_seed(derive_seed(cfg.seed, channel_stream), e), trial);
    auto channel = make_channel(cfg.channel, cfg.epsilons[e], seed);
    const auto trace = draw(*channel, cfg.horizon + max_delay);
    for (std::size_t c = 0; c < n_codes; ++c) {
      const auto start = std::chrono::steady_clock::now();
      losses[task * n_codes + c] =
          count_losses(codes[c], trace, cfg.horizon, cfg.decoder,
                       derive_seed(derive_seed(seed, source_stream), c));
      seconds[task * n_codes + c] =
          std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    }
  });

  std::vector<SweepPoint> out;
  for (std::size_t c = 0; c < n_codes; ++c)
    for (std::size_t e = 0; e < n_eps; ++e) {
      SweepPoint pt;
      pt.code = cfg.codes[c].name;
      pt.channel = cfg.channel.name();
      pt.epsilon = cfg.epsilons[e];
      auto& st = pt.stats;
      for (std::size_t trial = 0; trial < cfg.trials; ++trial) {
        const std::size_t idx = (e * cfg.trials + trial) * n_codes + c;
        st.packets_sent += cfg.horizon;
        st.packets_lost += losses[idx];
        st.seconds += seconds[idx];
        st.trial_loss.push_back(static_cast<double>(losses[idx]) /
                                static_cast<double>(cfg.horizon));
      }
      st.loss_probability =
          static_cast<double>(st.packets_lost) / static_cast<double>(st.packets_sent);
      if (cfg.trials > 1) {
        double var = 0;
        for (double v : st.trial_loss) var += (v - st.loss_probability) * (v - st.loss_probability);
        var /= static_cast<double>(cfg.trials - 1);
        st.standard_error = std::sqrt(var / static_cast<double>(cfg.trials));
      }
      out.push_back(std::move(pt));
    }
  return out;
}

std::string sweep_csv(const std::vector<SweepPoint>& points, bool timing) {
  std::ostringstream os;
  os << "code,channel,epsilon,packets,losses,loss_prob,seconds\n";
  for (const auto& pt : points) {
    os << pt.code << ',' << pt.channel << ',' << format_double(pt.epsilon) << ','
       << pt.stats.packets_sent << ',' << pt.stats.packets_lost << ','
       << format_double(pt.stats.loss_probability) << ',';
    if (timing) {
      char buf[32];
      std::snprintf(buf, sizeof buf, "%.3f", pt.stats.seconds);
      os << buf;
    } else {
      os << 0;
    }
    os << '\n';
  }
  return os.str();
}

std::map<std::size_t, std::uint64_t> burst_histogram(std::span<const std::uint8_t> trace) {
  std::map<std::size_t, std::uint64_t> hist;
  std::size_t run = 0;
  for (auto b : trace) {
    if (b) {
      ++run;
    } else if (run > 0) {
      ++hist[run];
      run = 0;
    }
  }
  if (run > 0) ++hist[run];
  return hist;
}

Table2Config default_table2_config() {
  Table2Config cfg;
  cfg.cases = {{7, 8, 6}, {7, 8, 2}, {7, 7, 5}, {7, 7, 3}, {7, 6, 4}, {7, 5, 5}};
  cfg.fields = {3, 7, 13, 31, 61};
  return cfg;
}

std::vector<Table2Row> run_table2_experiment(const Table2Config& cfg, unsigned threads) {
  if (cfg.samples < 1) throw Error(ErrorCode::invalid_argument, "samples must be at least 1");
  std::vector<Table2Row> rows;
  for (std::size_t a = 0; a < cfg.cases.size(); ++a) {
    const auto& cs = cfg.cases[a];
    if (cs.c < 1 || cs.d < 1)
      throw Error(ErrorCode::invalid_argument, "column span and distance must be positive");
    const CodeParams params(cs.T + 1, cs.T, cs.c - 1, cs.d - 1);
    const auto tpl = build_template(params);
    for (std::uint32_t p : cfg.fields) {
      const PrimeField field(p);
      std::vector<std::uint8_t> ok(cfg.samples, 0);
      const std::uint64_t base = derive_seed(derive_seed(cfg.seed, a), p);
      parallel_for(cfg.samples, threads, [&](std::size_t s) {
        Rng rng(derive_seed(base, s));
        const auto g = fill_template(params, tpl, field, cfg.mode, rng);
        ok[s] = verify_achievable(g).achievable ? 1 : 0;
      });
      Table2Row row{cs, p, cfg.samples, 0, 0};
      for (auto v : ok) row.successes += v;
      row.rate = static_cast<double>(row.successes) / static_cast<double>(row.samples);
      rows.push_back(row);
    }
  }
  return rows;
}

std::string table2_csv(const std::vector<Table2Row>& rows) {
  std::ostringstream os;
  os << "T,cT,dT,p,field,samples,successes,rate\n";
  for (const auto& r : rows) {
    char rate[32];
    std::snprintf(rate, sizeof rate, "%.4f", r.rate);
    os << r.params.T << ',' << r.params.c << ',' << r.params.d << ',' << r.p << ",GF(" << r.p
       << ")," << r.samples << ',' << r.successes << ',' << rate << '\n';
  }
  return os.str();
}

}  // namespace streamcode
