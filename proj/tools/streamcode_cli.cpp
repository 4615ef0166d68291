// Command-line front end. Talks to the library only through the C API.
#include <CLI11.hpp>

#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <iterator>
#include <optional>
#include <random>
#include <sstream>
#include <string>
#include <thread>
#include <vector>

#include "streamcode/streamcode.h"

namespace {

enum Exit { ok = 0, verify_failed = 1, usage = 2, exhausted = 3 };

struct Failure {
  int code;
  std::string message;
};

void check(sc_status s) {
  if (s == SC_OK) return;
  throw Failure{s == SC_ERR_EXHAUSTED ? exhausted : usage,
                std::string(sc_status_name(s)) + ": " + sc_last_error()};
}

std::string read_input(const std::string& path) {
  if (path.empty() || path == "-") {
    return std::string(std::istreambuf_iterator<char>(std::cin), {});
  }
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Failure{usage, "cannot open " + path};
  return std::string(std::istreambuf_iterator<char>(in), {});
}

struct OwnedString {
  char* p = nullptr;
  ~OwnedString() { sc_string_free(p); }
};

struct Code {
  sc_code* p = nullptr;
  ~Code() { sc_code_free(p); }
};

// CSV rows of unsigned integers; a leading non-numeric line is a header.
std::vector<std::vector<std::string>> read_csv(const std::string& text) {
  std::vector<std::vector<std::string>> rows;
  std::istringstream in(text);
  std::string line;
  bool first = true;
  while (std::getline(in, line)) {
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty()) continue;
    std::vector<std::string> cells;
    std::stringstream ls(line);
    std::string cell;
    while (std::getline(ls, cell, ',')) cells.push_back(cell);
    if (first && !cells.empty() && !cells[0].empty() &&
        cells[0].find_first_not_of("0123456789") != std::string::npos) {
      first = false;
      continue;
    }
    first = false;
    rows.push_back(std::move(cells));
  }
  return rows;
}

std::uint64_t to_u64(const std::string& s) {
  if (s.empty() || s.find_first_not_of("0123456789") != std::string::npos)
    throw Failure{usage, "expected a non-negative integer, got \"" + s + "\""};
  return std::stoull(s);
}

sc_code_info info_of(const sc_code* c) {
  sc_code_info info{};
  check(sc_code_info_get(c, &info));
  return info;
}

unsigned thread_count(unsigned flag) {
  if (const char* env = std::getenv("STREAMCODE_THREADS"); env && *env) {
    const long v = std::strtol(env, nullptr, 10);
    if (v > 0) return static_cast<unsigned>(v);
  }
  if (flag > 0) return flag;
  const unsigned hw = std::thread::hardware_concurrency();
  return hw ? hw : 1;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Streaming erasure codes for burst and arbitrary packet losses"};
  app.require_subcommand(1);
  app.fallthrough();
  unsigned threads_flag = 0;
  app.add_option("--threads", threads_flag, "Worker threads (default: all cores; STREAMCODE_THREADS overrides)");

  // construct
  auto* construct = app.add_subcommand("construct", "Build a verified generator matrix");
  std::uint32_t W = 0, T = 0, B = 0, N = 0, field = 0;
  std::uint64_t seed = 1, attempts = 5000;
  std::string mode = "random", baseline;
  construct->add_option("--W", W, "Window length")->required();
  construct->add_option("--T", T, "Decoding delay")->required();
  construct->add_option("--B", B, "Burst length")->required();
  construct->add_option("--N", N, "Arbitrary erasures per window")->required();
  construct->add_option("--field", field, "Prime field size (default: smallest prime above the bound)");
  construct->add_option("--seed", seed, "Master seed");
  construct->add_option("--attempts", attempts, "Maximum construction attempts");
  construct->add_option("--mode", mode, "random | deterministic-mds")
      ->check(CLI::IsMember({"random", "deterministic-mds"}));
  construct->add_option("--baseline", baseline, "Build a baseline instead: martinian-sundberg | mds")
      ->check(CLI::IsMember({"martinian-sundberg", "mds"}));

  // verify
  auto* verify = app.add_subcommand("verify", "Check the achievability condition of a generator file");
  std::string matrix_path = "-";
  std::int64_t vW = -1, vB = -1, vN = -1;
  verify->add_option("matrix", matrix_path, "Generator JSON (default: stdin)");
  verify->add_option("--W", vW, "Override W");
  verify->add_option("--B", vB, "Override B");
  verify->add_option("--N", vN, "Override N");

  // encode
  auto* encode = app.add_subcommand("encode", "Encode source packets into a channel trace");
  std::string code_path, input_path, erase;
  std::uint64_t random_packets = 0;
  encode->add_option("--code", code_path, "Generator JSON")->required();
  encode->add_option("--input", input_path, "Source CSV, one packet of k symbols per row");
  encode->add_option("--random", random_packets, "Encode this many uniformly random packets instead");
  encode->add_option("--seed", seed, "Seed for --random");
  encode->add_option("--erase", erase, "0/1 string marking erased times");

  // decode
  auto* decode = app.add_subcommand("decode", "Decode a channel trace");
  bool print_symbols = false;
  decode->add_option("--code", code_path, "Generator JSON")->required();
  decode->add_option("--input", input_path, "Trace CSV: time,erased,symbols...");
  decode->add_flag("--symbols", print_symbols, "Append the decoded source symbols");

  // distance
  auto* distance = app.add_subcommand("distance", "Column distance and span of the interleaved code");
  std::uint64_t budget = 0;
  distance->add_option("matrix", matrix_path, "Generator JSON (default: stdin)");
  distance->add_option("--budget", budget, "Enumeration budget (default 2^24)");

  // simulate
  auto* simulate = app.add_subcommand("simulate", "Loss-probability sweep from a run config");
  std::string config_path;
  bool timing = false;
  simulate->add_option("config", config_path, "Run config JSON")->required();
  simulate->add_flag("--timing", timing, "Report wall-clock seconds (output no longer reproducible)");

  // table2
  auto* table2 = app.add_subcommand("table2", "Success probability of random construction");
  table2->add_option("config", config_path, "Experiment config JSON (default: built-in table)");

  // patterns
  auto* patterns = app.add_subcommand("patterns", "List maximal erasure patterns");
  patterns->add_option("--W", W, "Window length")->required();
  patterns->add_option("--B", B, "Burst length")->required();
  patterns->add_option("--N", N, "Arbitrary erasures")->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return usage;
  }

  const unsigned threads = thread_count(threads_flag);

  try {
    if (*construct) {
      Code code;
      if (!baseline.empty()) {
        if (field == 0) throw Failure{usage, "--field is required for baselines"};
        check(sc_code_baseline(baseline == "mds" ? SC_BASELINE_MDS : SC_BASELINE_MARTINIAN_SUNDBERG,
                               W, T, B, N, field, &code.p));
      } else {
        sc_construct_options o{};
        o.W = W;
        o.T = T;
        o.B = B;
        o.N = N;
        o.field = field;
        o.seed = seed;
        o.max_attempts = attempts;
        o.mode = mode == "random" ? SC_MODE_RANDOM : SC_MODE_DETERMINISTIC_MDS;
        o.threads = threads;
        check(sc_code_construct(&o, &code.p));
      }
      OwnedString json;
      check(sc_code_to_json(code.p, &json.p));
      std::fputs(json.p, stdout);
      return ok;
    }

    if (*verify) {
      const std::string text = read_input(matrix_path);
      sc_verify_result r{};
      check(sc_verify_json(text.c_str(), vW, vB, vN, &r));
      OwnedString witness{r.witness_pattern};
      if (r.achievable) {
        std::puts("PASS");
        return ok;
      }
      std::printf("FAIL symbol=%llu pattern=%s\n", static_cast<unsigned long long>(r.witness_symbol),
                  r.witness_pattern ? r.witness_pattern : "");
      return verify_failed;
    }

    if (*patterns) {
      OwnedString out;
      check(sc_patterns(W, B, N, &out.p));
      std::fputs(out.p, stdout);
      return ok;
    }

    if (*distance) {
      const std::string text = read_input(matrix_path);
      Code code;
      check(sc_code_from_json(text.c_str(), &code.p));
      OwnedString out;
      check(sc_distance_json(code.p, budget, &out.p));
      std::fputs(out.p, stdout);
      return ok;
    }

    if (*simulate) {
      const std::string text = read_input(config_path);
      OwnedString out;
      check(sc_simulate(text.c_str(), threads, timing ? 1 : 0, &out.p));
      std::fputs(out.p, stdout);
      return ok;
    }

    if (*table2) {
      OwnedString out;
      if (config_path.empty()) {
        check(sc_table2(nullptr, threads, &out.p));
      } else {
        const std::string text = read_input(config_path);
        check(sc_table2(text.c_str(), threads, &out.p));
      }
      std::fputs(out.p, stdout);
      return ok;
    }

    if (*encode) {
      Code code;
      check(sc_code_from_json(read_input(code_path).c_str(), &code.p));
      const auto info = info_of(code.p);
      std::vector<std::vector<std::uint32_t>> sources;
      if (random_packets > 0) {
        std::mt19937_64 rng(seed);
        sources.assign(random_packets, std::vector<std::uint32_t>(info.k));
        for (auto& s : sources)
          for (auto& v : s) v = static_cast<std::uint32_t>(rng() % info.p);
      } else {
        for (const auto& row : read_csv(read_input(input_path))) {
          if (row.size() != info.k)
            throw Failure{usage, "source rows must have k = " + std::to_string(info.k) + " symbols"};
          std::vector<std::uint32_t> s;
          for (const auto& cell : row) s.push_back(static_cast<std::uint32_t>(to_u64(cell) % info.p));
          sources.push_back(std::move(s));
        }
      }
      sc_encoder* enc = nullptr;
      check(sc_encoder_new(code.p, &enc));
      std::vector<std::uint32_t> x(info.n);
      std::printf("time,erased");
      for (std::uint32_t j = 0; j < info.n; ++j) std::printf(",x%u", j);
      std::printf("\n");
      for (std::size_t t = 0; t < sources.size(); ++t) {
        const sc_status s = sc_encoder_step(enc, sources[t].data(), info.k, x.data(), info.n);
        if (s != SC_OK) {
          sc_encoder_free(enc);
          check(s);
        }
        const bool erased = t < erase.size() && erase[t] == '1';
        std::printf("%zu,%d", t, erased ? 1 : 0);
        if (!erased)
          for (auto v : x) std::printf(",%u", v);
        std::printf("\n");
      }
      sc_encoder_free(enc);
      return ok;
    }

    if (*decode) {
      Code code;
      check(sc_code_from_json(read_input(code_path).c_str(), &code.p));
      const auto info = info_of(code.p);
      sc_decoder* dec = nullptr;
      check(sc_decoder_new(code.p, &dec));
      std::vector<std::uint32_t> symbols(info.k);
      auto emit = [&](const sc_decoded& d) {
        std::printf("%llu,%d,%d", static_cast<unsigned long long>(d.time), d.recovered,
                    d.deadline_met);
        if (print_symbols && d.recovered)
          for (auto v : symbols) std::printf(",%u", v);
        std::printf("\n");
      };
      std::printf("time,recovered,deadline_met");
      if (print_symbols)
        for (std::uint32_t r = 0; r < info.k; ++r) std::printf(",s%u", r);
      std::printf("\n");
      try {
        for (const auto& row : read_csv(read_input(input_path))) {
          if (row.size() < 2) throw Failure{usage, "trace rows need time and erased columns"};
          const std::uint64_t t = to_u64(row[0]);
          const bool erased = to_u64(row[1]) != 0;
          std::vector<std::uint32_t> packet;
          if (!erased) {
            if (row.size() != 2 + info.n)
              throw Failure{usage, "received rows must carry n = " + std::to_string(info.n) + " symbols"};
            for (std::size_t j = 0; j < info.n; ++j)
              packet.push_back(static_cast<std::uint32_t>(to_u64(row[2 + j]) % info.p));
          }
          sc_decoded d{};
          int has = 0;
          check(sc_decoder_step(dec, t, erased ? nullptr : packet.data(), info.n, &d,
                                symbols.data(), info.k, &has));
          if (has) emit(d);
        }
        for (;;) {
          sc_decoded d{};
          int has = 0;
          check(sc_decoder_flush(dec, &d, symbols.data(), info.k, &has));
          if (!has) break;
          emit(d);
        }
      } catch (...) {
        sc_decoder_free(dec);
        throw;
      }
      sc_decoder_free(dec);
      return ok;
    }
  } catch (const Failure& f) {
    std::fflush(stdout);
    std::fprintf(stderr, "error: %s\n", f.message.c_str());
    return f.code;
  }
  return usage;
}
