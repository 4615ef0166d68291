#include "streamcode/streamcode.h"

#include <cstdlib>
#include <cstring>
#include <deque>
#include <memory>
#include <new>
#include <sstream>
#include <string>

#include "block_codec.hpp"
#include "code_construct.hpp"
#include "conv_codec.hpp"
#include "conv_metrics.hpp"
#include "error.hpp"
#include "serialize.hpp"
#include "sim_harness.hpp"

using namespace streamcode;

struct sc_code {
  GeneratorMatrix g;
  ConvCode conv;
  std::uint64_t attempts = 0;
  std::string mode;
};

struct sc_encoder {
  std::shared_ptr<const ConvCode> code;
  ConvEncoder enc;
};

struct sc_decoder {
  std::shared_ptr<const ConvCode> code;
  ConvDecoder dec;
  std::deque<DecodedPacket> flushed;
  bool flushed_once = false;
};

namespace {

thread_local std::string last_error;

sc_status map_code(ErrorCode c) {
  switch (c) {
    case ErrorCode::invalid_argument: return SC_ERR_INVALID_ARGUMENT;
    case ErrorCode::dimension_mismatch: return SC_ERR_DIMENSION;
    case ErrorCode::field_too_small: return SC_ERR_FIELD_TOO_SMALL;
    case ErrorCode::parse_error: return SC_ERR_PARSE;
    case ErrorCode::exhausted: return SC_ERR_EXHAUSTED;
    case ErrorCode::budget_exceeded: return SC_ERR_BUDGET;
  }
  return SC_ERR_INTERNAL;
}

template <class Fn>
sc_status guarded(Fn&& fn) {
  try {
    last_error.clear();
    fn();
    return SC_OK;
  } catch (const Error& e) {
    last_error = e.what();
    return map_code(e.code());
  } catch (const std::bad_alloc&) {
    last_error = "out of memory";
    return SC_ERR_INTERNAL;
  } catch (const std::exception& e) {
    last_error = e.what();
    return SC_ERR_INTERNAL;
  }
}

char* copy_string(const std::string& s) {
  char* out = static_cast<char*>(std::malloc(s.size() + 1));
  if (!out) throw std::bad_alloc();
  std::memcpy(out, s.c_str(), s.size() + 1);
  return out;
}

sc_code* wrap(GeneratorMatrix g, std::uint64_t attempts = 0, std::string mode = {}) {
  ConvCode conv = interleave(g);
  return new sc_code{std::move(g), std::move(conv), attempts, std::move(mode)};
}

void fill_verify(const VerifyResult& r, sc_verify_result* out) {
  out->achievable = r.achievable ? 1 : 0;
  out->witness_symbol = 0;
  out->witness_pattern = nullptr;
  if (r.witness) {
    out->witness_symbol = r.witness->symbol;
    out->witness_pattern = copy_string(r.witness->pattern.to_string());
  }
}

void fill_decoded(const DecodedPacket& p, sc_decoded* out, uint32_t* symbols, size_t k) {
  out->time = p.time;
  out->recovered = p.recovered ? 1 : 0;
  out->deadline_met = p.deadline_met ? 1 : 0;
  if (symbols) {
    if (k != p.symbols.size())
      throw Error(ErrorCode::dimension_mismatch, "symbol buffer must hold k entries");
    std::copy(p.symbols.begin(), p.symbols.end(), symbols);
  }
}

}  // namespace

extern "C" {

const char* sc_last_error(void) { return last_error.c_str(); }

void sc_string_free(char* s) { std::free(s); }

const char* sc_status_name(sc_status status) {
  switch (status) {
    case SC_OK: return "ok";
    case SC_ERR_INVALID_ARGUMENT: return "invalid argument";
    case SC_ERR_DIMENSION: return "dimension mismatch";
    case SC_ERR_FIELD_TOO_SMALL: return "field too small";
    case SC_ERR_PARSE: return "parse error";
    case SC_ERR_EXHAUSTED: return "attempts exhausted";
    case SC_ERR_BUDGET: return "budget exceeded";
    case SC_ERR_NULL_POINTER: return "null pointer";
    case SC_ERR_INTERNAL: return "internal error";
  }
  return "unknown status";
}

sc_status sc_capacity(uint32_t W, uint32_t T, uint32_t B, uint32_t N, int64_t* num, int64_t* den) {
  if (!num || !den) return SC_ERR_NULL_POINTER;
  return guarded([&] {
    const auto c = capacity(W, T, B, N);
    *num = c.num;
    *den = c.den;
  });
}

sc_status sc_field_size_bound(uint32_t T, uint32_t B, uint32_t N, uint64_t* bound,
                              uint32_t* next_prime) {
  if (!bound) return SC_ERR_NULL_POINTER;
  return guarded([&] {
    *bound = field_size_bound(T, B, N);
    if (next_prime) *next_prime = static_cast<uint32_t>(next_prime_above(*bound));
  });
}

sc_status sc_code_construct(const sc_construct_options* o, sc_code** out) {
  if (!o || !out) return SC_ERR_NULL_POINTER;
  return guarded([&] {
    const auto params = CodeParams::any(o->W, o->T, o->B, o->N);
    const std::uint32_t p =
        o->field != 0 ? o->field
                      : static_cast<std::uint32_t>(next_prime_above(
                            field_size_bound(params.design_delay(), params.B(), params.N())));
    const auto mode =
        o->mode == SC_MODE_DETERMINISTIC_MDS ? ConstructionMode::deterministic_mds
                                             : ConstructionMode::random;
    auto r = construct_verified(params, PrimeField(p), o->max_attempts ? o->max_attempts : 5000,
                                o->seed, mode, o->threads ? o->threads : 1);
    *out = wrap(std::move(r.code), r.attempts, mode_name(mode));
  });
}

sc_status sc_code_baseline(sc_baseline kind, uint32_t W, uint32_t T, uint32_t B, uint32_t N,
                           uint32_t field, sc_code** out) {
  if (!out) return SC_ERR_NULL_POINTER;
  return guarded([&] {
    const auto params = CodeParams::any(W, T, B, N);
    const PrimeField f(field);
    *out = wrap(kind == SC_BASELINE_MDS ? baseline_mds(params, f)
                                        : baseline_martinian_sundberg(params, f));
  });
}

sc_status sc_code_from_json(const char* json, sc_code** out) {
  if (!json || !out) return SC_ERR_NULL_POINTER;
  return guarded([&] {
    const auto file = parse_generator_json(json);
    *out = wrap(file.to_code(), file.attempts.value_or(0), file.mode.value_or(""));
  });
}

sc_status sc_code_to_json(const sc_code* code, char** out) {
  if (!code || !out) return SC_ERR_NULL_POINTER;
  return guarded([&] {
    std::optional<std::size_t> attempts;
    std::optional<std::string> mode;
    if (code->attempts) attempts = code->attempts;
    if (!code->mode.empty()) mode = code->mode;
    *out = copy_string(generator_json(code->g, attempts, mode));
  });
}

sc_status sc_code_info_get(const sc_code* code, sc_code_info* out) {
  if (!code || !out) return SC_ERR_NULL_POINTER;
  const auto& p = code->g.params();
  out->W = static_cast<uint32_t>(p.W());
  out->T = static_cast<uint32_t>(p.T());
  out->B = static_cast<uint32_t>(p.B());
  out->N = static_cast<uint32_t>(p.N());
  out->k = static_cast<uint32_t>(code->g.k());
  out->n = static_cast<uint32_t>(code->g.n());
  out->p = code->g.field().modulus();
  out->design_delay = static_cast<uint32_t>(p.design_delay());
  out->attempts = code->attempts;
  return SC_OK;
}

sc_status sc_code_matrix(const sc_code* code, uint32_t* buf, size_t capacity) {
  if (!code || !buf) return SC_ERR_NULL_POINTER;
  return guarded([&] {
    const auto& m = code->g.matrix();
    if (capacity < m.rows() * m.cols())
      throw Error(ErrorCode::dimension_mismatch, "buffer smaller than k * n");
    for (std::size_t r = 0; r < m.rows(); ++r)
      for (std::size_t c = 0; c < m.cols(); ++c) buf[r * m.cols() + c] = m.at(r, c);
  });
}

void sc_code_free(sc_code* code) { delete code; }

sc_status sc_verify(const sc_code* code, sc_verify_result* out) {
  if (!code || !out) return SC_ERR_NULL_POINTER;
  return guarded([&] { fill_verify(verify_achievable(code->g), out); });
}

sc_status sc_verify_json(const char* json, int64_t W, int64_t B, int64_t N, sc_verify_result* out) {
  if (!json || !out) return SC_ERR_NULL_POINTER;
  return guarded([&] {
    const auto file = parse_generator_json(json);
    const std::size_t w = W >= 0 ? static_cast<std::size_t>(W) : file.W;
    const std::size_t b = B >= 0 ? static_cast<std::size_t>(B) : file.B;
    const std::size_t n = N >= 0 ? static_cast<std::size_t>(N) : file.N;
    if (w == 0) throw Error(ErrorCode::invalid_argument, "W must be positive");
    const std::size_t delay = w > file.T ? file.T : w - 1;
    if (b > delay + 1) throw Error(ErrorCode::invalid_argument, "B exceeds the window");
    if (b < n) throw Error(ErrorCode::invalid_argument, "B must be at least N");
    fill_verify(verify_achievable(file.rows, delay, b, n), out);
  });
}

sc_status sc_encoder_new(const sc_code* code, sc_encoder** out) {
  if (!code || !out) return SC_ERR_NULL_POINTER;
  return guarded([&] {
    auto conv = std::make_shared<const ConvCode>(code->conv);
    *out = new sc_encoder{conv, ConvEncoder(*conv)};
  });
}

sc_status sc_encoder_step(sc_encoder* enc, const uint32_t* source, size_t k, uint32_t* packet,
                          size_t n) {
  if (!enc || !source || !packet) return SC_ERR_NULL_POINTER;
  return guarded([&] {
    if (n != enc->code->n()) throw Error(ErrorCode::dimension_mismatch, "packet buffer must hold n entries");
    const auto x = enc->enc.step(std::span<const Element>(source, k));
    std::copy(x.begin(), x.end(), packet);
  });
}

void sc_encoder_free(sc_encoder* enc) { delete enc; }

sc_status sc_decoder_new(const sc_code* code, sc_decoder** out) {
  if (!code || !out) return SC_ERR_NULL_POINTER;
  return guarded([&] {
    auto conv = std::make_shared<const ConvCode>(code->conv);
    *out = new sc_decoder{conv, ConvDecoder(*conv), {}, false};
  });
}

sc_status sc_decoder_step(sc_decoder* dec, uint64_t time, const uint32_t* packet, size_t n,
                          sc_decoded* out, uint32_t* symbols, size_t k, int* has_output) {
  if (!dec || !out || !has_output) return SC_ERR_NULL_POINTER;
  return guarded([&] {
    if (dec->flushed_once) throw Error(ErrorCode::invalid_argument, "decoder already flushed");
    std::optional<std::span<const Element>> view;
    if (packet) view = std::span<const Element>(packet, n);
    const auto r = dec->dec.step(time, view);
    *has_output = r ? 1 : 0;
    if (r) fill_decoded(*r, out, symbols, k);
  });
}

sc_status sc_decoder_flush(sc_decoder* dec, sc_decoded* out, uint32_t* symbols, size_t k,
                           int* has_output) {
  if (!dec || !out || !has_output) return SC_ERR_NULL_POINTER;
  return guarded([&] {
    if (!dec->flushed_once) {
      for (auto& p : dec->dec.flush()) dec->flushed.push_back(std::move(p));
      dec->flushed_once = true;
    }
    *has_output = dec->flushed.empty() ? 0 : 1;
    if (dec->flushed.empty()) return;
    fill_decoded(dec->flushed.front(), out, symbols, k);
    dec->flushed.pop_front();
  });
}

void sc_decoder_free(sc_decoder* dec) { delete dec; }

sc_status sc_patterns(uint32_t W, uint32_t B, uint32_t N, char** out) {
  if (!out) return SC_ERR_NULL_POINTER;
  return guarded([&] {
    std::string text;
    for (const auto& p : enumerate_maximal_patterns(W, B, N)) text += p.to_string() + "\n";
    *out = copy_string(text);
  });
}

sc_status sc_distance_json(const sc_code* code, uint64_t budget, char** out) {
  if (!code || !out) return SC_ERR_NULL_POINTER;
  return guarded([&] {
    const auto r = distance_report(code->conv, code->conv.delay(),
                                   budget ? budget : default_enumeration_budget);
    std::ostringstream os;
    os << "{\"d\":" << r.d << ",\"c\":" << r.c << ",\"optimal\":" << (r.optimal ? "true" : "false")
       << ",\"method\":\"" << r.method << "\"}\n";
    *out = copy_string(os.str());
  });
}

sc_status sc_simulate(const char* config_json, unsigned threads, int timing, char** out) {
  if (!config_json || !out) return SC_ERR_NULL_POINTER;
  return guarded([&] {
    const auto cfg = parse_run_config(config_json);
    *out = copy_string(sweep_csv(run_loss_sweep(cfg, threads ? threads : 1), timing != 0));
  });
}

sc_status sc_table2(const char* config_json, unsigned threads, char** out) {
  if (!out) return SC_ERR_NULL_POINTER;
  return guarded([&] {
    const auto cfg = config_json ? parse_table2_config(config_json) : default_table2_config();
    *out = copy_string(table2_csv(run_table2_experiment(cfg, threads ? threads : 1)));
  });
}

}  // extern "C"
