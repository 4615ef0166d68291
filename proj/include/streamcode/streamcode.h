/* C interface to the streaming erasure-code library.
 *
 * Every function returns an sc_status. On failure, sc_last_error() describes
 * the most recent error on the calling thread. Strings returned through
 * char** out-parameters are owned by the caller and released with
 * sc_string_free(). Field elements are passed as uint32_t residues.
 */
#ifndef STREAMCODE_STREAMCODE_H
#define STREAMCODE_STREAMCODE_H

#include <stddef.h>
#include <stdint.h>

#if defined(_WIN32)
#  ifdef STREAMCODE_BUILDING_LIBRARY
#    define SC_API __declspec(dllexport)
#  else
#    define SC_API __declspec(dllimport)
#  endif
#else
#  define SC_API __attribute__((visibility("default")))
#endif

#ifdef __cplusplus
extern "C" {
#endif

typedef enum sc_status {
  SC_OK = 0,
  SC_ERR_INVALID_ARGUMENT = 1,
  SC_ERR_DIMENSION = 2,
  SC_ERR_FIELD_TOO_SMALL = 3,
  SC_ERR_PARSE = 4,
  SC_ERR_EXHAUSTED = 5,
  SC_ERR_BUDGET = 6,
  SC_ERR_NULL_POINTER = 7,
  SC_ERR_INTERNAL = 8
} sc_status;

typedef enum sc_mode {
  SC_MODE_RANDOM = 0,
  SC_MODE_DETERMINISTIC_MDS = 1
} sc_mode;

typedef enum sc_baseline {
  SC_BASELINE_MARTINIAN_SUNDBERG = 0,
  SC_BASELINE_MDS = 1
} sc_baseline;

typedef struct sc_code sc_code;
typedef struct sc_encoder sc_encoder;
typedef struct sc_decoder sc_decoder;

typedef struct sc_code_info {
  uint32_t W, T, B, N;
  uint32_t k, n;
  uint32_t p;
  uint32_t design_delay;
  uint64_t attempts; /* 0 unless the code came from sc_code_construct */
} sc_code_info;

typedef struct sc_construct_options {
  uint32_t W, T, B, N;
  uint32_t field;         /* prime; 0 picks the smallest prime above the bound */
  uint64_t seed;
  uint64_t max_attempts;  /* 0 means 5000 */
  sc_mode mode;
  unsigned threads;       /* 0 means 1 */
} sc_construct_options;

typedef struct sc_decoded {
  uint64_t time;
  int recovered;
  int deadline_met;
} sc_decoded;

typedef struct sc_verify_result {
  int achievable;
  uint64_t witness_symbol;   /* valid when achievable == 0 */
  char* witness_pattern;     /* 0/1 string, NULL when achievable; free with sc_string_free */
} sc_verify_result;

SC_API const char* sc_last_error(void);
SC_API void sc_string_free(char* s);
SC_API const char* sc_status_name(sc_status status);

SC_API sc_status sc_capacity(uint32_t W, uint32_t T, uint32_t B, uint32_t N, int64_t* num,
                             int64_t* den);
SC_API sc_status sc_field_size_bound(uint32_t T, uint32_t B, uint32_t N, uint64_t* bound,
                                     uint32_t* next_prime);

SC_API sc_status sc_code_construct(const sc_construct_options* options, sc_code** out);
SC_API sc_status sc_code_baseline(sc_baseline kind, uint32_t W, uint32_t T, uint32_t B,
                                  uint32_t N, uint32_t field, sc_code** out);
SC_API sc_status sc_code_from_json(const char* json, sc_code** out);
SC_API sc_status sc_code_to_json(const sc_code* code, char** out);
SC_API sc_status sc_code_info_get(const sc_code* code, sc_code_info* out);
/* Row-major k x n generator copied into buf (capacity in elements). */
SC_API sc_status sc_code_matrix(const sc_code* code, uint32_t* buf, size_t capacity);
SC_API void sc_code_free(sc_code* code);

SC_API sc_status sc_verify(const sc_code* code, sc_verify_result* out);
/* Verifies the rows of a generator file as given. Negative W/B/N keep the
 * file's values; W <= T switches to the delay W - 1. */
SC_API sc_status sc_verify_json(const char* json, int64_t W, int64_t B, int64_t N,
                                sc_verify_result* out);

SC_API sc_status sc_encoder_new(const sc_code* code, sc_encoder** out);
/* source has k entries, packet receives n entries. */
SC_API sc_status sc_encoder_step(sc_encoder* enc, const uint32_t* source, size_t k,
                                 uint32_t* packet, size_t n);
SC_API void sc_encoder_free(sc_encoder* enc);

SC_API sc_status sc_decoder_new(const sc_code* code, sc_decoder** out);
/* packet == NULL marks an erasure. When *has_output is set, *out describes
 * the source packet whose deadline is `time` and symbols (k entries, may be
 * NULL) holds its estimate. */
SC_API sc_status sc_decoder_step(sc_decoder* dec, uint64_t time, const uint32_t* packet,
                                 size_t n, sc_decoded* out, uint32_t* symbols, size_t k,
                                 int* has_output);
/* Drains packets whose deadline lies past the last received time, one per
 * call; *has_output is 0 when nothing is left. */
SC_API sc_status sc_decoder_flush(sc_decoder* dec, sc_decoded* out, uint32_t* symbols,
                                  size_t k, int* has_output);
SC_API void sc_decoder_free(sc_decoder* dec);

/* Newline-separated maximal patterns. */
SC_API sc_status sc_patterns(uint32_t W, uint32_t B, uint32_t N, char** out);
/* {"d":..,"c":..,"optimal":..,"method":".."}; budget 0 means 2^24. */
SC_API sc_status sc_distance_json(const sc_code* code, uint64_t budget, char** out);
/* Run config JSON in, CSV out. */
SC_API sc_status sc_simulate(const char* config_json, unsigned threads, int timing, char** out);
/* config_json may be NULL for the default experiment. */
SC_API sc_status sc_table2(const char* config_json, unsigned threads, char** out);

#ifdef __cplusplus
}
#endif

#endif
