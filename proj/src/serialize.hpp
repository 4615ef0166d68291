#pragma once

#include <cstdint>
#include <optional>
#include <string>

#include "code_construct.hpp"
#include "sim_harness.hpp"

namespace streamcode {

/// Generator file: {"p", "W", "T", "B", "N", "rows", optional "attempts" and "mode"}.
struct GeneratorFile {
  std::uint32_t p = 0;
  std::size_t W = 0, T = 0, B = 0, N = 0;
  FieldMatrix rows{0, 0, PrimeField(2)};
  std::optional<std::size_t> attempts;
  std::optional<std::string> mode;

  /// Checks the rows against (W, T, B, N). A k x k identity is read as a code
  /// with all-zero parity.
  GeneratorMatrix to_code() const;
};

GeneratorFile parse_generator_json(const std::string& text);
std::string generator_json(const GeneratorMatrix& g, std::optional<std::size_t> attempts = {},
                           std::optional<std::string> mode = {});

RunConfig parse_run_config(const std::string& text);
Table2Config parse_table2_config(const std::string& text);

const char* mode_name(ConstructionMode m);
ConstructionMode parse_mode(const std::string& name);

}  // namespace streamcode
