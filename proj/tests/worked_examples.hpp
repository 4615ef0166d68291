// Generator matrices quoted in the reference construction's worked examples.
#pragma once

#include <cstdint>
#include <vector>

namespace examples {

struct Example {
  const char* name;
  std::size_t W, T, B, N;
  std::vector<std::vector<std::int64_t>> rows;
};

// (6,3,4) block code behind the interleaving illustration.
inline Example interleaving_example() {
  return {"interleaving (5,4,3,2)", 5, 4, 3, 2,
          {{1, 0, 0, 1, 1, 0}, {0, 1, 0, 0, 1, 1}, {0, 0, 1, 0, 1, 2}}};
}

inline Example high_rate_small() {
  return {"high-rate (6,5,3,2)", 6, 5, 3, 2,
          {{1, 0, 0, 0, 1, 2, 0}, {0, 1, 0, 0, 0, 1, 3}, {0, 0, 1, 0, 0, 2, 1},
           {0, 0, 0, 1, 1, 1, 1}}};
}

inline Example martinian_sundberg_small() {
  return {"Martinian-Sundberg (6,5,3,2)", 6, 5, 3, 2,
          {{1, 0, 0, 0, 1, 0, 0}, {0, 1, 0, 0, 0, 1, 0}, {0, 0, 1, 0, 0, 0, 1},
           {0, 0, 0, 1, 1, 1, 1}}};
}

inline Example high_rate_large() {
  return {"high-rate (8,7,4,2)", 8, 7, 4, 2,
          {{1, 0, 0, 0, 0, 0, 1, 6, 0, 0},
           {0, 1, 0, 0, 0, 0, 0, 5, 25, 0},
           {0, 0, 1, 0, 0, 0, 0, 0, 16, 64},
           {0, 0, 0, 1, 0, 0, 0, 0, 9, 27},
           {0, 0, 0, 0, 1, 0, 1, 2, 4, 8},
           {0, 0, 0, 0, 0, 1, 1, 1, 1, 1}}};
}

inline Example low_rate_small() {
  return {"low-rate (6,5,4,3)", 6, 5, 4, 3,
          {{1, 0, 0, 1, 1, 3, 0}, {0, 1, 0, 1, 0, 2, 4}, {0, 0, 1, 1, 0, 1, 1}}};
}

inline Example low_rate_large() {
  return {"low-rate (8,7,6,4)", 8, 7, 6, 4,
          {{1, 0, 0, 0, 1, 4, 16, 64, 0, 0},
           {0, 1, 0, 0, 1, 3, 0, 27, 81, 0},
           {0, 0, 1, 0, 1, 2, 0, 0, 16, 32},
           {0, 0, 0, 1, 1, 1, 0, 0, 1, 1}}};
}

}  // namespace examples
