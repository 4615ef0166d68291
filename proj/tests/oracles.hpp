// Brute-force reference implementations used to cross-check the library.
// They enumerate vectors over small fields instead of eliminating, so they
// share no code path with the row reduction under test.
#pragma once

#include <algorithm>
#include <cstdint>
#include <functional>
#include <vector>

#include "gf_linalg.hpp"

namespace oracle {

using streamcode::Element;
using streamcode::FieldMatrix;

// Calls fn on every vector of F_p^len; stops early when fn returns false.
inline bool for_each_vector(std::size_t len, std::uint32_t p,
                            const std::function<bool(const std::vector<Element>&)>& fn) {
  std::vector<Element> v(len, 0);
  for (;;) {
    if (!fn(v)) return false;
    std::size_t j = 0;
    while (j < len && ++v[j] == p) v[j++] = 0;
    if (j == len) return true;
  }
}

// Symbol `target` is determined by the columns flagged in `available` iff no
// message with nonzero target and zero known rows maps to zero there.
inline bool recoverable(const FieldMatrix& g, const std::vector<std::uint8_t>& available,
                        const std::vector<std::uint8_t>& known, std::size_t target) {
  const auto& f = g.field();
  const std::uint32_t p = f.modulus();
  return for_each_vector(g.rows(), p, [&](const std::vector<Element>& s) {
    if (s[target] == 0) return true;
    for (std::size_t u = 0; u < s.size(); ++u)
      if (known[u] && s[u] != 0) return true;
    for (std::size_t c = 0; c < g.cols(); ++c) {
      if (!available[c]) continue;
      Element acc = 0;
      for (std::size_t r = 0; r < g.rows(); ++r) acc = f.add(acc, f.mul(s[r], g.at(r, c)));
      if (acc != 0) return true;
    }
    return false;  // witness: target is invisible on the available columns
  });
}

// u_0 lies in the column space of m iff every left null vector y (y m = 0)
// has y_0 = 0.
inline bool first_unit_in_column_space(const FieldMatrix& m) {
  const auto& f = m.field();
  return for_each_vector(m.rows(), f.modulus(), [&](const std::vector<Element>& y) {
    if (y[0] == 0) return true;
    for (std::size_t c = 0; c < m.cols(); ++c) {
      Element acc = 0;
      for (std::size_t r = 0; r < m.rows(); ++r) acc = f.add(acc, f.mul(y[r], m.at(r, c)));
      if (acc != 0) return true;
    }
    return false;
  });
}

inline std::size_t rank_by_enumeration(const FieldMatrix& m) {
  // |row space| = p^rank; count distinct combinations.
  const auto& f = m.field();
  std::vector<std::vector<Element>> seen;
  std::size_t count = 0;
  for_each_vector(m.rows(), f.modulus(), [&](const std::vector<Element>& a) {
    std::vector<Element> v(m.cols(), 0);
    for (std::size_t r = 0; r < m.rows(); ++r)
      for (std::size_t c = 0; c < m.cols(); ++c) v[c] = f.add(v[c], f.mul(a[r], m.at(r, c)));
    if (std::find(seen.begin(), seen.end(), v) == seen.end()) {
      seen.push_back(v);
      ++count;
    }
    return true;
  });
  std::size_t rank = 0;
  for (std::size_t size = 1; size < count; size *= f.modulus()) ++rank;
  return rank;
}

}  // namespace oracle
