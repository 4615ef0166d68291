#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <vector>

namespace streamcode {

using Element = std::uint32_t;

bool is_prime(std::uint64_t value);
/// Smallest prime strictly greater than `value`.
std::uint64_t next_prime_above(std::uint64_t value);

/// GF(p) for prime p < 2^31. Elements are canonical residues in [0, p).
class PrimeField {
public:
  explicit PrimeField(std::uint32_t p);

  std::uint32_t modulus() const noexcept { return p_; }

  Element add(Element a, Element b) const noexcept {
    const Element s = a + b;
    return s >= p_ ? s - p_ : s;
  }
  Element sub(Element a, Element b) const noexcept { return a >= b ? a - b : a + p_ - b; }
  Element neg(Element a) const noexcept { return a == 0 ? 0 : p_ - a; }
  Element mul(Element a, Element b) const noexcept {
    return static_cast<Element>(static_cast<std::uint64_t>(a) * b % p_);
  }
  Element pow(Element base, std::uint64_t exponent) const noexcept;
  /// Multiplicative inverse; a must be nonzero.
  Element inv(Element a) const;
  /// Reduces an arbitrary signed integer into the field.
  Element reduce(std::int64_t value) const noexcept;

  bool operator==(const PrimeField& other) const noexcept { return p_ == other.p_; }

private:
  std::uint32_t p_;
};

/// Dense row-major matrix over a prime field.
class FieldMatrix {
public:
  FieldMatrix(std::size_t rows, std::size_t cols, PrimeField field);
  /// Entries are reduced mod p.
  FieldMatrix(PrimeField field, const std::vector<std::vector<std::int64_t>>& rows);

  static FieldMatrix identity(std::size_t n, PrimeField field);

  std::size_t rows() const noexcept { return rows_; }
  std::size_t cols() const noexcept { return cols_; }
  const PrimeField& field() const noexcept { return field_; }

  Element at(std::size_t r, std::size_t c) const noexcept { return data_[r * cols_ + c]; }
  /// Stores value mod p.
  void set(std::size_t r, std::size_t c, Element value) noexcept {
    data_[r * cols_ + c] = value % field_.modulus();
  }
  std::span<const Element> row(std::size_t r) const noexcept {
    return {data_.data() + r * cols_, cols_};
  }
  std::vector<Element> column(std::size_t c) const;

  FieldMatrix transpose() const;
  FieldMatrix operator*(const FieldMatrix& rhs) const;
  FieldMatrix operator+(const FieldMatrix& rhs) const;
  /// Row vector times matrix: x = v * M.
  std::vector<Element> left_multiply(std::span<const Element> v) const;
  /// Columns [first, first+count) as a new matrix; columns past cols() are zero.
  FieldMatrix column_block(std::size_t first, std::size_t count) const;
  bool is_zero() const noexcept;

  bool operator==(const FieldMatrix& other) const noexcept {
    return field_ == other.field_ && rows_ == other.rows_ && cols_ == other.cols_ &&
           data_ == other.data_;
  }

private:
  std::size_t rows_;
  std::size_t cols_;
  PrimeField field_;
  std::vector<Element> data_;
};

std::size_t rank(const FieldMatrix& m);

/// True iff v is a linear combination of m's columns. Throws on length mismatch.
bool in_column_space(const FieldMatrix& m, std::span<const Element> v);

/// Some x with m * x = v, or nullopt when inconsistent. Pivots are the leftmost
/// nonzero column of the first available row; free variables are set to 0.
std::optional<std::vector<Element>> solve(const FieldMatrix& m, std::span<const Element> v);

/// L x B parity V such that every L columns of [I_L V] are independent,
/// built as the Cauchy matrix V[i][j] = 1 / (i - (L + j)). Requires p >= L + B.
/// The MDS property is re-checked exhaustively when L + B <= 20.
FieldMatrix mds_parity(std::size_t L, std::size_t B, const PrimeField& field);

/// Exhaustive check that every size-L column subset of [I_L V] has rank L.
bool is_systematic_mds(const FieldMatrix& parity);

}  // namespace streamcode
