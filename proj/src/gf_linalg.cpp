#include "gf_linalg.hpp"

#include <numeric>
#include <string>

#include "error.hpp"

namespace streamcode {

bool is_prime(std::uint64_t value) {
  if (value < 2) return false;
  if (value % 2 == 0) return value == 2;
  for (std::uint64_t d = 3; d * d <= value; d += 2)
    if (value % d == 0) return false;
  return true;
}

std::uint64_t next_prime_above(std::uint64_t value) {
  std::uint64_t candidate = value + 1;
  while (!is_prime(candidate)) ++candidate;
  return candidate;
}

PrimeField::PrimeField(std::uint32_t p) : p_(p) {
  if (p >= (1u << 31) || !is_prime(p))
    throw Error(ErrorCode::invalid_argument, "field modulus " + std::to_string(p) +
                                                 " is not a prime below 2^31");
}

Element PrimeField::pow(Element base, std::uint64_t exponent) const noexcept {
  Element result = 1 % p_;
  base %= p_;
  while (exponent > 0) {
    if (exponent & 1) result = mul(result, base);
    base = mul(base, base);
    exponent >>= 1;
  }
  return result;
}

Element PrimeField::inv(Element a) const {
  if (a % p_ == 0) throw Error(ErrorCode::invalid_argument, "inverse of zero");
  return pow(a, p_ - 2);
}

Element PrimeField::reduce(std::int64_t value) const noexcept {
  const std::int64_t p = p_;
  std::int64_t r = value % p;
  if (r < 0) r += p;
  return static_cast<Element>(r);
}

FieldMatrix::FieldMatrix(std::size_t rows, std::size_t cols, PrimeField field)
    : rows_(rows), cols_(cols), field_(field), data_(rows * cols, 0) {}

FieldMatrix::FieldMatrix(PrimeField field, const std::vector<std::vector<std::int64_t>>& rows)
    : rows_(rows.size()), cols_(rows.empty() ? 0 : rows.front().size()), field_(field) {
  data_.reserve(rows_ * cols_);
  for (const auto& r : rows) {
    if (r.size() != cols_) throw Error(ErrorCode::dimension_mismatch, "ragged matrix rows");
    for (std::int64_t v : r) data_.push_back(field_.reduce(v));
  }
}

FieldMatrix FieldMatrix::identity(std::size_t n, PrimeField field) {
  FieldMatrix m(n, n, field);
  for (std::size_t i = 0; i < n; ++i) m.set(i, i, 1);
  return m;
}

std::vector<Element> FieldMatrix::column(std::size_t c) const {
  std::vector<Element> out(rows_);
  for (std::size_t r = 0; r < rows_; ++r) out[r] = at(r, c);
  return out;
}

FieldMatrix FieldMatrix::transpose() const {
  FieldMatrix t(cols_, rows_, field_);
  for (std::size_t r = 0; r < rows_; ++r)
    for (std::size_t c = 0; c < cols_; ++c) t.data_[c * rows_ + r] = at(r, c);
  return t;
}

FieldMatrix FieldMatrix::operator*(const FieldMatrix& rhs) const {
  if (cols_ != rhs.rows_ || !(field_ == rhs.field_))
    throw Error(ErrorCode::dimension_mismatch, "matrix product shape mismatch");
  FieldMatrix out(rows_, rhs.cols_, field_);
  for (std::size_t r = 0; r < rows_; ++r)
    for (std::size_t k = 0; k < cols_; ++k) {
      const Element a = at(r, k);
      if (a == 0) continue;
      for (std::size_t c = 0; c < rhs.cols_; ++c)
        out.data_[r * rhs.cols_ + c] =
            field_.add(out.data_[r * rhs.cols_ + c], field_.mul(a, rhs.at(k, c)));
    }
  return out;
}

FieldMatrix FieldMatrix::operator+(const FieldMatrix& rhs) const {
  if (rows_ != rhs.rows_ || cols_ != rhs.cols_ || !(field_ == rhs.field_))
    throw Error(ErrorCode::dimension_mismatch, "matrix sum shape mismatch");
  FieldMatrix out(*this);
  for (std::size_t i = 0; i < data_.size(); ++i) out.data_[i] = field_.add(data_[i], rhs.data_[i]);
  return out;
}

std::vector<Element> FieldMatrix::left_multiply(std::span<const Element> v) const {
  if (v.size() != rows_) throw Error(ErrorCode::dimension_mismatch, "vector length != rows");
  std::vector<Element> out(cols_, 0);
  for (std::size_t r = 0; r < rows_; ++r) {
    if (v[r] == 0) continue;
    for (std::size_t c = 0; c < cols_; ++c)
      out[c] = field_.add(out[c], field_.mul(v[r], at(r, c)));
  }
  return out;
}

FieldMatrix FieldMatrix::column_block(std::size_t first, std::size_t count) const {
  FieldMatrix out(rows_, count, field_);
  for (std::size_t r = 0; r < rows_; ++r)
    for (std::size_t c = 0; c < count && first + c < cols_; ++c)
      out.data_[r * count + c] = at(r, first + c);
  return out;
}

bool FieldMatrix::is_zero() const noexcept {
  for (Element e : data_)
    if (e != 0) return false;
  return true;
}

namespace {

// In-place reduction to reduced row echelon form over the first `pivot_cols`
// columns of a row-major rows x cols buffer. Returns the pivot column of each
// pivot row, in order.
std::vector<std::size_t> reduce_rows(std::vector<Element>& a, std::size_t rows, std::size_t cols,
                                     std::size_t pivot_cols, const PrimeField& f) {
  std::vector<std::size_t> pivots;
  std::size_t lead = 0;
  for (std::size_t c = 0; c < pivot_cols && lead < rows; ++c) {
    std::size_t found = lead;
    while (found < rows && a[found * cols + c] == 0) ++found;
    if (found == rows) continue;
    if (found != lead)
      for (std::size_t j = 0; j < cols; ++j) std::swap(a[found * cols + j], a[lead * cols + j]);
    const Element scale = f.inv(a[lead * cols + c]);
    for (std::size_t j = c; j < cols; ++j) a[lead * cols + j] = f.mul(a[lead * cols + j], scale);
    for (std::size_t r = 0; r < rows; ++r) {
      if (r == lead) continue;
      const Element factor = a[r * cols + c];
      if (factor == 0) continue;
      for (std::size_t j = c; j < cols; ++j)
        a[r * cols + j] = f.sub(a[r * cols + j], f.mul(factor, a[lead * cols + j]));
    }
    pivots.push_back(c);
    ++lead;
  }
  return pivots;
}

std::vector<Element> augmented(const FieldMatrix& m, std::span<const Element> v) {
  if (v.size() != m.rows())
    throw Error(ErrorCode::dimension_mismatch, "vector length " + std::to_string(v.size()) +
                                                   " != matrix rows " + std::to_string(m.rows()));
  const std::size_t cols = m.cols() + 1;
  std::vector<Element> a(m.rows() * cols);
  const Element p = m.field().modulus();
  for (std::size_t r = 0; r < m.rows(); ++r) {
    for (std::size_t c = 0; c < m.cols(); ++c) a[r * cols + c] = m.at(r, c);
    a[r * cols + m.cols()] = v[r] % p;
  }
  return a;
}

}  // namespace

std::size_t rank(const FieldMatrix& m) {
  std::vector<Element> a(m.rows() * m.cols());
  for (std::size_t r = 0; r < m.rows(); ++r)
    for (std::size_t c = 0; c < m.cols(); ++c) a[r * m.cols() + c] = m.at(r, c);
  return reduce_rows(a, m.rows(), m.cols(), m.cols(), m.field()).size();
}

bool in_column_space(const FieldMatrix& m, std::span<const Element> v) {
  auto a = augmented(m, v);
  const std::size_t cols = m.cols() + 1;
  const auto pivots = reduce_rows(a, m.rows(), cols, m.cols(), m.field());
  for (std::size_t r = pivots.size(); r < m.rows(); ++r)
    if (a[r * cols + m.cols()] != 0) return false;
  return true;
}

std::optional<std::vector<Element>> solve(const FieldMatrix& m, std::span<const Element> v) {
  auto a = augmented(m, v);
  const std::size_t cols = m.cols() + 1;
  const auto pivots = reduce_rows(a, m.rows(), cols, m.cols(), m.field());
  for (std::size_t r = pivots.size(); r < m.rows(); ++r)
    if (a[r * cols + m.cols()] != 0) return std::nullopt;
  std::vector<Element> x(m.cols(), 0);
  for (std::size_t r = 0; r < pivots.size(); ++r) x[pivots[r]] = a[r * cols + m.cols()];
  return x;
}

bool is_systematic_mds(const FieldMatrix& parity) {
  const std::size_t L = parity.rows();
  const std::size_t n = L + parity.cols();
  if (L == 0) return true;
  const PrimeField& f = parity.field();
  FieldMatrix full(L, n, f);
  for (std::size_t r = 0; r < L; ++r) {
    full.set(r, r, 1);
    for (std::size_t c = 0; c < parity.cols(); ++c) full.set(r, L + c, parity.at(r, c));
  }
  // Walk all L-subsets of the n columns in lexicographic order.
  std::vector<std::size_t> pick(L);
  std::iota(pick.begin(), pick.end(), 0);
  FieldMatrix sub(L, L, f);
  for (;;) {
    for (std::size_t r = 0; r < L; ++r)
      for (std::size_t c = 0; c < L; ++c) sub.set(r, c, full.at(r, pick[c]));
    if (rank(sub) != L) return false;
    std::size_t i = L;
    while (i > 0 && pick[i - 1] == n - L + i - 1) --i;
    if (i == 0) break;
    ++pick[i - 1];
    for (std::size_t j = i; j < L; ++j) pick[j] = pick[j - 1] + 1;
  }
  return true;
}

FieldMatrix mds_parity(std::size_t L, std::size_t B, const PrimeField& field) {
  if (field.modulus() < L + B)
    throw Error(ErrorCode::field_too_small, "MDS parity " + std::to_string(L) + "x" +
                                                std::to_string(B) + " needs p >= " +
                                                std::to_string(L + B));
  FieldMatrix v(L, B, field);
  for (std::size_t i = 0; i < L; ++i)
    for (std::size_t j = 0; j < B; ++j) {
      // i - (L + j) lies in [-(L+B-1), -1], never 0 mod p since p >= L + B.
      const Element denom = field.reduce(static_cast<std::int64_t>(i) -
                                         static_cast<std::int64_t>(L + j));
      v.set(i, j, field.inv(denom));
    }
  if (L + B <= 20 && !is_systematic_mds(v))
    throw Error(ErrorCode::field_too_small, "Cauchy parity failed the MDS check");
  return v;
}

}  // namespace streamcode
