#include "qgms/gf2.hpp"

#include <bit>
#include <sstream>

#include "qgms/error.hpp"

namespace qgms::gf2 {

namespace {

std::size_t words_for(std::size_t bits) { return (bits + 63) / 64; }

}  // namespace

// ---------------------------------------------------------------------------
// BitVector

BitVector::BitVector(std::size_t len) : len_(len), words_(words_for(len), 0) {
  if (len == 0) throw InvalidDimensions("BitVector length must be >= 1");
}

BitVector BitVector::from_uint(std::size_t len, std::uint64_t value) {
  if (len > 64) throw InvalidDimensions("from_uint supports at most 64 bits");
  BitVector v(len);
  v.words_[0] = len == 64 ? value : value & ((std::uint64_t{1} << len) - 1);
  return v;
}

BitVector BitVector::from_string(std::string_view bits) {
  BitVector v(bits.size());
  for (std::size_t i = 0; i < bits.size(); ++i) {
    if (bits[i] == '1') {
      v.set(i, true);
    } else if (bits[i] != '0') {
      throw InvalidDimensions("bit strings may only contain '0' and '1'");
    }
  }
  return v;
}

bool BitVector::get(std::size_t i) const { return (words_[i / 64] >> (i % 64)) & 1u; }

void BitVector::set(std::size_t i, bool v) {
  const std::uint64_t mask = std::uint64_t{1} << (i % 64);
  if (v) {
    words_[i / 64] |= mask;
  } else {
    words_[i / 64] &= ~mask;
  }
}

void BitVector::flip(std::size_t i) { words_[i / 64] ^= std::uint64_t{1} << (i % 64); }

BitVector& BitVector::operator^=(const BitVector& other) {
  if (other.len_ != len_) throw InvalidDimensions("BitVector length mismatch");
  for (std::size_t w = 0; w < words_.size(); ++w) words_[w] ^= other.words_[w];
  return *this;
}

bool BitVector::is_zero() const noexcept {
  for (auto w : words_)
    if (w != 0) return false;
  return true;
}

std::size_t BitVector::popcount() const noexcept {
  std::size_t c = 0;
  for (auto w : words_) c += static_cast<std::size_t>(std::popcount(w));
  return c;
}

std::uint64_t BitVector::to_uint() const {
  if (len_ > 64) throw InvalidDimensions("to_uint supports at most 64 bits");
  return words_[0];
}

std::string BitVector::to_string() const {
  std::string s(len_, '0');
  for (std::size_t i = 0; i < len_; ++i)
    if (get(i)) s[i] = '1';
  return s;
}

bool dot(const BitVector& a, const BitVector& b) {
  if (a.len_ != b.len_) throw InvalidDimensions("BitVector length mismatch");
  std::uint64_t acc = 0;
  for (std::size_t w = 0; w < a.words_.size(); ++w) acc ^= a.words_[w] & b.words_[w];
  return std::popcount(acc) & 1;
}

// ---------------------------------------------------------------------------
// BitMatrix

BitMatrix::BitMatrix(std::size_t rows, std::size_t cols)
    : rows_(rows), cols_(cols), stride_(words_for(cols)), bits_(rows * stride_, 0) {
  if (rows == 0 || cols == 0) throw InvalidDimensions("BitMatrix needs rows >= 1 and cols >= 1");
}

BitMatrix BitMatrix::identity(std::size_t n) {
  BitMatrix m(n, n);
  for (std::size_t i = 0; i < n; ++i) m.set(i, i, true);
  return m;
}

BitMatrix BitMatrix::from_rows(const std::vector<BitVector>& rows) {
  if (rows.empty()) throw InvalidDimensions("from_rows needs at least one row");
  BitMatrix m(rows.size(), rows.front().size());
  for (std::size_t i = 0; i < rows.size(); ++i) m.set_row(i, rows[i]);
  return m;
}

BitMatrix BitMatrix::from_strings(const std::vector<std::string>& rows) {
  std::vector<BitVector> v;
  v.reserve(rows.size());
  for (const auto& r : rows) v.push_back(BitVector::from_string(r));
  return from_rows(v);
}

BitMatrix BitMatrix::from_packed(std::size_t rows, std::size_t cols, std::uint64_t packed) {
  if (rows * cols > 64) throw InvalidDimensions("from_packed supports at most 64 entries");
  BitMatrix m(rows, cols);
  for (std::size_t i = 0; i < rows; ++i)
    for (std::size_t j = 0; j < cols; ++j) m.set(i, j, (packed >> (i * cols + j)) & 1u);
  return m;
}

bool BitMatrix::get(std::size_t i, std::size_t j) const {
  return (bits_[word(i, j)] >> (j % 64)) & 1u;
}

void BitMatrix::set(std::size_t i, std::size_t j, bool v) {
  const std::uint64_t mask = std::uint64_t{1} << (j % 64);
  if (v) {
    bits_[word(i, j)] |= mask;
  } else {
    bits_[word(i, j)] &= ~mask;
  }
}

BitVector BitMatrix::row(std::size_t i) const {
  BitVector v(cols_);
  for (std::size_t j = 0; j < cols_; ++j)
    if (get(i, j)) v.set(j, true);
  return v;
}

void BitMatrix::set_row(std::size_t i, const BitVector& v) {
  if (v.size() != cols_) throw InvalidDimensions("row length mismatch");
  for (std::size_t j = 0; j < cols_; ++j) set(i, j, v.get(j));
}

BitVector BitMatrix::column(std::size_t j) const {
  BitVector v(rows_);
  for (std::size_t i = 0; i < rows_; ++i)
    if (get(i, j)) v.set(i, true);
  return v;
}

bool BitMatrix::row_is_zero(std::size_t i) const {
  for (std::size_t w = 0; w < stride_; ++w)
    if (bits_[i * stride_ + w] != 0) return false;
  return true;
}

void BitMatrix::xor_row(std::size_t dst, std::size_t src) {
  for (std::size_t w = 0; w < stride_; ++w) bits_[dst * stride_ + w] ^= bits_[src * stride_ + w];
}

void BitMatrix::swap_rows(std::size_t a, std::size_t b) {
  for (std::size_t w = 0; w < stride_; ++w) std::swap(bits_[a * stride_ + w], bits_[b * stride_ + w]);
}

BitVector BitMatrix::operator*(const BitVector& x) const {
  if (x.size() != cols_) throw InvalidDimensions("matrix-vector size mismatch");
  BitVector y(rows_);
  for (std::size_t i = 0; i < rows_; ++i) y.set(i, dot(row(i), x));
  return y;
}

BitMatrix BitMatrix::augment(const BitVector& b) const {
  if (b.size() != rows_) throw InvalidDimensions("right-hand side length must equal rows");
  BitMatrix m(rows_, cols_ + 1);
  for (std::size_t i = 0; i < rows_; ++i) {
    for (std::size_t j = 0; j < cols_; ++j) m.set(i, j, get(i, j));
    m.set(i, cols_, b.get(i));
  }
  return m;
}

BitMatrix BitMatrix::column_slice(std::size_t first, std::size_t count) const {
  if (first + count > cols_) throw InvalidDimensions("column slice out of range");
  BitMatrix m(rows_, count);
  for (std::size_t i = 0; i < rows_; ++i)
    for (std::size_t j = 0; j < count; ++j) m.set(i, j, get(i, first + j));
  return m;
}

std::uint64_t BitMatrix::packed() const {
  if (rows_ * cols_ > 64) throw InvalidDimensions("packed() supports at most 64 entries");
  std::uint64_t p = 0;
  for (std::size_t i = 0; i < rows_; ++i)
    for (std::size_t j = 0; j < cols_; ++j)
      if (get(i, j)) p |= std::uint64_t{1} << (i * cols_ + j);
  return p;
}

// ---------------------------------------------------------------------------
// Elimination routines

BitMatrix row_echelon_diagonal(const BitMatrix& a) {
  BitMatrix m = a;
  const std::size_t steps = std::min(m.rows(), m.cols());
  for (std::size_t j = 0; j < steps; ++j) {
    for (std::size_t i = j + 1; i < m.rows(); ++i)
      if (!m.get(j, j)) m.xor_row(j, i);
    for (std::size_t k = j + 1; k < m.rows(); ++k)
      if (m.get(k, j)) m.xor_row(k, j);
  }
  return m;
}

BitVector gaussian_eliminate(const BitMatrix& augmented) {
  const std::size_t n = augmented.rows();
  if (augmented.cols() != n + 1)
    throw InvalidDimensions("gaussian_eliminate expects an n x (n+1) augmented matrix");

  BitMatrix m = row_echelon_diagonal(augmented);
  for (std::size_t j = 0; j < n; ++j)
    if (!m.get(j, j)) throw SingularMatrix();

  // Back substitution: b_i ^= a_ij * b_j for j from the last column down.
  for (std::size_t j = n; j-- > 1;)
    for (std::size_t i = j; i-- > 0;)
      if (m.get(i, j) && m.get(j, n)) m.set(i, n, !m.get(i, n));

  return m.column(n);
}

BitMatrix row_echelon(const BitMatrix& a) {
  BitMatrix m = a;
  std::size_t pivot_row = 0;
  for (std::size_t c = 0; c < m.cols() && pivot_row < m.rows(); ++c) {
    std::size_t r = pivot_row;
    while (r < m.rows() && !m.get(r, c)) ++r;
    if (r == m.rows()) continue;
    m.swap_rows(pivot_row, r);
    for (std::size_t k = pivot_row + 1; k < m.rows(); ++k)
      if (m.get(k, c)) m.xor_row(k, pivot_row);
    ++pivot_row;
  }
  return m;
}

Rref rref(const BitMatrix& a) {
  Rref out{a, 0, {}};
  BitMatrix& m = out.matrix;
  std::size_t pivot_row = 0;
  for (std::size_t c = 0; c < m.cols() && pivot_row < m.rows(); ++c) {
    std::size_t r = pivot_row;
    while (r < m.rows() && !m.get(r, c)) ++r;
    if (r == m.rows()) continue;
    m.swap_rows(pivot_row, r);
    for (std::size_t k = 0; k < m.rows(); ++k)
      if (k != pivot_row && m.get(k, c)) m.xor_row(k, pivot_row);
    out.pivot_cols.push_back(c);
    ++pivot_row;
  }
  out.rank = pivot_row;
  return out;
}

std::size_t rank(const BitMatrix& a) { return rref(a).rank; }

std::vector<BitVector> nullspace_basis(const BitMatrix& a) {
  const Rref r = rref(a);
  std::vector<bool> is_pivot(a.cols(), false);
  for (auto c : r.pivot_cols) is_pivot[c] = true;

  std::vector<BitVector> basis;
  for (std::size_t f = 0; f < a.cols(); ++f) {
    if (is_pivot[f]) continue;
    BitVector eta(a.cols());
    eta.set(f, true);
    for (std::size_t row = 0; row < r.rank; ++row) eta.set(r.pivot_cols[row], r.matrix.get(row, f));
    basis.push_back(std::move(eta));
  }
  return basis;
}

std::optional<Solution> general_solution(const BitMatrix& a, const BitVector& b) {
  const Rref r = rref(a.augment(b));
  const std::size_t n = a.cols();
  if (!r.pivot_cols.empty() && r.pivot_cols.back() == n) return std::nullopt;

  BitVector particular(n);
  for (std::size_t row = 0; row < r.rank; ++row) particular.set(r.pivot_cols[row], r.matrix.get(row, n));
  return Solution{std::move(particular), nullspace_basis(a)};
}

namespace {

// Leading column of row i, or cols() for a zero row.
std::size_t leading_column(const BitMatrix& a, std::size_t i) {
  for (std::size_t j = 0; j < a.cols(); ++j)
    if (a.get(i, j)) return j;
  return a.cols();
}

}  // namespace

bool is_row_echelon(const BitMatrix& a) {
  std::size_t prev = 0;
  bool seen_zero = false;
  for (std::size_t i = 0; i < a.rows(); ++i) {
    const std::size_t lead = leading_column(a, i);
    if (lead == a.cols()) {
      seen_zero = true;
      continue;
    }
    if (seen_zero) return false;
    if (i > 0 && lead <= prev) return false;
    prev = lead;
  }
  return true;
}

bool is_rref(const BitMatrix& a) {
  if (!is_row_echelon(a)) return false;
  for (std::size_t i = 0; i < a.rows(); ++i) {
    const std::size_t lead = leading_column(a, i);
    if (lead == a.cols()) break;
    for (std::size_t k = 0; k < a.rows(); ++k)
      if (k != i && a.get(k, lead)) return false;
  }
  return true;
}

std::string to_text(const BitMatrix& a) {
  std::string s = std::to_string(a.rows()) + " " + std::to_string(a.cols()) + "\n";
  for (std::size_t i = 0; i < a.rows(); ++i) s += a.row(i).to_string() + "\n";
  return s;
}

BitMatrix from_text(std::string_view text) {
  std::istringstream in{std::string(text)};
  std::size_t rows = 0, cols = 0;
  if (!(in >> rows >> cols)) throw InvalidDimensions("matrix text: missing 'rows cols' header");
  BitMatrix m(rows, cols);
  for (std::size_t i = 0; i < rows; ++i) {
    std::string line;
    if (!(in >> line) || line.size() != cols)
      throw InvalidDimensions("matrix text: row " + std::to_string(i) + " has wrong length");
    m.set_row(i, BitVector::from_string(line));
  }
  return m;
}

}  // namespace qgms::gf2
