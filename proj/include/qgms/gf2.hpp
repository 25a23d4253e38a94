#pragma once

// Dense linear algebra over GF(2). Row operations are pure XORs; there is no
// scaling step since every nonzero scalar is 1.

#include <compare>
#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace qgms::gf2 {

class BitVector {
 public:
  explicit BitVector(std::size_t len);
  static BitVector from_uint(std::size_t len, std::uint64_t value);
  // "0110": character i is bit i.
  static BitVector from_string(std::string_view bits);

  std::size_t size() const noexcept { return len_; }
  bool get(std::size_t i) const;
  void set(std::size_t i, bool v);
  void flip(std::size_t i);

  BitVector& operator^=(const BitVector& other);
  friend BitVector operator^(BitVector a, const BitVector& b) { return a ^= b; }

  bool is_zero() const noexcept;
  std::size_t popcount() const noexcept;
  // Bit i of the result is entry i. Requires size() <= 64.
  std::uint64_t to_uint() const;
  std::string to_string() const;

  friend bool dot(const BitVector& a, const BitVector& b);

  friend bool operator==(const BitVector&, const BitVector&) = default;
  friend std::strong_ordering operator<=>(const BitVector&, const BitVector&) = default;

 private:
  std::size_t len_;
  std::vector<std::uint64_t> words_;
};

// Row-major packed matrix; bit 0 of a row's first word is column 0.
class BitMatrix {
 public:
  BitMatrix(std::size_t rows, std::size_t cols);
  static BitMatrix identity(std::size_t n);
  static BitMatrix from_rows(const std::vector<BitVector>& rows);
  // Rows given as '0'/'1' strings, e.g. {"110", "001"}.
  static BitMatrix from_strings(const std::vector<std::string>& rows);
  // Entry (i, j) is bit i*cols + j of `packed`. Requires rows*cols <= 64.
  static BitMatrix from_packed(std::size_t rows, std::size_t cols, std::uint64_t packed);

  std::size_t rows() const noexcept { return rows_; }
  std::size_t cols() const noexcept { return cols_; }

  bool get(std::size_t i, std::size_t j) const;
  void set(std::size_t i, std::size_t j, bool v);

  BitVector row(std::size_t i) const;
  void set_row(std::size_t i, const BitVector& v);
  BitVector column(std::size_t j) const;
  bool row_is_zero(std::size_t i) const;
  // row[dst] ^= row[src]
  void xor_row(std::size_t dst, std::size_t src);
  void swap_rows(std::size_t a, std::size_t b);

  BitVector operator*(const BitVector& x) const;
  // [A | b] as a rows x (cols+1) matrix.
  BitMatrix augment(const BitVector& b) const;
  // Columns [first, first+count).
  BitMatrix column_slice(std::size_t first, std::size_t count) const;
  std::uint64_t packed() const;

  friend bool operator==(const BitMatrix&, const BitMatrix&) = default;

 private:
  std::size_t word(std::size_t i, std::size_t j) const { return i * stride_ + j / 64; }

  std::size_t rows_;
  std::size_t cols_;
  std::size_t stride_;
  std::vector<std::uint64_t> bits_;
};

struct Rref {
  BitMatrix matrix;
  std::size_t rank = 0;
  std::vector<std::size_t> pivot_cols;
};

struct Solution {
  BitVector particular;
  std::vector<BitVector> basis;
};

// Solves A x = b for square invertible A given as the augmented n x (n+1)
// matrix. Forward pass adds every lower row into the pivot row while the
// diagonal entry is still 0, then clears the column below; back substitution
// walks columns right to left. Throws SingularMatrix.
BitVector gaussian_eliminate(const BitMatrix& augmented);

// Staircase form (zero rows last, strictly increasing leading columns),
// row-equivalent to A. Pivot rows are brought up by swapping.
BitMatrix row_echelon(const BitMatrix& a);

// Column-by-column forward pass with the pivot fixed on the diagonal, exactly
// as the reversible row-echelon circuit performs it: for column j, each lower
// row is XORed into row j while a[j][j] == 0, then every lower row with a 1 in
// column j gets row j XORed in. Processes j < min(rows, cols). For singular
// inputs the result need not be in staircase form.
BitMatrix row_echelon_diagonal(const BitMatrix& a);

Rref rref(const BitMatrix& a);
std::size_t rank(const BitMatrix& a);

// One vector per free column: the free variable set to 1, other free
// variables 0, pivot variables read off the reduced matrix.
std::vector<BitVector> nullspace_basis(const BitMatrix& a);

// nullopt when the system is inconsistent.
std::optional<Solution> general_solution(const BitMatrix& a, const BitVector& b);

bool is_row_echelon(const BitMatrix& a);
bool is_rref(const BitMatrix& a);

// Text format: "rows cols" on the first line, then one line of '0'/'1' per row.
std::string to_text(const BitMatrix& a);
BitMatrix from_text(std::string_view text);

}  // namespace qgms::gf2
