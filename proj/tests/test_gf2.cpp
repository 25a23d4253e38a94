#include <set>

#include "doctest.h"
#include "qgms/error.hpp"
#include "qgms/gf2.hpp"
#include "qgms/rng.hpp"

using namespace qgms;
using namespace qgms::gf2;

namespace {

BitVector bits(const char* s) { return BitVector::from_string(s); }

BitMatrix random_matrix(Rng& rng, std::size_t rows, std::size_t cols) {
  BitMatrix a(rows, cols);
  for (std::size_t i = 0; i < rows; ++i)
    for (std::size_t j = 0; j < cols; ++j) a.set(i, j, rng() & 1);
  return a;
}

// Every XOR combination of the rows.
std::set<std::uint64_t> row_span(const BitMatrix& a) {
  std::set<std::uint64_t> span;
  for (std::uint64_t mask = 0; mask < (std::uint64_t{1} << a.rows()); ++mask) {
    BitVector v(a.cols());
    for (std::size_t i = 0; i < a.rows(); ++i)
      if (mask >> i & 1) v ^= a.row(i);
    span.insert(v.to_uint());
  }
  return span;
}

std::size_t brute_rank(const BitMatrix& a) {
  const auto n = row_span(a).size();
  std::size_t r = 0;
  while ((std::size_t{1} << r) < n) ++r;
  return r;
}

std::set<std::uint64_t> brute_kernel(const BitMatrix& a) {
  std::set<std::uint64_t> k;
  for (std::uint64_t x = 0; x < (std::uint64_t{1} << a.cols()); ++x)
    if ((a * BitVector::from_uint(a.cols(), x)).is_zero()) k.insert(x);
  return k;
}

}  // namespace

TEST_CASE("bit vector basics") {
  BitVector v = bits("0110");
  CHECK(v.size() == 4);
  CHECK(v.to_uint() == 6);
  CHECK(v.popcount() == 2);
  CHECK((v ^ bits("0011")).to_string() == "0101");
  CHECK(dot(bits("0110"), bits("0100")));
  CHECK_FALSE(dot(bits("0110"), bits("0110")));
  BitVector w(130);
  w.set(129, true);
  CHECK(w.popcount() == 1);
  CHECK_FALSE(w.is_zero());
  CHECK(BitVector::from_uint(4, 6) == v);
}

TEST_CASE("gaussian_eliminate examples") {
  CHECK(gaussian_eliminate(BitMatrix::identity(2).augment(bits("10"))) == bits("10"));
  CHECK(gaussian_eliminate(BitMatrix::from_strings({"11", "01"}).augment(bits("11"))) == bits("01"));
  CHECK_THROWS_AS(gaussian_eliminate(BitMatrix::from_strings({"011", "101", "110"}).augment(bits("110"))),
                  SingularMatrix);
}

TEST_CASE("gaussian_eliminate solves random invertible systems") {
  Rng rng(1);
  int solved = 0;
  for (int trial = 0; trial < 400; ++trial) {
    const std::size_t n = 1 + uniform_below(rng, 16);
    const BitMatrix a = random_matrix(rng, n, n);
    if (rank(a) != n) continue;
    BitVector x(n);
    for (std::size_t i = 0; i < n; ++i) x.set(i, rng() & 1);
    const BitVector b = a * x;
    CHECK(gaussian_eliminate(a.augment(b)) == x);
    ++solved;
  }
  CHECK(solved > 50);
}

TEST_CASE("row_echelon examples") {
  CHECK(row_echelon(BitMatrix(2, 3)) == BitMatrix(2, 3));
  CHECK(row_echelon(BitMatrix::from_strings({"01", "10"})) == BitMatrix::identity(2));
  CHECK(row_echelon(BitMatrix::from_strings({"11", "11"})) == BitMatrix::from_strings({"11", "00"}));
  // The diagonal-pivot variant adds instead of swapping.
  CHECK(row_echelon_diagonal(BitMatrix::from_strings({"01", "10"})) == BitMatrix::from_strings({"11", "01"}));
}

TEST_CASE("rref examples") {
  const auto id = rref(BitMatrix::identity(3));
  CHECK(id.rank == 3);
  CHECK(id.pivot_cols == std::vector<std::size_t>{0, 1, 2});

  const BitMatrix a = BitMatrix::from_strings({"110", "001", "111"});
  const auto r = rref(a);
  CHECK(r.matrix == BitMatrix::from_strings({"110", "001", "000"}));
  CHECK(r.rank == 2);
  CHECK(r.pivot_cols == std::vector<std::size_t>{0, 2});
  CHECK(row_span(a) == row_span(r.matrix));
  CHECK(row_span(a).size() == 4);

  const auto z = rref(BitMatrix(1, 5));
  CHECK(z.rank == 0);
  CHECK(z.pivot_cols.empty());
}

TEST_CASE("rank examples") {
  CHECK(rank(BitMatrix::identity(4)) == 4);
  CHECK(rank(BitMatrix::from_strings({"10", "10", "10"})) == 1);
}

TEST_CASE("nullspace examples") {
  CHECK(nullspace_basis(BitMatrix::identity(3)).empty());
  const auto one = nullspace_basis(BitMatrix::from_strings({"11"}));
  REQUIRE(one.size() == 1);
  CHECK(one[0] == bits("11"));
  const auto two = nullspace_basis(BitMatrix::from_strings({"101", "011"}));
  REQUIRE(two.size() == 1);
  CHECK(two[0] == bits("111"));
}

TEST_CASE("general_solution examples") {
  const auto a = general_solution(BitMatrix::identity(2), bits("01"));
  REQUIRE(a);
  CHECK(a->particular == bits("01"));
  CHECK(a->basis.empty());

  const auto b = general_solution(BitMatrix::from_strings({"11"}), bits("1"));
  REQUIRE(b);
  CHECK(b->particular == bits("10"));
  REQUIRE(b->basis.size() == 1);
  CHECK(b->basis[0] == bits("11"));

  CHECK_FALSE(general_solution(BitMatrix::from_strings({"11", "11"}), bits("10")));
}

TEST_CASE("rref and rank agree with row-span enumeration on every 3x3 matrix") {
  for (std::uint64_t p = 0; p < 512; ++p) {
    const BitMatrix a = BitMatrix::from_packed(3, 3, p);
    const auto r = rref(a);
    CHECK(is_rref(r.matrix));
    CHECK(rref(r.matrix).matrix == r.matrix);
    CHECK(r.rank == brute_rank(a));
    CHECK(rank(r.matrix) == r.rank);
    CHECK(row_span(r.matrix) == row_span(a));
    const BitMatrix e = row_echelon(a);
    CHECK(is_row_echelon(e));
    CHECK(row_span(e) == row_span(a));
  }
}

TEST_CASE("nullspace basis spans the kernel for every matrix up to 3x4") {
  for (std::size_t rows = 1; rows <= 3; ++rows) {
    for (std::size_t cols = 1; cols <= 4; ++cols) {
      for (std::uint64_t p = 0; p < (std::uint64_t{1} << (rows * cols)); ++p) {
        const BitMatrix a = BitMatrix::from_packed(rows, cols, p);
        const auto basis = nullspace_basis(a);
        CHECK(basis.size() == cols - rank(a));
        std::set<std::uint64_t> span{0};
        for (const auto& v : basis) {
          CHECK((a * v).is_zero());
          std::set<std::uint64_t> next = span;
          for (auto s : span) next.insert(s ^ v.to_uint());
          span = next;
        }
        CHECK(span == brute_kernel(a));
      }
    }
  }
}

TEST_CASE("is_rref and is_row_echelon predicates") {
  CHECK(is_rref(BitMatrix::from_strings({"101", "011", "000"})));
  CHECK_FALSE(is_rref(BitMatrix::from_strings({"111", "011"})));
  CHECK(is_row_echelon(BitMatrix::from_strings({"111", "011"})));
  CHECK_FALSE(is_row_echelon(BitMatrix::from_strings({"000", "011"})));
  CHECK_FALSE(is_row_echelon(BitMatrix::from_strings({"011", "010"})));
}

TEST_CASE("matrix text format round trip") {
  const BitMatrix a = BitMatrix::from_strings({"1101", "0010"});
  CHECK(to_text(a) == "2 4\n1101\n0010\n");
  CHECK(from_text(to_text(a)) == a);
  CHECK_THROWS_AS(from_text("2 2\n10\n"), Error);
}

TEST_CASE("dimension errors") {
  CHECK_THROWS_AS(gaussian_eliminate(BitMatrix(2, 2)), InvalidDimensions);
  CHECK_THROWS_AS(BitMatrix(2, 3) * BitVector(2), InvalidDimensions);
}
