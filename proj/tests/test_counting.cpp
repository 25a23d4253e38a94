#include "doctest.h"
#include "qgms/counting.hpp"
#include "qgms/error.hpp"
#include "qgms/gf2.hpp"

using namespace qgms;
using namespace qgms::gms;

namespace {

// Rank n-1 matrices over s-perp for an arbitrary nonzero s, via BitMatrix.
std::uint64_t count_for_period(unsigned n, std::uint64_t s) {
  std::vector<std::uint64_t> perp;
  for (std::uint64_t v = 0; v < (std::uint64_t{1} << n); ++v)
    if (std::popcount(v & s) % 2 == 0) perp.push_back(v);
  std::uint64_t count = 0, total = 1;
  for (unsigned i = 0; i < n; ++i) total *= perp.size();
  for (std::uint64_t idx = 0; idx < total; ++idx) {
    gf2::BitMatrix a(n, n);
    std::uint64_t rest = idx;
    for (unsigned i = 0; i < n; ++i) {
      a.set_row(i, gf2::BitVector::from_uint(n, perp[rest % perp.size()]));
      rest /= perp.size();
    }
    count += gf2::rank(a) == n - 1;
  }
  return count;
}

}  // namespace

TEST_CASE("rank n-1 counts") {
  const std::uint64_t expect[] = {3, 42, 2520};
  for (unsigned n = 2; n <= 4; ++n) {
    const auto c = count_rank_n_minus_1(n, CountMode::Brute);
    REQUIRE(c.brute);
    CHECK(*c.brute == expect[n - 2]);
    CHECK(c.formula == expect[n - 2]);
    CHECK(c.agree);
    CHECK(count_for_period(n, 1) == expect[n - 2]);
  }
  // The count does not depend on which nonzero period is used.
  for (std::uint64_t s = 1; s < 8; ++s) CHECK(count_for_period(3, s) == 42);

  const auto five = count_rank_n_minus_1(5, CountMode::Brute);
  CHECK(five.agree);
  CHECK(*five.brute == 624960);
  CHECK_THROWS_AS(count_rank_n_minus_1(6, CountMode::Brute), EnumerationTooLarge);
  CHECK_FALSE(count_rank_n_minus_1(6, CountMode::Formula).brute);
}

TEST_CASE("formula stays below the relaxation bound") {
  for (unsigned n = 2; n <= 12; ++n) {
    const auto c = count_rank_n_minus_1(n, CountMode::Formula);
    CHECK(c.below_bound);
    CHECK(c.formula < (BigInt(1) << (n * (n - 1))));
  }
  CHECK_THROWS_AS(rank_deficient_count_formula(1), InvalidDimensions);
}

TEST_CASE("query ratio") {
  const auto q = query_ratio(2, 2);
  CHECK(q.n_over_r == BigRational(784, 12));
  CHECK(q.bound == 48);
  CHECK(q.exceeds);
  CHECK(q.n_over_r.convert_to<double>() == doctest::Approx(65.333333).epsilon(1e-6));
  CHECK(q.t_exhaustive == doctest::Approx(M_PI));
  for (const auto& [m, n] : std::vector<std::pair<unsigned, unsigned>>{{3, 2}, {4, 3}, {1, 4}, {6, 5}}) {
    const auto r = query_ratio(m, n);
    CHECK(r.exceeds);
    CHECK(r.t_ratio > r.t_lower);
    CHECK(r.t_lower > r.t_exhaustive);
  }
  CHECK_THROWS_AS(query_ratio(2, 1), InvalidDimensions);
}
