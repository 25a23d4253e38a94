#include "qgms/counting.hpp"

#include <bit>
#include <cmath>
#include <vector>

#include "qgms/error.hpp"

namespace qgms::gms {

namespace {

BigInt pow2(unsigned e) { return BigInt(1) << e; }
}  // namespace

BigInt rank_deficient_count_formula(unsigned n) {
  if (n < 2) throw InvalidDimensions("count needs n >= 2");
  BigInt v = pow2((n - 2) * (n - 1) / 2) * (pow2(n) - 1);
  for (unsigned i = 1; i < n; ++i) v *= pow2(i) - 1;
  return v;
}

CountReport count_rank_n_minus_1(unsigned n, CountMode mode) {
  CountReport rep;
  rep.n = n;
  rep.formula = rank_deficient_count_formula(n);
  rep.relaxation_bound = pow2(n * (n - 1));
  rep.below_bound = rep.formula < rep.relaxation_bound;
  if (mode == CountMode::Formula) return rep;
  if (n > 5) throw EnumerationTooLarge("brute-force count limited to n <= 5");

  const std::uint64_t s = (std::uint64_t{1} << n) - 1;
  std::vector<std::uint64_t> perp;
  for (std::uint64_t v = 0; v <= s; ++v)
    if (std::popcount(v & s) % 2 == 0) perp.push_back(v);
  const std::uint64_t total = std::uint64_t{1} << ((n - 1) * n);
  std::uint64_t count = 0;
  std::vector<std::uint64_t> rows(n);
  for (std::uint64_t idx = 0; idx < total; ++idx) {
    std::uint64_t rest = idx;
    for (unsigned i = 0; i < n; ++i) {
      rows[i] = perp[rest % perp.size()];
      rest /= perp.size();
    }
    std::vector<std::uint64_t> basis;
    for (auto r : rows) {
      for (auto b : basis)
        if (r & std::bit_floor(b)) r ^= b;
      if (r) basis.push_back(r);
    }
    if (basis.size() == n - 1) ++count;
  }
  rep.brute = count;
  rep.agree = BigInt(count) == rep.formula;
  return rep;
}

QueryRatio query_ratio(unsigned m, unsigned n) {
  if (m < 1 || n < 2) throw InvalidDimensions("query ratio needs m >= 1, n >= 2");
  QueryRatio q;
  q.m = m;
  q.n = n;
  const BigInt num = (pow2(m) - 1) * pow2(2 * n * n) + pow2(2 * (n - 1) * n);
  const BigInt den = pow2((n - 1) * n) * rank_deficient_count_formula(n);
  q.n_over_r = BigRational(num, den);
  q.bound = pow2(m + 2 * n) - pow2(2 * n);
  q.exceeds = q.n_over_r > BigRational(q.bound);
  q.t_lower = M_PI / 4 * std::sqrt(q.bound.convert_to<double>());
  q.t_ratio = M_PI / 4 * std::sqrt(q.n_over_r.convert_to<double>());
  q.t_exhaustive = M_PI / 4 * std::sqrt(std::ldexp(1.0, static_cast<int>(m + n)));
  return q;
}

}  // namespace qgms::gms
