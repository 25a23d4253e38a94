#pragma once

// Exact counting for the success analysis: the number of n x n matrices whose
// rows lie in s-perp and whose rank is n-1, and the resulting N/r ratio.

#include <cstdint>
#include <optional>

#include <boost/multiprecision/cpp_int.hpp>

namespace qgms::gms {

using BigInt = boost::multiprecision::cpp_int;
using BigRational = boost::multiprecision::cpp_rational;

enum class CountMode { Brute, Formula };

struct CountReport {
  unsigned n = 0;
  std::optional<std::uint64_t> brute;  // Brute mode only
  BigInt formula;
  BigInt relaxation_bound;  // 2^{n(n-1)}
  bool agree = true;        // brute == formula when both exist
  bool below_bound = true;  // formula < relaxation_bound
};

// 2^{(n-2)(n-1)/2} (2^n - 1) prod_{i=1}^{n-1} (2^i - 1).
BigInt rank_deficient_count_formula(unsigned n);

// Brute mode enumerates all (2^{n-1})^n matrices over s-perp (s = all ones)
// and throws EnumerationTooLarge for n > 5.
CountReport count_rank_n_minus_1(unsigned n, CountMode mode);

struct QueryRatio {
  unsigned m = 0;
  unsigned n = 0;
  BigRational n_over_r;  // ((2^m - 1) 2^{2n^2} + 2^{2(n-1)n}) / ((2^{n-1})^n |{A}|)
  BigInt bound;          // 2^{m+2n} - 2^{2n}
  bool exceeds = false;  // n_over_r > bound
  double t_lower = 0;    // (pi/4) sqrt(bound)
  double t_ratio = 0;    // (pi/4) sqrt(n_over_r)
  double t_exhaustive = 0;  // (pi/4) sqrt(2^{m+n})
};

// l = n rounds. n >= 2.
QueryRatio query_ratio(unsigned m, unsigned n);

}  // namespace qgms::gms
