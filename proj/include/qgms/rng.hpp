#pragma once

#include <cstdint>
#include <random>
#include <vector>

namespace qgms {

// mt19937_64 has a standardised output sequence; the bounded draw below is
// ours so results do not depend on the standard library's distributions.
using Rng = std::mt19937_64;

inline std::uint64_t uniform_below(Rng& rng, std::uint64_t bound) {
  if (bound <= 1) return 0;
  const std::uint64_t limit = UINT64_MAX - (UINT64_MAX % bound);
  std::uint64_t v;
  do {
    v = rng();
  } while (v >= limit);
  return v % bound;
}

inline double uniform_unit(Rng& rng) {
  return static_cast<double>(rng() >> 11) * 0x1.0p-53;
}

// Random permutation of 0..size-1 (Fisher-Yates).
inline std::vector<std::uint64_t> random_permutation(Rng& rng, std::uint64_t size) {
  std::vector<std::uint64_t> p(size);
  for (std::uint64_t i = 0; i < size; ++i) p[i] = i;
  for (std::uint64_t i = size; i > 1; --i) {
    const std::uint64_t j = uniform_below(rng, i);
    std::swap(p[i - 1], p[j]);
  }
  return p;
}

}  // namespace qgms
