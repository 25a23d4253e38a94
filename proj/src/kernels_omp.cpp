#include <algorithm>
#include <vector>

#include "qgms/kernels.hpp"

namespace qgms::sim::kernels::omp {

namespace {

// Below this size thread start-up costs more than the loop.
constexpr std::int64_t kParallelMin = std::int64_t{1} << 12;

// Inserts a 0 at bit position `target` of i, enumerating the indices with
// that bit clear.
inline std::uint64_t spread(std::uint64_t i, unsigned target) {
  const std::uint64_t low = i & ((std::uint64_t{1} << target) - 1);
  return ((i - low) << 1) | low;
}

}  // namespace

void apply_x(Amp* psi, std::size_t dim, unsigned target, std::uint64_t ctrl_mask) {
  const std::uint64_t bit = std::uint64_t{1} << target;
  const auto half = static_cast<std::int64_t>(dim / 2);
#pragma omp parallel for schedule(static) if (half >= kParallelMin)
  for (std::int64_t k = 0; k < half; ++k) {
    const std::uint64_t i = spread(static_cast<std::uint64_t>(k), target);
    if ((i & ctrl_mask) == ctrl_mask) std::swap(psi[i], psi[i | bit]);
  }
}

void apply_1q(Amp* psi, std::size_t dim, unsigned target, const Mat2& u, std::uint64_t ctrl_mask) {
  const std::uint64_t bit = std::uint64_t{1} << target;
  const auto half = static_cast<std::int64_t>(dim / 2);
#pragma omp parallel for schedule(static) if (half >= kParallelMin)
  for (std::int64_t k = 0; k < half; ++k) {
    const std::uint64_t i = spread(static_cast<std::uint64_t>(k), target);
    if ((i & ctrl_mask) != ctrl_mask) continue;
    const Amp a = psi[i], b = psi[i | bit];
    psi[i] = u.a00 * a + u.a01 * b;
    psi[i | bit] = u.a10 * a + u.a11 * b;
  }
}

void apply_phase_flip(Amp* psi, std::size_t dim, std::uint64_t mask) {
  const auto n = static_cast<std::int64_t>(dim);
#pragma omp parallel for schedule(static) if (n >= kParallelMin)
  for (std::int64_t k = 0; k < n; ++k)
    if ((static_cast<std::uint64_t>(k) & mask) == mask) psi[k] = -psi[k];
}

void apply_phase_table(Amp* psi, std::size_t dim, const unsigned char* marked) {
  const auto n = static_cast<std::int64_t>(dim);
#pragma omp parallel for schedule(static) if (n >= kParallelMin)
  for (std::int64_t k = 0; k < n; ++k)
    if (marked[k]) psi[k] = -psi[k];
}

void apply_oracle(Amp* psi, std::size_t dim, const std::uint64_t* table, const unsigned* in_pos,
                  unsigned n_in, const unsigned* out_pos, unsigned n_out) {
  const auto n = static_cast<std::int64_t>(dim);
  // Each pair {i, j} is swapped once, by its smaller index; pairs are
  // disjoint because the map is an involution.
#pragma omp parallel for schedule(static) if (n >= kParallelMin)
  for (std::int64_t k = 0; k < n; ++k) {
    const auto i = static_cast<std::uint64_t>(k);
    std::uint64_t in = 0;
    for (unsigned b = 0; b < n_in; ++b) in |= ((i >> in_pos[b]) & 1U) << b;
    const std::uint64_t v = table[in];
    std::uint64_t flip = 0;
    for (unsigned b = 0; b < n_out; ++b) flip |= ((v >> b) & 1U) << out_pos[b];
    const std::uint64_t j = i ^ flip;
    if (j > i) std::swap(psi[i], psi[j]);
  }
}

namespace {

// Sums per fixed block, then adds the block sums in order, so the result does
// not depend on the thread count.
template <class T, class F>
T blocked_sum(std::int64_t n, F term) {
  constexpr std::int64_t kBlock = 1 << 12;
  const std::int64_t blocks = (n + kBlock - 1) / kBlock;
  std::vector<T> partial(static_cast<std::size_t>(blocks), T{});
#pragma omp parallel for schedule(static) if (blocks > 1)
  for (std::int64_t b = 0; b < blocks; ++b) {
    T s{};
    const std::int64_t end = std::min(n, (b + 1) * kBlock);
    for (std::int64_t k = b * kBlock; k < end; ++k) s += term(k);
    partial[static_cast<std::size_t>(b)] = s;
  }
  T total{};
  for (const T& s : partial) total += s;
  return total;
}

}  // namespace

void reflect_about_mean(Amp* psi, std::size_t dim) {
  const auto n = static_cast<std::int64_t>(dim);
  const Amp sum = blocked_sum<Amp>(n, [psi](std::int64_t k) { return psi[k]; });
  const Amp twice_mean = 2.0 * sum / static_cast<double>(dim);
#pragma omp parallel for schedule(static) if (n >= kParallelMin)
  for (std::int64_t k = 0; k < n; ++k) psi[k] = twice_mean - psi[k];
}

double norm2(const Amp* psi, std::size_t dim) {
  return blocked_sum<double>(static_cast<std::int64_t>(dim), [psi](std::int64_t k) { return std::norm(psi[k]); });
}

}  // namespace qgms::sim::kernels::omp
