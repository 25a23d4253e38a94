#include "qgms/kernels.hpp"

namespace qgms::sim::kernels::serial {

namespace {

std::uint64_t gather(std::uint64_t i, const unsigned* pos, unsigned n) {
  std::uint64_t v = 0;
  for (unsigned j = 0; j < n; ++j) v |= ((i >> pos[j]) & 1U) << j;
  return v;
}

std::uint64_t scatter(std::uint64_t v, const unsigned* pos, unsigned n) {
  std::uint64_t m = 0;
  for (unsigned j = 0; j < n; ++j) m |= ((v >> j) & 1U) << pos[j];
  return m;
}

}  // namespace

void apply_x(Amp* psi, std::size_t dim, unsigned target, std::uint64_t ctrl_mask) {
  const std::uint64_t bit = std::uint64_t{1} << target;
  for (std::uint64_t i = 0; i < dim; ++i)
    if (!(i & bit) && (i & ctrl_mask) == ctrl_mask) std::swap(psi[i], psi[i | bit]);
}

void apply_1q(Amp* psi, std::size_t dim, unsigned target, const Mat2& u, std::uint64_t ctrl_mask) {
  const std::uint64_t bit = std::uint64_t{1} << target;
  for (std::uint64_t i = 0; i < dim; ++i) {
    if ((i & bit) || (i & ctrl_mask) != ctrl_mask) continue;
    const Amp a = psi[i], b = psi[i | bit];
    psi[i] = u.a00 * a + u.a01 * b;
    psi[i | bit] = u.a10 * a + u.a11 * b;
  }
}

void apply_phase_flip(Amp* psi, std::size_t dim, std::uint64_t mask) {
  for (std::uint64_t i = 0; i < dim; ++i)
    if ((i & mask) == mask) psi[i] = -psi[i];
}

void apply_phase_table(Amp* psi, std::size_t dim, const unsigned char* marked) {
  for (std::uint64_t i = 0; i < dim; ++i)
    if (marked[i]) psi[i] = -psi[i];
}

void apply_oracle(Amp* psi, std::size_t dim, const std::uint64_t* table, const unsigned* in_pos,
                  unsigned n_in, const unsigned* out_pos, unsigned n_out) {
  for (std::uint64_t i = 0; i < dim; ++i) {
    const std::uint64_t j = i ^ scatter(table[gather(i, in_pos, n_in)], out_pos, n_out);
    if (j > i) std::swap(psi[i], psi[j]);
  }
}

void reflect_about_mean(Amp* psi, std::size_t dim) {
  Amp sum = 0;
  for (std::uint64_t i = 0; i < dim; ++i) sum += psi[i];
  const Amp twice_mean = 2.0 * sum / static_cast<double>(dim);
  for (std::uint64_t i = 0; i < dim; ++i) psi[i] = twice_mean - psi[i];
}

double norm2(const Amp* psi, std::size_t dim) {
  double s = 0;
  for (std::uint64_t i = 0; i < dim; ++i) s += std::norm(psi[i]);
  return s;
}

}  // namespace qgms::sim::kernels::serial
