#pragma once

// Dense amplitude kernels. `serial` is the straightforward reference; `omp`
// splits the index space across threads. Both produce identical results for
// the permutation and phase kernels; reductions agree to rounding.

#include <complex>
#include <cstddef>
#include <cstdint>

namespace qgms::sim::kernels {

using Amp = std::complex<double>;

struct Mat2 {
  Amp a00, a01, a10, a11;
};

namespace serial {

// X on `target` where every bit of ctrl_mask is set.
void apply_x(Amp* psi, std::size_t dim, unsigned target, std::uint64_t ctrl_mask);
// 2x2 unitary on `target` where every bit of ctrl_mask is set.
void apply_1q(Amp* psi, std::size_t dim, unsigned target, const Mat2& u, std::uint64_t ctrl_mask);
// Negates amplitudes whose index has every bit of mask set.
void apply_phase_flip(Amp* psi, std::size_t dim, std::uint64_t mask);
// Negates amplitudes where marked[i] != 0.
void apply_phase_table(Amp* psi, std::size_t dim, const unsigned char* marked);
// out bits ^= table[in bits]; in_pos/out_pos are qubit positions, bit j of
// the table index / value sits at in_pos[j] / out_pos[j].
void apply_oracle(Amp* psi, std::size_t dim, const std::uint64_t* table, const unsigned* in_pos,
                  unsigned n_in, const unsigned* out_pos, unsigned n_out);
// psi -> 2 mean(psi) - psi.
void reflect_about_mean(Amp* psi, std::size_t dim);
double norm2(const Amp* psi, std::size_t dim);

}  // namespace serial

namespace omp {

void apply_x(Amp* psi, std::size_t dim, unsigned target, std::uint64_t ctrl_mask);
void apply_1q(Amp* psi, std::size_t dim, unsigned target, const Mat2& u, std::uint64_t ctrl_mask);
void apply_phase_flip(Amp* psi, std::size_t dim, std::uint64_t mask);
void apply_phase_table(Amp* psi, std::size_t dim, const unsigned char* marked);
void apply_oracle(Amp* psi, std::size_t dim, const std::uint64_t* table, const unsigned* in_pos,
                  unsigned n_in, const unsigned* out_pos, unsigned n_out);
void reflect_about_mean(Amp* psi, std::size_t dim);
double norm2(const Amp* psi, std::size_t dim);

}  // namespace omp

}  // namespace qgms::sim::kernels
