#include "doctest.h"
#include "qgms/kernels.hpp"
#include "qgms/statevector.hpp"

using namespace qgms;
using namespace qgms::sim;
namespace ks = qgms::sim::kernels;

namespace {

constexpr unsigned kQubits = 14;  // above the parallel threshold

double max_diff(const StateVector& a, const StateVector& b) {
  double d = 0;
  for (std::size_t i = 0; i < a.dim(); ++i) d = std::max(d, std::abs(a[i] - b[i]));
  return d;
}

}  // namespace

TEST_CASE("OpenMP kernels match the serial reference") {
  Rng rng(21);
  const StateVector psi = random_state(kQubits, rng);
  const std::size_t dim = psi.dim();

  for (unsigned target : {0u, 5u, 13u}) {
    for (std::uint64_t ctrl : {std::uint64_t{0}, std::uint64_t{0b110}, std::uint64_t{1} << 12}) {
      if (ctrl >> target & 1) continue;
      StateVector a = psi, b = psi;
      ks::serial::apply_x(a.amplitudes().data(), dim, target, ctrl);
      ks::omp::apply_x(b.amplitudes().data(), dim, target, ctrl);
      CHECK(max_diff(a, b) == 0.0);

      const double h = 1 / std::sqrt(2.0);
      const ks::Mat2 u{h, ks::Amp(0, h), ks::Amp(0, h), h};
      ks::serial::apply_1q(a.amplitudes().data(), dim, target, u, ctrl);
      ks::omp::apply_1q(b.amplitudes().data(), dim, target, u, ctrl);
      CHECK(max_diff(a, b) == 0.0);
    }
  }

  StateVector a = psi, b = psi;
  ks::serial::apply_phase_flip(a.amplitudes().data(), dim, 0b1011);
  ks::omp::apply_phase_flip(b.amplitudes().data(), dim, 0b1011);
  CHECK(max_diff(a, b) == 0.0);

  std::vector<unsigned char> marked(dim);
  for (auto& m : marked) m = rng() & 1;
  ks::serial::apply_phase_table(a.amplitudes().data(), dim, marked.data());
  ks::omp::apply_phase_table(b.amplitudes().data(), dim, marked.data());
  CHECK(max_diff(a, b) == 0.0);

  std::vector<std::uint64_t> table(16);
  for (auto& t : table) t = uniform_below(rng, 8);
  const unsigned in_pos[] = {1, 4, 7, 10}, out_pos[] = {2, 12, 0};
  ks::serial::apply_oracle(a.amplitudes().data(), dim, table.data(), in_pos, 4, out_pos, 3);
  ks::omp::apply_oracle(b.amplitudes().data(), dim, table.data(), in_pos, 4, out_pos, 3);
  CHECK(max_diff(a, b) == 0.0);

  ks::serial::reflect_about_mean(a.amplitudes().data(), dim);
  ks::omp::reflect_about_mean(b.amplitudes().data(), dim);
  CHECK(max_diff(a, b) < 1e-14);
  CHECK(ks::serial::norm2(a.amplitudes().data(), dim) == doctest::Approx(ks::omp::norm2(b.amplitudes().data(), dim)).epsilon(1e-13));
}

TEST_CASE("reflection about the mean") {
  std::vector<ks::Amp> v{1, 2, 3, 6};
  ks::serial::reflect_about_mean(v.data(), v.size());
  CHECK(v[0] == ks::Amp(5));
  CHECK(v[3] == ks::Amp(0));
}

TEST_CASE("serial and OpenMP backends give the same circuit result") {
  Rng rng(22);
  ir::Circuit c(kQubits, {});
  for (ir::Qubit q = 0; q < kQubits; ++q) c.add(ir::Gate::h(q));
  for (ir::Qubit q = 0; q + 2 < kQubits; ++q) c.add(ir::Gate::toffoli(q, q + 1, q + 2));
  c.add(ir::Gate::mcx({0, 3, 5, 7}, 13));
  c.add(ir::Gate::z(4, {1, 2}));
  const auto psi = random_state(kQubits, rng);
  const auto a = run(c, psi, Backend::Serial), b = run(c, psi, Backend::Omp);
  CHECK(max_diff(a, b) < 1e-15);
  CHECK(a.norm(Backend::Serial) == doctest::Approx(1.0).epsilon(1e-12));
}
