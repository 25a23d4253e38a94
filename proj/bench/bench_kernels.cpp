// Serial vs OpenMP dense kernels. Range argument is the qubit count.

#include <benchmark/benchmark.h>

#include <cmath>
#include <vector>

#include "qgms/kernels.hpp"

namespace k = qgms::sim::kernels;

namespace {

std::vector<k::Amp> uniform(unsigned qubits) {
  const std::size_t dim = std::size_t{1} << qubits;
  return std::vector<k::Amp>(dim, k::Amp(1.0 / std::sqrt(double(dim)), 0.0));
}

const k::Mat2 kH{M_SQRT1_2, M_SQRT1_2, M_SQRT1_2, -M_SQRT1_2};

template <auto Fn>
void bm_x(benchmark::State& st) {
  auto psi = uniform(st.range(0));
  for (auto _ : st) Fn(psi.data(), psi.size(), 3, 0b11);
  st.SetItemsProcessed(st.iterations() * psi.size());
}

template <auto Fn>
void bm_1q(benchmark::State& st) {
  auto psi = uniform(st.range(0));
  for (auto _ : st) Fn(psi.data(), psi.size(), 5, kH, 0);
  st.SetItemsProcessed(st.iterations() * psi.size());
}

template <auto Fn>
void bm_reflect(benchmark::State& st) {
  auto psi = uniform(st.range(0));
  psi[1] = -psi[1];
  for (auto _ : st) Fn(psi.data(), psi.size());
  st.SetItemsProcessed(st.iterations() * psi.size());
}

template <auto Fn>
void bm_norm(benchmark::State& st) {
  auto psi = uniform(st.range(0));
  for (auto _ : st) benchmark::DoNotOptimize(Fn(psi.data(), psi.size()));
  st.SetItemsProcessed(st.iterations() * psi.size());
}

}  // namespace

BENCHMARK(bm_x<k::serial::apply_x>)->DenseRange(16, 22, 2);
BENCHMARK(bm_x<k::omp::apply_x>)->DenseRange(16, 22, 2);
BENCHMARK(bm_1q<k::serial::apply_1q>)->DenseRange(16, 22, 2);
BENCHMARK(bm_1q<k::omp::apply_1q>)->DenseRange(16, 22, 2);
BENCHMARK(bm_reflect<k::serial::reflect_about_mean>)->DenseRange(16, 22, 2);
BENCHMARK(bm_reflect<k::omp::reflect_about_mean>)->DenseRange(16, 22, 2);
BENCHMARK(bm_norm<k::serial::norm2>)->DenseRange(16, 22, 2);
BENCHMARK(bm_norm<k::omp::norm2>)->DenseRange(16, 22, 2);

BENCHMARK_MAIN();
