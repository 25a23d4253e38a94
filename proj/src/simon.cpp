#include "qgms/simon.hpp"

#include <bit>
#include <map>

#include "qgms/error.hpp"

namespace qgms::sim {

ir::Circuit parallel_simon_circuit(std::shared_ptr<const OracleSpec> f, unsigned n, unsigned l) {
  if (!f || f->n_in != n || f->n_out != n) throw InvalidDimensions("Simon oracle must map n bits to n bits");
  if (l < 1) throw InvalidDimensions("need at least one Simon round");
  ir::CircuitBuilder b;
  const auto y = b.declare("y", n * l);
  const auto out = b.declare("f", n * l);
  for (unsigned i = 0; i < l; ++i) {
    std::vector<ir::Qubit> in, dst;
    for (unsigned j = 0; j < n; ++j) {
      in.push_back(y[i * n + j]);
      dst.push_back(out[i * n + j]);
    }
    for (auto q : in) b.h(q);
    b.add(ir::Gate::oracle_block(f, in, dst));
    for (auto q : in) b.h(q);
  }
  return b.build();
}

StateVector simon_round(const SimonOracle& oracle) { return parallel_simon(oracle, 1); }

StateVector parallel_simon(const SimonOracle& oracle, unsigned l) {
  const unsigned qubits = 2 * oracle.n * l;
  if (qubits > qubit_cap()) throw QubitCapExceeded(qubits, qubit_cap());
  const auto c = parallel_simon_circuit(oracle.spec, oracle.n, l);
  return run(c, StateVector(qubits));
}

std::vector<double> y_marginal(const StateVector& psi, unsigned n, unsigned l) {
  std::vector<ir::Qubit> y(n * l);
  for (unsigned q = 0; q < n * l; ++q) y[q] = q;
  return full_distribution(psi, y);
}

std::vector<double> simon_sample_distribution(const std::vector<std::uint64_t>& f, unsigned n) {
  const std::uint64_t size = std::uint64_t{1} << n;
  if (f.size() != size) throw InvalidDimensions("function table must have 2^n entries");
  std::map<std::uint64_t, std::vector<std::uint64_t>> preimage;
  for (std::uint64_t x = 0; x < size; ++x) preimage[f[x]].push_back(x);
  std::vector<double> p(size, 0.0);
  const double norm = static_cast<double>(size) * static_cast<double>(size);
  for (std::uint64_t y = 0; y < size; ++y) {
    for (const auto& [z, xs] : preimage) {
      long long s = 0;
      for (auto x : xs) s += (std::popcount(x & y) & 1) ? -1 : 1;
      p[y] += static_cast<double>(s * s) / norm;
    }
  }
  return p;
}

}  // namespace qgms::sim
