#pragma once

// Dense statevector simulation. Basis index bit k is qubit k.

#include <complex>
#include <cstdint>
#include <string>
#include <vector>

#include "qgms/circuit.hpp"
#include "qgms/rng.hpp"

namespace qgms::sim {

using Amp = std::complex<double>;

enum class Backend { Omp, Serial };

// Default 24; QGMS_QUBIT_CAP overrides it.
unsigned qubit_cap();

class StateVector {
 public:
  // |0...0>. Throws QubitCapExceeded above qubit_cap().
  explicit StateVector(unsigned qubits);
  static StateVector basis(unsigned qubits, std::uint64_t index);
  // Takes ownership of amplitudes; size must be a power of two.
  static StateVector from_amplitudes(std::vector<Amp> amps);

  unsigned qubit_count() const noexcept { return qubits_; }
  std::size_t dim() const noexcept { return amps_.size(); }
  const Amp& operator[](std::size_t i) const { return amps_[i]; }
  Amp& operator[](std::size_t i) { return amps_[i]; }
  const std::vector<Amp>& amplitudes() const noexcept { return amps_; }
  std::vector<Amp>& amplitudes() noexcept { return amps_; }

  double norm(Backend b = Backend::Omp) const;

 private:
  StateVector() = default;
  unsigned qubits_ = 0;
  std::vector<Amp> amps_;
};

void apply(StateVector& psi, const ir::Gate& g, Backend b = Backend::Omp);
// Throws RegisterMismatch when qubit counts differ, UnresolvedOracle for
// oracle blocks without a table.
void run_in_place(const ir::Circuit& c, StateVector& psi, Backend b = Backend::Omp);
StateVector run(const ir::Circuit& c, StateVector psi, Backend b = Backend::Omp);

// Haar-like random state: independent Gaussian components, normalised.
StateVector random_state(unsigned qubits, Rng& rng);

// Probability of each outcome on `qubits`; outcome bit j is qubits[j].
std::vector<double> full_distribution(const StateVector& psi, const std::vector<ir::Qubit>& qubits);

struct Measurement {
  std::uint64_t outcome = 0;
  StateVector post;
};
Measurement measure(const StateVector& psi, const std::vector<ir::Qubit>& qubits, Rng& rng);

// Reads `qubits` out of basis index i (bit j of the result is qubits[j]).
std::uint64_t extract(std::uint64_t i, const std::vector<ir::Qubit>& qubits);
std::vector<ir::Qubit> qubits_of(const ir::Register& r);

// Tr(rho_S^2) for the reduced state on `subsystem`.
double reduced_purity(const StateVector& psi, const std::vector<ir::Qubit>& subsystem);

// max_i |a_i - e^{i phi} b_i| with the phase fixed by the largest amplitude.
double distance_up_to_phase(const StateVector& a, const StateVector& b);

// {"qubits": n, "registers": [...], "amplitudes": [[index, re, im], ...]}
// keeping amplitudes with modulus above 1e-12.
std::string to_json(const StateVector& psi, const std::vector<ir::Register>& registers = {});
// "outcome,probability" rows.
std::string distribution_csv(const std::vector<double>& dist);

}  // namespace qgms::sim
