#pragma once

// Amplitude amplification Q = -A S_0 A^{-1} S_g, where S_g flips the sign
// of good basis states and S_0 flips the sign of |0...0>. With A = H^{(x)n}
// this is Grover search.

#include <functional>
#include <vector>

#include "qgms/circuit.hpp"
#include "qgms/oracle.hpp"
#include "qgms/statevector.hpp"

namespace qgms::sim {

using Predicate = std::function<bool(std::uint64_t)>;

// Q^t A|0>.
StateVector amplitude_amplify(const ir::Circuit& prep, const Predicate& good, unsigned t);
// Marker given as a one-bit table over all qubits of prep.
StateVector amplitude_amplify(const ir::Circuit& prep, const OracleSpec& marker, unsigned t);

double probability(const StateVector& psi, const Predicate& good);

// Success probability after t = 0..t_max iterations.
std::vector<double> amplification_curve(const ir::Circuit& prep, const Predicate& good, unsigned t_max);

// sin^2((2t+1) theta) with sin^2 theta = r/N.
double grover_success(double N, double r, unsigned t);

// H on every qubit.
ir::Circuit uniform_prep(unsigned qubits);

}  // namespace qgms::sim
