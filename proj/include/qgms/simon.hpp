#pragma once

// Simon rounds: H on the input register, |x>|0> -> |x>|f(x)>, H again. The
// l-round layout puts all input registers first ("y", round i at i*n) and
// all output registers after ("f").

#include <vector>

#include "qgms/circuit.hpp"
#include "qgms/oracle.hpp"
#include "qgms/statevector.hpp"

namespace qgms::sim {

ir::Circuit parallel_simon_circuit(std::shared_ptr<const OracleSpec> f, unsigned n, unsigned l);

StateVector simon_round(const SimonOracle& oracle);
// Throws QubitCapExceeded when 2nl exceeds the cap.
StateVector parallel_simon(const SimonOracle& oracle, unsigned l);

// Distribution of the y register (index bit i*n + j is y_i[j]).
std::vector<double> y_marginal(const StateVector& psi, unsigned n, unsigned l);

// Exact distribution of one Simon sample for an arbitrary f given as a
// table over n bits: P(y) = sum_z |sum_{f(x)=z} (-1)^{x.y}|^2 / 4^n.
std::vector<double> simon_sample_distribution(const std::vector<std::uint64_t>& f, unsigned n);

}  // namespace qgms::sim
