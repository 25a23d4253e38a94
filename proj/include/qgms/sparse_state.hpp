#pragma once

// Backends for circuits too wide for a dense vector.
//
// SparseState keeps only nonzero amplitudes (up to 64 qubits); the reversible
// elimination circuits keep the support size of their input, so a
// superposition over a few hundred matrices stays a few hundred entries.
// BasisState follows a single basis state through classical gates with a
// sign and has no width limit.

#include <cstdint>
#include <unordered_map>
#include <vector>

#include "qgms/circuit.hpp"
#include "qgms/statevector.hpp"

namespace qgms::sim {

class SparseState {
 public:
  explicit SparseState(unsigned qubits);
  static SparseState basis(unsigned qubits, std::uint64_t index);

  unsigned qubit_count() const noexcept { return qubits_; }
  std::size_t support() const noexcept { return amps_.size(); }
  const std::unordered_map<std::uint64_t, Amp>& amplitudes() const noexcept { return amps_; }

  Amp get(std::uint64_t index) const;
  void set(std::uint64_t index, Amp v);
  double norm() const;

  // Places a dense state's qubit j at position mapping[j] of this state.
  static SparseState embed(const StateVector& psi, unsigned qubits, const std::vector<ir::Qubit>& mapping);

  void assign(std::unordered_map<std::uint64_t, Amp> amps) { amps_ = std::move(amps); }

  // Drops amplitudes with modulus <= eps.
  void prune(double eps = 1e-14);

 private:
  unsigned qubits_;
  std::unordered_map<std::uint64_t, Amp> amps_;
};

void apply(SparseState& psi, const ir::Gate& g);
void run_in_place(const ir::Circuit& c, SparseState& psi);

// Outcome -> probability over `qubits` (outcome bit j is qubits[j]); only
// outcomes with nonzero probability appear.
std::unordered_map<std::uint64_t, double> distribution(const SparseState& psi,
                                                       const std::vector<ir::Qubit>& qubits);
double reduced_purity(const SparseState& psi, const std::vector<ir::Qubit>& subsystem);

class BasisState {
 public:
  explicit BasisState(unsigned qubits) : bits_(qubits, 0) {}

  unsigned qubit_count() const noexcept { return static_cast<unsigned>(bits_.size()); }
  bool get(ir::Qubit q) const { return bits_[q] != 0; }
  void set(ir::Qubit q, bool v) { bits_[q] = v; }
  void flip(ir::Qubit q) { bits_[q] ^= 1; }
  int sign() const noexcept { return sign_; }
  void negate() noexcept { sign_ = -sign_; }

  // Register contents as an integer, bit j = r[j]. Register size <= 64.
  std::uint64_t read(const ir::Register& r) const;
  void write(const ir::Register& r, std::uint64_t value);
  std::uint64_t read(const std::vector<ir::Qubit>& qs) const;

  // True when every qubit of r is 0.
  bool is_clear(const ir::Register& r) const;

  friend bool operator==(const BasisState&, const BasisState&) = default;

 private:
  std::vector<unsigned char> bits_;
  int sign_ = 1;
};

// Throws NonClassicalGate on H/S/T, UnresolvedOracle for oracle blocks
// without a table.
void apply(BasisState& s, const ir::Gate& g);
void run_in_place(const ir::Circuit& c, BasisState& s);

}  // namespace qgms::sim
