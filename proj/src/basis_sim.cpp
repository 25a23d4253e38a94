#include "qgms/error.hpp"
#include "qgms/oracle.hpp"
#include "qgms/sparse_state.hpp"

namespace qgms::sim {

std::uint64_t BasisState::read(const ir::Register& r) const {
  if (r.size > 64) throw InvalidDimensions("register '" + r.name + "' wider than 64 bits");
  std::uint64_t v = 0;
  for (ir::Qubit j = 0; j < r.size; ++j) v |= std::uint64_t{bits_[r.start + j]} << j;
  return v;
}

std::uint64_t BasisState::read(const std::vector<ir::Qubit>& qs) const {
  std::uint64_t v = 0;
  for (std::size_t j = 0; j < qs.size(); ++j) v |= std::uint64_t{bits_[qs[j]]} << j;
  return v;
}

void BasisState::write(const ir::Register& r, std::uint64_t value) {
  for (ir::Qubit j = 0; j < r.size; ++j) bits_[r.start + j] = (value >> j) & 1U;
}

bool BasisState::is_clear(const ir::Register& r) const {
  for (ir::Qubit j = 0; j < r.size; ++j)
    if (bits_[r.start + j]) return false;
  return true;
}

void apply(BasisState& s, const ir::Gate& g) {
  auto all_set = [&] {
    for (auto c : g.controls)
      if (!s.get(c)) return false;
    return true;
  };
  switch (g.kind) {
    case ir::GateKind::X:
    case ir::GateKind::CNOT:
    case ir::GateKind::Toffoli:
    case ir::GateKind::MCX:
      if (all_set()) s.flip(g.targets[0]);
      return;
    case ir::GateKind::Z:
      if (all_set() && s.get(g.targets[0])) s.negate();
      return;
    case ir::GateKind::Oracle: {
      if (!g.oracle) throw UnresolvedOracle(g.oracle_name);
      const std::uint64_t v = (*g.oracle)(s.read(g.controls));
      for (std::size_t b = 0; b < g.targets.size(); ++b)
        if ((v >> b) & 1U) s.flip(g.targets[b]);
      return;
    }
    default:
      throw NonClassicalGate(std::string(ir::mnemonic(g.kind)) + " does not map basis states to basis states");
  }
}

void run_in_place(const ir::Circuit& c, BasisState& s) {
  if (c.qubit_count() != s.qubit_count()) throw RegisterMismatch("circuit and state widths differ");
  for (const auto& g : c.gates()) apply(s, g);
}

}  // namespace qgms::sim
