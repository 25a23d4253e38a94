#include "qgms/sparse_state.hpp"

#include <cmath>
#include <map>

#include "qgms/error.hpp"
#include "qgms/oracle.hpp"

namespace qgms::sim {

namespace {

std::uint64_t mask_of(const std::vector<ir::Qubit>& qs) {
  std::uint64_t m = 0;
  for (auto q : qs) m |= std::uint64_t{1} << q;
  return m;
}

}  // namespace

SparseState::SparseState(unsigned qubits) : qubits_(qubits) {
  if (qubits > 64) throw QubitCapExceeded(qubits, 64);
  amps_[0] = 1.0;
}

SparseState SparseState::basis(unsigned qubits, std::uint64_t index) {
  SparseState s(qubits);
  s.amps_.clear();
  s.amps_[index] = 1.0;
  return s;
}

Amp SparseState::get(std::uint64_t index) const {
  auto it = amps_.find(index);
  return it == amps_.end() ? Amp{0.0, 0.0} : it->second;
}

void SparseState::set(std::uint64_t index, Amp v) {
  if (v == Amp{0.0, 0.0})
    amps_.erase(index);
  else
    amps_[index] = v;
}

double SparseState::norm() const {
  double s = 0;
  for (const auto& [i, a] : amps_) s += std::norm(a);
  return std::sqrt(s);
}

SparseState SparseState::embed(const StateVector& psi, unsigned qubits, const std::vector<ir::Qubit>& mapping) {
  if (mapping.size() != psi.qubit_count()) throw RegisterMismatch("embed: mapping has wrong size");
  SparseState s(qubits);
  s.amps_.clear();
  for (std::size_t i = 0; i < psi.dim(); ++i) {
    if (std::abs(psi[i]) <= 1e-15) continue;
    std::uint64_t j = 0;
    for (std::size_t b = 0; b < mapping.size(); ++b) j |= ((i >> b) & 1U) << mapping[b];
    s.amps_[j] = psi[i];
  }
  return s;
}

void SparseState::prune(double eps) {
  std::erase_if(amps_, [eps](const auto& kv) { return std::abs(kv.second) <= eps; });
}

void apply(SparseState& psi, const ir::Gate& g) {
  std::unordered_map<std::uint64_t, Amp> next;
  next.reserve(psi.support() * 2);
  const auto& cur = psi.amplitudes();
  const std::uint64_t ctrl = mask_of(g.controls);
  switch (g.kind) {
    case ir::GateKind::X:
    case ir::GateKind::CNOT:
    case ir::GateKind::Toffoli:
    case ir::GateKind::MCX: {
      const std::uint64_t bit = std::uint64_t{1} << g.targets[0];
      for (const auto& [i, a] : cur) next[(i & ctrl) == ctrl ? i ^ bit : i] = a;
      break;
    }
    case ir::GateKind::Z: {
      const std::uint64_t m = ctrl | (std::uint64_t{1} << g.targets[0]);
      for (const auto& [i, a] : cur) next[i] = (i & m) == m ? -a : a;
      break;
    }
    case ir::GateKind::Oracle: {
      if (!g.oracle) throw UnresolvedOracle(g.oracle_name);
      for (const auto& [i, a] : cur) {
        std::uint64_t in = 0;
        for (std::size_t b = 0; b < g.controls.size(); ++b) in |= ((i >> g.controls[b]) & 1U) << b;
        const std::uint64_t v = (*g.oracle)(in);
        std::uint64_t flip = 0;
        for (std::size_t b = 0; b < g.targets.size(); ++b) flip |= ((v >> b) & 1U) << g.targets[b];
        next[i ^ flip] = a;
      }
      break;
    }
    case ir::GateKind::H: {
      const std::uint64_t bit = std::uint64_t{1} << g.targets[0];
      const double h = 1.0 / std::sqrt(2.0);
      for (const auto& [i, a] : cur) {
        next[i & ~bit] += h * a;
        next[i | bit] += (i & bit) ? -h * a : h * a;
      }
      std::erase_if(next, [](const auto& kv) { return std::abs(kv.second) <= 1e-15; });
      break;
    }
    default: {
      const std::uint64_t bit = std::uint64_t{1} << g.targets[0];
      double angle = 0;
      switch (g.kind) {
        case ir::GateKind::S: angle = M_PI / 2; break;
        case ir::GateKind::Sdg: angle = -M_PI / 2; break;
        case ir::GateKind::T: angle = M_PI / 4; break;
        case ir::GateKind::Tdg: angle = -M_PI / 4; break;
        default: break;
      }
      const Amp phase = std::polar(1.0, angle);
      for (const auto& [i, a] : cur) next[i] = (i & bit) ? phase * a : a;
    }
  }
  psi.assign(std::move(next));
}

void run_in_place(const ir::Circuit& c, SparseState& psi) {
  if (c.qubit_count() != psi.qubit_count()) throw RegisterMismatch("circuit and state widths differ");
  for (const auto& g : c.gates()) apply(psi, g);
}

std::unordered_map<std::uint64_t, double> distribution(const SparseState& psi,
                                                       const std::vector<ir::Qubit>& qubits) {
  std::unordered_map<std::uint64_t, double> d;
  for (const auto& [i, a] : psi.amplitudes()) d[extract(i, qubits)] += std::norm(a);
  return d;
}

double reduced_purity(const SparseState& psi, const std::vector<ir::Qubit>& subsystem) {
  const std::uint64_t mask = mask_of(subsystem);
  std::map<std::uint64_t, std::vector<std::pair<std::uint64_t, Amp>>> by_env;
  for (const auto& [i, a] : psi.amplitudes()) by_env[i & ~mask].emplace_back(i & mask, a);
  std::map<std::pair<std::uint64_t, std::uint64_t>, Amp> rho;
  for (const auto& [env, entries] : by_env)
    for (const auto& [a, x] : entries)
      for (const auto& [b, y] : entries) rho[{a, b}] += x * std::conj(y);
  double p = 0;
  for (const auto& [key, v] : rho) p += std::norm(v);
  return p;
}

double reduced_purity(const StateVector& psi, const std::vector<ir::Qubit>& subsystem) {
  std::vector<ir::Qubit> identity(psi.qubit_count());
  for (ir::Qubit q = 0; q < identity.size(); ++q) identity[q] = q;
  return reduced_purity(SparseState::embed(psi, psi.qubit_count(), identity), subsystem);
}

}  // namespace qgms::sim
