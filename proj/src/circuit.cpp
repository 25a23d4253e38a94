#include "qgms/circuit.hpp"

#include <algorithm>

#include "qgms/error.hpp"
#include "qgms/oracle.hpp"

namespace qgms::ir {

std::string_view mnemonic(GateKind kind) {
  switch (kind) {
    case GateKind::X: return "X";
    case GateKind::H: return "H";
    case GateKind::S: return "S";
    case GateKind::Sdg: return "SDG";
    case GateKind::T: return "T";
    case GateKind::Tdg: return "TDG";
    case GateKind::Z: return "Z";
    case GateKind::CNOT: return "CNOT";
    case GateKind::Toffoli: return "TOFFOLI";
    case GateKind::MCX: return "MCX";
    case GateKind::Oracle: return "ORACLE";
  }
  return "?";
}

Gate Gate::oracle_block(std::shared_ptr<const sim::OracleSpec> spec, std::vector<Qubit> inputs,
                        std::vector<Qubit> outputs) {
  Gate g{GateKind::Oracle, std::move(inputs), std::move(outputs), std::move(spec), {}};
  if (g.oracle) {
    g.oracle_name = g.oracle->name;
    if (g.controls.size() != g.oracle->n_in || g.targets.size() != g.oracle->n_out)
      throw InvalidDimensions("oracle block wiring does not match oracle '" + g.oracle_name + "'");
  }
  return g;
}

bool Gate::is_classical() const noexcept {
  switch (kind) {
    case GateKind::X:
    case GateKind::Z:
    case GateKind::CNOT:
    case GateKind::Toffoli:
    case GateKind::MCX:
    case GateKind::Oracle:
      return true;
    default:
      return false;
  }
}

// ---------------------------------------------------------------------------
// Circuit

Circuit::Circuit(unsigned qubit_count, std::vector<Register> registers)
    : qubit_count_(qubit_count), registers_(std::move(registers)) {
  std::vector<Register> sorted = registers_;
  std::sort(sorted.begin(), sorted.end(), [](const Register& a, const Register& b) {
    return a.start < b.start;
  });
  Qubit next = 0;
  for (const auto& r : sorted) {
    if (r.size == 0) continue;
    if (r.start != next)
      throw RegisterMismatch("registers must be disjoint and contiguous (at '" + r.name + "')");
    next = r.start + r.size;
  }
  if (!registers_.empty() && next != qubit_count)
    throw RegisterMismatch("registers do not cover all qubits");
}

const Register* Circuit::find_register(std::string_view name) const {
  for (const auto& r : registers_)
    if (r.name == name) return &r;
  return nullptr;
}

const Register& Circuit::reg(std::string_view name) const {
  if (const Register* r = find_register(name)) return *r;
  throw RegisterMismatch("no register named '" + std::string(name) + "'");
}

void Circuit::add(Gate g) {
  if (g.targets.empty()) throw InvalidDimensions("gate without target");
  std::vector<Qubit> all = g.controls;
  all.insert(all.end(), g.targets.begin(), g.targets.end());
  for (Qubit q : all)
    if (q >= qubit_count_)
      throw InvalidDimensions("gate touches qubit " + std::to_string(q) + " of a " +
                              std::to_string(qubit_count_) + "-qubit circuit");
  std::sort(all.begin(), all.end());
  if (std::adjacent_find(all.begin(), all.end()) != all.end())
    throw InvalidDimensions(std::string(mnemonic(g.kind)) + " gate reuses a qubit");
  switch (g.kind) {
    case GateKind::CNOT:
      if (g.controls.size() != 1) throw InvalidDimensions("CNOT needs one control");
      break;
    case GateKind::Toffoli:
      if (g.controls.size() != 2) throw InvalidDimensions("Toffoli needs two controls");
      break;
    case GateKind::MCX:
      if (g.controls.empty()) throw InvalidDimensions("MCX needs at least one control");
      break;
    case GateKind::Oracle:
      break;
    case GateKind::Z:
      if (g.targets.size() != 1) throw InvalidDimensions("Z acts on one target");
      break;
    default:
      if (!g.controls.empty() || g.targets.size() != 1)
        throw InvalidDimensions("single-qubit gate takes exactly one target");
  }
  gates_.push_back(std::move(g));
}

void Circuit::add_stage(Stage s) {
  if (s.begin > s.end || s.end > gates_.size()) throw InvalidDimensions("stage out of range");
  stages_.push_back(std::move(s));
}

// ---------------------------------------------------------------------------
// CircuitBuilder

Register CircuitBuilder::declare(std::string name, Qubit size) {
  if (ancillas_ > 0) throw RegisterMismatch("registers must be declared before ancillas");
  Register r{std::move(name), declared_, size};
  declared_ += size;
  registers_.push_back(r);
  return r;
}

Qubit CircuitBuilder::alloc_ancilla() { return declared_ + static_cast<Qubit>(ancillas_++); }

void CircuitBuilder::begin_stage(std::string name, int column) {
  end_stage();
  open_stage_ = Stage{std::move(name), column, gates_.size(), gates_.size(), 0};
  stage_ancilla_mark_ = ancillas_;
}

void CircuitBuilder::end_stage() {
  if (!open_stage_) return;
  open_stage_->end = gates_.size();
  open_stage_->ancillas = ancillas_ - stage_ancilla_mark_;
  stages_.push_back(std::move(*open_stage_));
  open_stage_.reset();
}

void CircuitBuilder::controlled_x(const std::vector<Qubit>& controls, Qubit t) {
  switch (controls.size()) {
    case 0: x(t); break;
    case 1: cnot(controls[0], t); break;
    case 2: toffoli(controls[0], controls[1], t); break;
    default: add(Gate::mcx(controls, t));
  }
}

void CircuitBuilder::controlled_x(const std::vector<Qubit>& controls, const std::vector<Qubit>& negated,
                                  Qubit t) {
  for (Qubit q : negated) x(q);
  std::vector<Qubit> all = controls;
  all.insert(all.end(), negated.begin(), negated.end());
  controlled_x(all, t);
  for (Qubit q : negated) x(q);
}

void CircuitBuilder::append(const Circuit& c) {
  for (const auto& g : c.gates()) add(g);
}

Circuit CircuitBuilder::build() const {
  std::vector<Register> regs = registers_;
  regs.push_back(Register{"ancilla", declared_, static_cast<Qubit>(ancillas_)});
  Circuit c(declared_ + static_cast<unsigned>(ancillas_), std::move(regs));
  for (const auto& g : gates_) c.add(g);
  for (const auto& s : stages_) c.add_stage(s);
  if (open_stage_) {
    Stage s = *open_stage_;
    s.end = gates_.size();
    s.ancillas = ancillas_ - stage_ancilla_mark_;
    c.add_stage(std::move(s));
  }
  return c;
}

// ---------------------------------------------------------------------------
// Resource accounting

namespace {

// Adds the expanded cost of one gate; returns MCX ancillas it needs.
std::int64_t tally(const Gate& g, ResourceProfile& p) {
  const auto k = static_cast<std::int64_t>(g.controls.size());
  switch (g.kind) {
    case GateKind::CNOT:
      ++p.cnot_raw;
      ++p.cnot;
      return 0;
    case GateKind::Toffoli:
      ++p.toffoli_raw;
      ++p.toffoli;
      return 0;
    case GateKind::MCX:
      ++p.mcx_raw;
      if (k == 1) {
        ++p.cnot;
        return 0;
      }
      p.toffoli += 2 * (k - 1);
      ++p.cnot;
      return k - 1;
    case GateKind::Z:
      // Controlled-Z is H-conjugated controlled-X.
      if (k == 0) return 0;
      ++p.mcx_raw;
      if (k == 1) {
        ++p.cnot;
        return 0;
      }
      p.toffoli += 2 * (k - 1);
      ++p.cnot;
      return k - 1;
    case GateKind::Oracle:
      ++p.oracle_calls;
      return 0;
    default:
      return 0;
  }
}

void finish(ResourceProfile& p) {
  p.cnot += 6 * p.toffoli;
  p.t_depth = 7 * p.toffoli;
}

}  // namespace

ResourceProfile resources(const Circuit& c, std::size_t begin, std::size_t end) {
  ResourceProfile p;
  end = std::min(end, c.size());
  std::int64_t peak = 0;
  for (std::size_t i = begin; i < end; ++i) peak = std::max(peak, tally(c.gates()[i], p));
  finish(p);
  p.ancilla = peak;
  return p;
}

ResourceProfile resources(const Circuit& c) {
  ResourceProfile p = resources(c, 0, c.size());
  // Width of the expanded circuit: declared qubits plus the MCX ladder peak.
  p.total_qubits = c.qubit_count() + p.ancilla;
  if (const Register* anc = c.find_register("ancilla")) p.ancilla += anc->size;
  return p;
}

std::vector<std::pair<Stage, ResourceProfile>> stage_resources(const Circuit& c) {
  std::vector<std::pair<Stage, ResourceProfile>> out;
  for (const auto& s : c.stages()) {
    ResourceProfile p = resources(c, s.begin, s.end);
    p.ancilla += static_cast<std::int64_t>(s.ancillas);
    out.emplace_back(s, p);
  }
  return out;
}

// ---------------------------------------------------------------------------
// Constructions and transforms

Circuit decompose_mcx(unsigned k) {
  if (k == 0) throw InvalidDimensions("MCX needs at least one control");
  CircuitBuilder b;
  const Register controls = b.declare("control", k);
  const Register target = b.declare("target", 1);
  if (k == 1) {
    b.cnot(controls[0], target[0]);
    return b.build();
  }
  std::vector<Qubit> ladder;
  for (unsigned i = 0; i + 1 < k; ++i) ladder.push_back(b.alloc_ancilla());

  std::vector<Gate> compute;
  compute.push_back(Gate::toffoli(controls[0], controls[1], ladder[0]));
  for (unsigned i = 2; i < k; ++i) compute.push_back(Gate::toffoli(controls[i], ladder[i - 2], ladder[i - 1]));
  for (const auto& g : compute) b.add(g);
  b.cnot(ladder.back(), target[0]);
  for (auto it = compute.rbegin(); it != compute.rend(); ++it) b.add(*it);
  return b.build();
}

Circuit decompose_toffoli() {
  Circuit c(3, {Register{"control", 0, 2}, Register{"target", 2, 1}});
  constexpr Qubit a = 0, b = 1, t = 2;
  c.add(Gate::h(t));
  c.add(Gate::cnot(b, t));
  c.add(Gate::single(GateKind::Tdg, t));
  c.add(Gate::cnot(a, t));
  c.add(Gate::single(GateKind::T, t));
  c.add(Gate::cnot(b, t));
  c.add(Gate::single(GateKind::Tdg, t));
  c.add(Gate::cnot(a, t));
  c.add(Gate::single(GateKind::Tdg, b));
  c.add(Gate::single(GateKind::T, t));
  c.add(Gate::cnot(a, b));
  c.add(Gate::h(t));
  c.add(Gate::single(GateKind::Tdg, b));
  c.add(Gate::cnot(a, b));
  c.add(Gate::single(GateKind::T, a));
  c.add(Gate::single(GateKind::S, b));
  return c;
}

Circuit invert(const Circuit& c) {
  Circuit out(c.qubit_count(), c.registers());
  for (auto it = c.gates().rbegin(); it != c.gates().rend(); ++it) {
    Gate g = *it;
    switch (g.kind) {
      case GateKind::S: g.kind = GateKind::Sdg; break;
      case GateKind::Sdg: g.kind = GateKind::S; break;
      case GateKind::T: g.kind = GateKind::Tdg; break;
      case GateKind::Tdg: g.kind = GateKind::T; break;
      default: break;
    }
    out.add(std::move(g));
  }
  return out;
}

Circuit concat(const Circuit& a, const Circuit& b) {
  if (a.qubit_count() != b.qubit_count() || a.registers() != b.registers())
    throw RegisterMismatch("concat: circuits have different register layouts");
  Circuit out = a;
  const std::size_t offset = a.size();
  for (const auto& g : b.gates()) out.add(g);
  for (Stage s : b.stages()) {
    s.begin += offset;
    s.end += offset;
    out.add_stage(std::move(s));
  }
  return out;
}

Circuit remap(const Circuit& c, const std::vector<Qubit>& mapping, unsigned qubit_count,
              std::vector<Register> registers) {
  if (mapping.size() != c.qubit_count()) throw RegisterMismatch("remap: mapping has wrong size");
  Circuit out(qubit_count, std::move(registers));
  for (Gate g : c.gates()) {
    for (auto& q : g.controls) q = mapping[q];
    for (auto& q : g.targets) q = mapping[q];
    out.add(std::move(g));
  }
  for (const auto& s : c.stages()) out.add_stage(s);
  return out;
}

}  // namespace qgms::ir
