#pragma once

// Reversible circuit representation and resource accounting.
//
// Cost conventions follow the fixed Toffoli decomposition into 7 T, 6 CNOT,
// 2 H and 1 S gates, with Toffolis counted serially (T-depth 7 each). A
// k-control MCX expands to 2(k-1) Toffolis plus one CNOT on k-1 ancillas.

#include <cstddef>
#include <cstdint>
#include <map>
#include <memory>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace qgms::sim {
struct OracleSpec;
}

namespace qgms::ir {

using Qubit = std::uint32_t;

enum class GateKind { X, H, S, Sdg, T, Tdg, Z, CNOT, Toffoli, MCX, Oracle };

std::string_view mnemonic(GateKind kind);

struct Gate {
  GateKind kind = GateKind::X;
  // Control qubits; for Oracle blocks, the input qubits (bit j of the table
  // index is controls[j]).
  std::vector<Qubit> controls;
  // Target qubits; for Oracle blocks, the output qubits.
  std::vector<Qubit> targets;
  std::shared_ptr<const sim::OracleSpec> oracle;
  std::string oracle_name;

  static Gate x(Qubit t) { return {GateKind::X, {}, {t}, nullptr, {}}; }
  static Gate h(Qubit t) { return {GateKind::H, {}, {t}, nullptr, {}}; }
  static Gate z(Qubit t, std::vector<Qubit> controls = {}) {
    return {GateKind::Z, std::move(controls), {t}, nullptr, {}};
  }
  static Gate cnot(Qubit c, Qubit t) { return {GateKind::CNOT, {c}, {t}, nullptr, {}}; }
  static Gate toffoli(Qubit c0, Qubit c1, Qubit t) {
    return {GateKind::Toffoli, {c0, c1}, {t}, nullptr, {}};
  }
  static Gate mcx(std::vector<Qubit> controls, Qubit t) {
    return {GateKind::MCX, std::move(controls), {t}, nullptr, {}};
  }
  static Gate single(GateKind kind, Qubit t) { return {kind, {}, {t}, nullptr, {}}; }
  static Gate oracle_block(std::shared_ptr<const sim::OracleSpec> spec, std::vector<Qubit> inputs,
                           std::vector<Qubit> outputs);

  // True for gates that map basis states to basis states (possibly with a
  // sign): X, Z, CNOT, Toffoli, MCX and oracle blocks.
  bool is_classical() const noexcept;

  friend bool operator==(const Gate& a, const Gate& b) {
    return a.kind == b.kind && a.controls == b.controls && a.targets == b.targets &&
           a.oracle_name == b.oracle_name;
  }
};

struct Register {
  std::string name;
  Qubit start = 0;
  Qubit size = 0;

  Qubit operator[](std::size_t i) const { return start + static_cast<Qubit>(i); }
  friend bool operator==(const Register&, const Register&) = default;
};

// A contiguous run of gates belonging to one step of a construction, e.g. the
// pivot search for column 3.
struct Stage {
  std::string name;
  int column = -1;
  std::size_t begin = 0;
  std::size_t end = 0;
  std::size_t ancillas = 0;
};

class Circuit {
 public:
  Circuit() = default;
  // Registers must be disjoint and together cover [0, qubit_count).
  Circuit(unsigned qubit_count, std::vector<Register> registers);

  unsigned qubit_count() const noexcept { return qubit_count_; }
  const std::vector<Register>& registers() const noexcept { return registers_; }
  const std::vector<Gate>& gates() const noexcept { return gates_; }
  const std::vector<Stage>& stages() const noexcept { return stages_; }
  std::size_t size() const noexcept { return gates_.size(); }
  bool empty() const noexcept { return gates_.empty(); }

  // nullptr-free lookup; throws RegisterMismatch when absent.
  const Register& reg(std::string_view name) const;
  const Register* find_register(std::string_view name) const;

  // Validates indices (< qubit_count, controls and targets distinct).
  void add(Gate g);
  void add_stage(Stage s);

 private:
  unsigned qubit_count_ = 0;
  std::vector<Register> registers_;
  std::vector<Gate> gates_;
  std::vector<Stage> stages_;
};

// Declares registers, hands out ancillas (always the last register) and
// records stage boundaries.
class CircuitBuilder {
 public:
  // Returns the register just declared. All named registers must be declared
  // before the first ancilla is allocated.
  Register declare(std::string name, Qubit size);
  Qubit alloc_ancilla();
  std::size_t ancillas() const noexcept { return ancillas_; }
  const std::vector<Gate>& gates() const noexcept { return gates_; }

  void begin_stage(std::string name, int column = -1);
  void end_stage();

  void add(Gate g) { gates_.push_back(std::move(g)); }
  void x(Qubit t) { add(Gate::x(t)); }
  void h(Qubit t) { add(Gate::h(t)); }
  void cnot(Qubit c, Qubit t) { add(Gate::cnot(c, t)); }
  void toffoli(Qubit c0, Qubit c1, Qubit t) { add(Gate::toffoli(c0, c1, t)); }
  // CNOT, Toffoli or MCX depending on the number of controls.
  void controlled_x(const std::vector<Qubit>& controls, Qubit t);
  // X on `t` conditioned on every control being 1 and every negated control
  // being 0 (negation by X conjugation).
  void controlled_x(const std::vector<Qubit>& controls, const std::vector<Qubit>& negated, Qubit t);
  void append(const Circuit& c);

  Circuit build() const;

 private:
  std::vector<Register> registers_;
  Qubit declared_ = 0;
  std::size_t ancillas_ = 0;
  std::vector<Gate> gates_;
  std::vector<Stage> stages_;
  std::optional<Stage> open_stage_;
  std::size_t stage_ancilla_mark_ = 0;
};

struct ResourceProfile {
  // Toffoli/MCX expanded.
  std::int64_t cnot = 0;
  std::int64_t toffoli = 0;
  std::int64_t t_depth = 0;
  std::int64_t ancilla = 0;
  std::int64_t total_qubits = 0;
  // As written in the circuit, before expansion.
  std::int64_t cnot_raw = 0;
  std::int64_t toffoli_raw = 0;
  std::int64_t mcx_raw = 0;
  std::int64_t oracle_calls = 0;

  friend bool operator==(const ResourceProfile&, const ResourceProfile&) = default;
};

// Gate counts are additive under concatenation. `ancilla` is the size of the
// "ancilla" register plus the peak (not the sum) of MCX-decomposition
// ancillas, since a ladder's ancillas are clean again after each MCX; under
// concatenation of circuits sharing a layout it therefore combines as a max.
ResourceProfile resources(const Circuit& c);
// Counts for gates [begin, end) only; `ancilla` is the MCX peak within the
// range and total_qubits is left 0.
ResourceProfile resources(const Circuit& c, std::size_t begin, std::size_t end);
// Per-stage counts; the stage's ancilla field is the number of ancillas the
// builder allocated inside the stage.
std::vector<std::pair<Stage, ResourceProfile>> stage_resources(const Circuit& c);

// k controls on qubits 0..k-1, target k, ancillas k+1..2k-1. Compute ladder of
// k-1 Toffolis, one CNOT onto the target, uncompute ladder.
Circuit decompose_mcx(unsigned k);

// Toffoli on (c0=0, c1=1, t=2) written with H, S, T, T-dagger and CNOT.
Circuit decompose_toffoli();

// Reverses gate order and inverts each gate (S <-> Sdg, T <-> Tdg; all other
// kinds are self-inverse).
Circuit invert(const Circuit& c);

// Throws RegisterMismatch unless both circuits have identical layouts.
Circuit concat(const Circuit& a, const Circuit& b);

// Re-indexes every qubit q of `c` to mapping[q] inside a circuit of
// `qubit_count` qubits with the given registers.
Circuit remap(const Circuit& c, const std::vector<Qubit>& mapping, unsigned qubit_count,
              std::vector<Register> registers);

// Line-oriented export: "QUBITS n", "REG name a..b" header lines, then one
// "GATE targets ; controls" line per gate. Oracle blocks are written as
// "ORACLE:name outputs ; inputs".
std::string to_text(const Circuit& c);

// Oracle tables cannot be serialised; blocks are re-attached by name from
// `oracles`. Names missing from the map stay unresolved.
Circuit from_text(std::string_view text,
                  const std::map<std::string, std::shared_ptr<const sim::OracleSpec>>& oracles = {});

}  // namespace qgms::ir
