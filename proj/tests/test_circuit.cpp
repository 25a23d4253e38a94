#include "doctest.h"
#include "qgms/circuit.hpp"
#include "qgms/error.hpp"
#include "qgms/sparse_state.hpp"
#include "qgms/statevector.hpp"

using namespace qgms;
using namespace qgms::ir;

namespace {

Circuit single_gate(unsigned qubits, Gate g) {
  Circuit c(qubits, {});
  c.add(std::move(g));
  return c;
}

}  // namespace

TEST_CASE("decompose_mcx gate and ancilla counts") {
  const auto one = resources(decompose_mcx(1));
  CHECK(one.cnot_raw == 1);
  CHECK(one.toffoli == 0);
  CHECK(one.ancilla == 0);

  const Circuit three = decompose_mcx(3);
  const auto p = resources(three);
  CHECK(p.toffoli_raw == 4);
  CHECK(p.cnot_raw == 1);
  CHECK(p.ancilla == 2);
  CHECK(three.reg("ancilla").size == 2);
  CHECK_THROWS_AS(decompose_mcx(0), InvalidDimensions);
}

TEST_CASE("decompose_mcx matches the MCX truth table and cleans its ancillas") {
  for (unsigned k = 1; k <= 5; ++k) {
    const Circuit c = decompose_mcx(k);
    const Register ctrl = c.reg("control"), tgt = c.reg("target"), anc = c.reg("ancilla");
    for (std::uint64_t in = 0; in < (std::uint64_t{1} << (k + 1)); ++in) {
      sim::BasisState s(c.qubit_count());
      s.write(ctrl, in & ((std::uint64_t{1} << k) - 1));
      s.write(tgt, in >> k);
      sim::run_in_place(c, s);
      const bool all = (in & ((std::uint64_t{1} << k) - 1)) == (std::uint64_t{1} << k) - 1;
      CHECK(s.read(tgt) == ((in >> k) ^ (all ? 1u : 0u)));
      CHECK(s.read(ctrl) == (in & ((std::uint64_t{1} << k) - 1)));
      CHECK(s.is_clear(anc));
    }
  }
}

TEST_CASE("resource conventions") {
  const auto t = resources(single_gate(3, Gate::toffoli(0, 1, 2)));
  CHECK(t.cnot == 6);
  CHECK(t.toffoli == 1);
  CHECK(t.t_depth == 7);

  CHECK(resources(Circuit()) == ResourceProfile{});
  CircuitBuilder empty;
  const auto e = resources(empty.build());
  CHECK(e.cnot == 0);
  CHECK(e.toffoli == 0);
  CHECK(e.t_depth == 0);
  CHECK(e.ancilla == 0);

  const auto m = resources(single_gate(4, Gate::mcx({0, 1, 2}, 3)));
  CHECK(m.toffoli == 4);
  CHECK(m.cnot == 25);
  CHECK(m.t_depth == 28);
  CHECK(m.ancilla == 2);
  const auto d = resources(decompose_mcx(3));
  CHECK(d.cnot == m.cnot);
  CHECK(d.toffoli == m.toffoli);
  CHECK(d.t_depth == m.t_depth);
}

TEST_CASE("resources are additive under concatenation with max ancilla") {
  CircuitBuilder b;
  const Register q = b.declare("q", 6);
  const Circuit layout = b.build();
  Circuit a(layout.qubit_count(), layout.registers());
  a.add(Gate::toffoli(q[0], q[1], q[2]));
  a.add(Gate::mcx({q[0], q[1], q[2], q[3]}, q[4]));
  Circuit c(layout.qubit_count(), layout.registers());
  c.add(Gate::cnot(q[0], q[5]));
  c.add(Gate::mcx({q[0], q[1], q[2]}, q[5]));
  const auto ra = resources(a), rc = resources(c), rs = resources(concat(a, c));
  CHECK(rs.cnot == ra.cnot + rc.cnot);
  CHECK(rs.toffoli == ra.toffoli + rc.toffoli);
  CHECK(rs.t_depth == ra.t_depth + rc.t_depth);
  CHECK(rs.ancilla == std::max(ra.ancilla, rc.ancilla));
  CHECK(ra.ancilla == 3);

  CircuitBuilder other;
  other.declare("r", 6);
  CHECK_THROWS_AS(concat(a, other.build()), RegisterMismatch);
}

TEST_CASE("Toffoli decomposition equals the Toffoli gate") {
  const Circuit dec = decompose_toffoli();
  const auto p = resources(dec);
  CHECK(p.cnot_raw == 6);
  std::int64_t t_gates = 0;
  for (const auto& g : dec.gates()) t_gates += g.kind == GateKind::T || g.kind == GateKind::Tdg;
  CHECK(t_gates == 7);
  for (std::uint64_t in = 0; in < 8; ++in) {
    const auto out = sim::run(dec, sim::StateVector::basis(3, in));
    const std::uint64_t expect = in ^ ((in & 3) == 3 ? 4 : 0);
    for (std::uint64_t j = 0; j < 8; ++j) CHECK(std::abs(out[j] - (j == expect ? 1.0 : 0.0)) < 1e-12);
  }
}

TEST_CASE("invert") {
  CHECK(invert(Circuit()).empty());
  const Circuit cx = single_gate(2, Gate::cnot(0, 1));
  CHECK(invert(cx).gates() == cx.gates());

  Rng rng(5);
  Circuit c(5, {});
  const GateKind singles[] = {GateKind::X, GateKind::H, GateKind::S, GateKind::Sdg, GateKind::T, GateKind::Tdg, GateKind::Z};
  for (int i = 0; i < 20; ++i) {
    const auto pick = uniform_below(rng, 10);
    const Qubit a = static_cast<Qubit>(uniform_below(rng, 5));
    const Qubit b = (a + 1 + static_cast<Qubit>(uniform_below(rng, 4))) % 5;
    const Qubit t = (b + 1) % 5 == a ? (b + 2) % 5 : (b + 1) % 5;
    if (pick < 7) c.add(Gate::single(singles[pick], a));
    else if (pick == 7) c.add(Gate::cnot(a, b));
    else if (pick == 8) c.add(Gate::toffoli(a, b, t));
    else c.add(Gate::z(a, {b}));
  }
  CHECK(invert(invert(c)).gates() == c.gates());
  for (int k = 0; k < 50; ++k) {
    const auto psi = sim::random_state(5, rng);
    const auto back = sim::run(invert(c), sim::run(c, psi));
    CHECK(sim::distance_up_to_phase(psi, back) < 1e-10);
  }
}

TEST_CASE("gate validation") {
  Circuit c(3, {});
  CHECK_THROWS_AS(c.add(Gate::cnot(0, 0)), InvalidDimensions);
  CHECK_THROWS_AS(c.add(Gate::cnot(0, 3)), InvalidDimensions);
  CHECK_THROWS_AS(c.add(Gate::mcx({}, 1)), InvalidDimensions);
  CHECK_THROWS_AS(Circuit(4, {Register{"a", 0, 2}, Register{"b", 1, 3}}), RegisterMismatch);
  CHECK_THROWS_AS(Circuit(4, {Register{"a", 0, 2}}), RegisterMismatch);
  CHECK_THROWS_AS(c.reg("nope"), RegisterMismatch);
}

TEST_CASE("builder registers and stages") {
  CircuitBuilder b;
  const Register d = b.declare("data", 3);
  b.begin_stage("first", 0);
  const Qubit a0 = b.alloc_ancilla();
  b.cnot(d[0], a0);
  b.end_stage();
  b.begin_stage("second", 1);
  b.controlled_x({d[0], d[1]}, {d[2]}, a0);
  b.end_stage();
  CHECK_THROWS_AS(b.declare("late", 1), RegisterMismatch);
  const Circuit c = b.build();
  CHECK(c.qubit_count() == 4);
  CHECK(c.reg("ancilla").start == 3);
  REQUIRE(c.stages().size() == 2);
  CHECK(c.stages()[0].ancillas == 1);
  CHECK(c.stages()[1].ancillas == 0);
  const auto sr = stage_resources(c);
  CHECK(sr[0].second.cnot_raw == 1);
  // Negated control: X, MCX with 3 controls, X.
  CHECK(sr[1].second.mcx_raw == 1);
  for (std::uint64_t in = 0; in < 8; ++in) {
    sim::BasisState s(4);
    s.write(d, in);
    sim::run_in_place(c, s);
    const bool fire = (in & 1) ^ ((in & 3) == 3 && !(in & 4));
    CHECK(s.get(3) == fire);
    CHECK(s.read(d) == in);
  }
}

TEST_CASE("circuit text export") {
  const Circuit c = decompose_mcx(3);
  const std::string expect =
      "QUBITS 6\n"
      "REG control 0..2\n"
      "REG target 3..3\n"
      "REG ancilla 4..5\n"
      "TOFFOLI 4 ; 0,1\n"
      "TOFFOLI 5 ; 2,4\n"
      "CNOT 3 ; 5\n"
      "TOFFOLI 5 ; 2,4\n"
      "TOFFOLI 4 ; 0,1\n";
  CHECK(to_text(c) == expect);
  const Circuit back = from_text(expect);
  CHECK(back.gates() == c.gates());
  CHECK(back.registers() == c.registers());
  CHECK(to_text(from_text(to_text(decompose_toffoli()))) == to_text(decompose_toffoli()));

  CircuitBuilder b;
  b.declare("x", 2);
  CHECK(to_text(b.build()) == "QUBITS 2\nREG x 0..1\nREG ancilla 2..2 empty\n");
  CHECK_THROWS_AS(from_text("REG x 0..1\n"), InvalidDimensions);
  CHECK_THROWS_AS(from_text("QUBITS 2\nFOO 1 ; 0\n"), InvalidDimensions);
}

TEST_CASE("remap moves every gate") {
  const Circuit c = single_gate(2, Gate::cnot(0, 1));
  const Circuit r = remap(c, {3, 1}, 4, {});
  REQUIRE(r.size() == 1);
  CHECK(r.gates()[0].controls == std::vector<Qubit>{3});
  CHECK(r.gates()[0].targets == std::vector<Qubit>{1});
  CHECK_THROWS_AS(remap(c, {0}, 4, {}), RegisterMismatch);
}
