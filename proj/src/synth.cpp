#include "qgms/synth.hpp"

#include <algorithm>
#include <limits>

#include "qgms/error.hpp"

namespace qgms::synth {

using ir::CircuitBuilder;
using ir::Qubit;
using ir::Register;

namespace {

constexpr Qubit kNone = std::numeric_limits<Qubit>::max();

struct Matrix {
  Register reg;
  unsigned cols;
  Qubit at(unsigned i, unsigned j) const { return reg[std::size_t{i} * cols + j]; }
};

// Forward pass shared by row echelon, QGE and QGJE. `width` is the number of
// columns the row operations touch (n, or n+1 with the b column); `pivots` is
// how many columns get a pivot; `full` clears above the pivot too.
void forward_pass(CircuitBuilder& b, const Matrix& a, unsigned rows, unsigned pivots, unsigned width,
                  bool full) {
  for (unsigned i = 0; i < pivots; ++i) {
    b.begin_stage("pivot", static_cast<int>(i));
    for (unsigned q = i + 1; q < rows; ++q) {
      const Qubit anc = b.alloc_ancilla();
      b.cnot(a.at(i, i), anc);
      b.x(anc);
      for (unsigned j = i; j < width; ++j) b.toffoli(anc, a.at(q, j), a.at(i, j));
      b.x(anc);
    }
    b.begin_stage("eliminate", static_cast<int>(i));
    for (unsigned k = 0; k < rows; ++k) {
      if (k == i || (!full && k < i)) continue;
      const Qubit anc = b.alloc_ancilla();
      b.cnot(a.at(k, i), anc);
      for (unsigned j = i + 1; j < width; ++j) b.toffoli(anc, a.at(i, j), a.at(k, j));
      b.cnot(anc, a.at(k, i));
    }
    b.end_stage();
  }
}

// Emits the RREF construction on `a` and returns the pivot flag qubit for
// (row i, column c), or kNone where no flag exists.
std::vector<std::vector<Qubit>> emit_rref(CircuitBuilder& b, const Matrix& a, unsigned m, unsigned n) {
  std::vector<std::vector<Qubit>> flag(m, std::vector<Qubit>(n, kNone));
  const unsigned top = std::min(m, n);
  for (unsigned i = 0; i < top; ++i) {
    // z: "row i has no pivot in columns i..c-1"; kNone stands for true.
    Qubit z = kNone;
    // anc := z AND NOT a[i][c]
    auto copy_not = [&](unsigned c) {
      const Qubit anc = b.alloc_ancilla();
      if (z == kNone) {
        b.cnot(a.at(i, c), anc);
        b.x(anc);
      } else {
        b.x(a.at(i, c));
        b.toffoli(z, a.at(i, c), anc);
        b.x(a.at(i, c));
      }
      return anc;
    };
    for (unsigned c = i; c < n; ++c) {
      b.begin_stage("search", static_cast<int>(c));
      for (unsigned q = i + 1; q < m; ++q) {
        const Qubit anc = copy_not(c);
        for (unsigned j = c; j < n; ++j) b.toffoli(anc, a.at(q, j), a.at(i, j));
      }
      b.begin_stage("eliminate", static_cast<int>(c));
      const Qubit p = b.alloc_ancilla();
      if (z == kNone)
        b.cnot(a.at(i, c), p);
      else
        b.toffoli(z, a.at(i, c), p);
      flag[i][c] = p;
      for (unsigned k = 0; k < m; ++k) {
        if (k == i) continue;
        const Qubit e = b.alloc_ancilla();
        b.toffoli(p, a.at(k, c), e);
        for (unsigned j = c + 1; j < n; ++j) b.toffoli(e, a.at(i, j), a.at(k, j));
        b.cnot(e, a.at(k, c));
      }
      if (c + 1 < n) z = copy_not(c);
      b.end_stage();
    }
  }
  return flag;
}

void require(bool ok, const std::string& what) {
  if (!ok) throw InvalidDimensions(what);
}

}  // namespace

std::string_view name(Kind kind) {
  switch (kind) {
    case Kind::RowEchelon: return "row-echelon";
    case Kind::Qge: return "qge";
    case Kind::Qgje: return "qgje";
    case Kind::Rref: return "rref";
    case Kind::Uqge: return "uqge";
  }
  return "?";
}

std::optional<Kind> parse_kind(std::string_view text) {
  for (Kind k : {Kind::RowEchelon, Kind::Qge, Kind::Qgje, Kind::Rref, Kind::Uqge})
    if (name(k) == text) return k;
  return std::nullopt;
}

ir::Circuit build_row_echelon(unsigned m, unsigned n) {
  require(m >= 1 && n >= 1, "row echelon needs m, n >= 1");
  CircuitBuilder b;
  const Matrix a{b.declare("data", m * n), n};
  forward_pass(b, a, m, std::min(m, n), n, false);
  return b.build();
}

ir::Circuit build_qge(unsigned n) {
  require(n >= 2, "QGE needs n >= 2");
  CircuitBuilder b;
  const Matrix a{b.declare("data", n * (n + 1)), n + 1};
  forward_pass(b, a, n, n, n + 1, false);
  b.begin_stage("back_substitution");
  for (unsigned j = n - 1; j >= 1; --j)
    for (unsigned i = j; i-- > 0;) b.toffoli(a.at(i, j), a.at(j, n), a.at(i, n));
  b.end_stage();
  return b.build();
}

ir::Circuit build_qgje(unsigned n) {
  require(n >= 2, "QGJE needs n >= 2");
  CircuitBuilder b;
  const Matrix a{b.declare("data", n * (n + 1)), n + 1};
  forward_pass(b, a, n, n, n + 1, true);
  return b.build();
}

ir::Circuit build_rref(unsigned m, unsigned n) {
  require(m >= 1 && n >= 1, "RREF needs m, n >= 1");
  CircuitBuilder b;
  const Matrix a{b.declare("data", m * n), n};
  emit_rref(b, a, m, n);
  return b.build();
}

ir::Circuit build_uqge_solution(unsigned n, unsigned l) {
  require(n >= 2 && l >= 1, "solution circuit needs n >= 2, l >= 1");
  CircuitBuilder b;
  const Matrix y{b.declare("y", l * n), n};
  const Register s = b.declare("s", n);
  const Register flag = b.declare("flag", 1);

  b.begin_stage("rref");
  const std::size_t rref_begin = b.gates().size();
  const auto pivot = emit_rref(b, y, l, n);
  const std::size_t rref_end = b.gates().size();

  b.begin_stage("copy");
  const std::size_t copy_begin = b.gates().size();
  std::vector<Qubit> pc(n), t(n);
  for (unsigned c = 0; c < n; ++c) {
    pc[c] = b.alloc_ancilla();
    for (unsigned i = 0; i < l; ++i)
      if (pivot[i][c] != kNone) b.cnot(pivot[i][c], pc[c]);
  }
  for (unsigned f = 0; f < n; ++f) {
    t[f] = b.alloc_ancilla();
    std::vector<Qubit> others;
    for (unsigned g = 0; g < n; ++g)
      if (g != f) others.push_back(pc[g]);
    b.controlled_x(others, {pc[f]}, t[f]);
  }
  const std::size_t copy_end = b.gates().size();

  // Free column f: s_f = 1 and s_c = a[r][f] for the row r pivoting in c.
  for (unsigned f = 0; f < n; ++f) {
    b.cnot(t[f], s[f]);
    for (unsigned c = 0; c < n; ++c) {
      if (c == f) continue;
      for (unsigned r = 0; r < l; ++r)
        if (pivot[r][c] != kNone && f > c) b.add(ir::Gate::mcx({t[f], pivot[r][c], y.at(r, f)}, s[c]));
    }
  }
  b.x(flag[0]);
  for (unsigned f = 0; f < n; ++f) b.cnot(t[f], flag[0]);

  b.begin_stage("uncompute");
  const std::vector<ir::Gate> gates = b.gates();
  for (std::size_t g = copy_end; g-- > copy_begin;) b.add(gates[g]);
  for (std::size_t g = rref_end; g-- > rref_begin;) b.add(gates[g]);
  b.end_stage();
  return b.build();
}

ir::Circuit build(const SynthKind& k) {
  switch (k.kind) {
    case Kind::RowEchelon: return build_row_echelon(k.m, k.n);
    case Kind::Qge: return build_qge(k.n);
    case Kind::Qgje: return build_qgje(k.n);
    case Kind::Rref: return build_rref(k.m, k.n);
    case Kind::Uqge: return build_uqge_solution(k.n, k.l);
  }
  throw InvalidDimensions("unknown circuit kind");
}

// ---------------------------------------------------------------------------
// Predictions

std::int64_t qge_closed_cnot(std::int64_t n) { return (8 * n * n * n - 15 * n * n - 23 * n) / 2; }
std::int64_t qge_closed_t_depth(std::int64_t n) { return 7 * n * (n - 1) * (2 * n + 5) / 3; }
std::int64_t qge_closed_ancilla(std::int64_t n) { return n * (n - 1); }
std::int64_t qgje_closed_cnot(std::int64_t n) { return (10 * n * n * n + 11 * n * n - 21 * n) / 2; }
std::int64_t qgje_closed_t_depth(std::int64_t n) { return 7 * n * (n - 1) * (5 * n + 8) / 6; }
std::int64_t qgje_closed_ancilla(std::int64_t n) { return 3 * n * (n - 1) / 2; }

namespace {

// Raw cost of a controlled X with k controls as the builder emits it.
struct XCost {
  std::int64_t cnot = 0, toffoli = 0, mcx_toffoli = 0, mcx_cnot = 0, ladder = 0;
};
XCost x_cost(std::int64_t k) {
  if (k == 1) return {1, 0, 0, 0, 0};
  if (k == 2) return {0, 1, 0, 0, 0};
  return {0, 0, 2 * (k - 1), 1, k - 1};
}

ir::ResourceProfile expand(std::int64_t cnot_raw, std::int64_t toffoli_raw, std::int64_t mcx_raw,
                           std::int64_t mcx_toffoli, std::int64_t mcx_cnot, std::int64_t ancilla,
                           std::int64_t data_qubits) {
  ir::ResourceProfile p;
  p.cnot_raw = cnot_raw;
  p.toffoli_raw = toffoli_raw;
  p.mcx_raw = mcx_raw;
  p.toffoli = toffoli_raw + mcx_toffoli;
  p.cnot = cnot_raw + mcx_cnot + 6 * p.toffoli;
  p.t_depth = 7 * p.toffoli;
  p.ancilla = ancilla;
  p.total_qubits = data_qubits + ancilla;
  return p;
}

Prediction forward_prediction(std::int64_t rows, std::int64_t pivots, std::int64_t width, bool full,
                              bool back_sub, std::int64_t data_qubits) {
  Prediction pr;
  std::int64_t cnot = 0, tof = 0, anc = 0;
  for (std::int64_t i = 0; i < pivots; ++i) {
    const std::int64_t lower = rows - 1 - i;
    const std::int64_t touched = full ? rows - 1 : lower;
    StageFormula piv{"pivot", static_cast<int>(i), lower, lower * (width - i), lower};
    StageFormula eli{"eliminate", static_cast<int>(i), 2 * touched, touched * (width - i - 1), touched};
    for (const auto& s : {piv, eli}) {
      cnot += s.cnot;
      tof += s.toffoli;
      anc += s.ancilla;
      pr.stages.push_back(s);
    }
  }
  if (back_sub) {
    StageFormula bs{"back_substitution", -1, 0, rows * (rows - 1) / 2, 0};
    tof += bs.toffoli;
    pr.stages.push_back(bs);
  }
  // Total ancillas: the builder adds an "ancilla" register; no MCX ladders.
  pr.stage_sum = expand(cnot, tof, 0, 0, 0, anc, data_qubits);
  return pr;
}

struct RrefCount {
  std::int64_t cnot = 0, toffoli = 0, ancilla = 0;
};

RrefCount rref_count(std::int64_t m, std::int64_t n) {
  RrefCount r;
  for (std::int64_t i = 0; i < std::min(m, n); ++i) {
    for (std::int64_t c = i; c < n; ++c) {
      const bool first = c == i;
      const std::int64_t lower = m - 1 - i;
      const std::int64_t width = n - c;
      // search
      r.cnot += first ? lower : 0;
      r.toffoli += (first ? 0 : lower) + lower * width;
      r.ancilla += lower;
      // pivot flag and elimination
      r.cnot += (first ? 1 : 0) + (m - 1);
      r.toffoli += (first ? 0 : 1) + (m - 1) * width;
      r.ancilla += 1 + (m - 1);
      if (c + 1 < n) {
        r.cnot += first ? 1 : 0;
        r.toffoli += first ? 0 : 1;
        r.ancilla += 1;
      }
    }
  }
  return r;
}

}  // namespace

Prediction predicted_resources(const SynthKind& k) {
  const std::int64_t m = k.m, n = k.n, l = k.l;
  switch (k.kind) {
    case Kind::RowEchelon:
      require(m >= 1 && n >= 1, "row echelon needs m, n >= 1");
      return forward_prediction(m, std::min(m, n), n, false, false, m * n);
    case Kind::Qge: {
      require(n >= 2, "QGE needs n >= 2");
      Prediction p = forward_prediction(n, n, n + 1, false, true, n * (n + 1));
      ir::ResourceProfile cf;
      cf.cnot = qge_closed_cnot(n);
      cf.t_depth = qge_closed_t_depth(n);
      cf.toffoli = cf.t_depth / 7;
      cf.ancilla = qge_closed_ancilla(n);
      cf.total_qubits = n * (n + 1) + cf.ancilla;
      p.closed_form = cf;
      return p;
    }
    case Kind::Qgje: {
      require(n >= 2, "QGJE needs n >= 2");
      Prediction p = forward_prediction(n, n, n + 1, true, false, n * (n + 1));
      ir::ResourceProfile cf;
      cf.cnot = qgje_closed_cnot(n);
      cf.t_depth = qgje_closed_t_depth(n);
      cf.toffoli = cf.t_depth / 7;
      cf.ancilla = qgje_closed_ancilla(n);
      cf.total_qubits = n * (n + 1) + cf.ancilla;
      p.closed_form = cf;
      return p;
    }
    case Kind::Rref: {
      require(m >= 1 && n >= 1, "RREF needs m, n >= 1");
      const RrefCount r = rref_count(m, n);
      Prediction p;
      p.stage_sum = expand(r.cnot, r.toffoli, 0, 0, 0, r.ancilla, m * n);
      return p;
    }
    case Kind::Uqge: {
      require(n >= 2 && l >= 1, "solution circuit needs n >= 2, l >= 1");
      const RrefCount r = rref_count(l, n);
      // Pivot-column parity: one CNOT per existing flag, computed and uncomputed.
      std::int64_t flags = 0;
      for (std::int64_t i = 0; i < std::min(l, n); ++i) flags += n - i;
      const XCost tc = x_cost(n);
      // Copy-out MCX count: pairs (c < f) with a flag for some row r.
      std::int64_t copies = 0;
      for (std::int64_t c = 0; c < n; ++c)
        for (std::int64_t row = 0; row < std::min(l, c + 1); ++row) copies += n - 1 - c;
      const std::int64_t cnot = 2 * r.cnot + 2 * flags + 2 * n * tc.cnot + n + n;
      const std::int64_t tof = 2 * r.toffoli + 2 * n * tc.toffoli;
      const std::int64_t mcx = 2 * n * (tc.ladder ? 1 : 0) + copies;
      const std::int64_t mcx_tof = 2 * n * tc.mcx_toffoli + copies * 4;
      const std::int64_t mcx_cnot = 2 * n * tc.mcx_cnot + copies;
      const std::int64_t ladder = copies ? std::max<std::int64_t>(tc.ladder, 2) : tc.ladder;
      Prediction p;
      p.stage_sum = expand(cnot, tof, mcx, mcx_tof, mcx_cnot, r.ancilla + 2 * n + ladder, l * n + n + 1);
      return p;
    }
  }
  throw InvalidDimensions("unknown circuit kind");
}

}  // namespace qgms::synth
