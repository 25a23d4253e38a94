#pragma once

// Reversible GF(2) elimination circuits.
//
// Qubit layout: the matrix register "data" is row-major, qubit i*cols + j
// holds a[i][j]; for augmented systems the b column sits at i*(n+1) + n.
// Output registers follow the data register and ancillas come last. Every
// conditional row operation gets a fresh ancilla that is never reset, so the
// ancilla register ends up holding the control history of the elimination.

#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "qgms/circuit.hpp"

namespace qgms::synth {

enum class Kind { RowEchelon, Qge, Qgje, Rref, Uqge };

std::string_view name(Kind kind);
std::optional<Kind> parse_kind(std::string_view text);

struct SynthKind {
  Kind kind = Kind::Qge;
  unsigned m = 0;  // rows (for Qge/Qgje: n)
  unsigned n = 0;  // columns of the coefficient block
  unsigned l = 0;  // rows of Y for Uqge

  static SynthKind row_echelon(unsigned m, unsigned n) { return {Kind::RowEchelon, m, n, 0}; }
  static SynthKind qge(unsigned n) { return {Kind::Qge, n, n, 0}; }
  static SynthKind qgje(unsigned n) { return {Kind::Qgje, n, n, 0}; }
  static SynthKind rref(unsigned m, unsigned n) { return {Kind::Rref, m, n, 0}; }
  static SynthKind uqge(unsigned n, unsigned l) { return {Kind::Uqge, l, n, l}; }
};

// Forward pass of column-by-column elimination with the pivot on the
// diagonal, for j < min(m, n). Column j contributes a "pivot" stage (for each
// lower row q: copy a[j][j] to an ancilla, negate it, and XOR row q into row
// j under it) and an "eliminate" stage (for each lower row k: copy a[k][j],
// XOR row j into row k under it, clear a[k][j]).
ir::Circuit build_row_echelon(unsigned m, unsigned n);

// Forward pass on the n x (n+1) augmented matrix followed by a
// "back_substitution" stage; the b column ends up holding x. n >= 2.
ir::Circuit build_qge(unsigned n);

// Same pivot stages, but each column is cleared in every other row; no back
// substitution. n >= 2.
ir::Circuit build_qgje(unsigned n);

// In-place reduced row echelon form for any m x n basis input. For row i the
// pivot search walks columns c >= i under the flag "no pivot yet in row i";
// the pivot flag for (i, c) then controls clearing column c in every other
// row.
ir::Circuit build_rref(unsigned m, unsigned n);

// |Y>|0>|0> -> |Y>|s>|flag> for an l x n matrix Y: s is the unique nonzero
// kernel vector when rank Y = n-1, otherwise s = 0 and flag = 1. Registers
// "y", "s", "flag"; the internal RREF is uncomputed, so the ancillas return
// to 0 on every basis input.
ir::Circuit build_uqge_solution(unsigned n, unsigned l);

// Throws InvalidDimensions on unsupported dimensions.
ir::Circuit build(const SynthKind& kind);

// Expected gate counts of one stage, in raw (unexpanded) gates.
struct StageFormula {
  std::string name;
  int column = -1;
  std::int64_t cnot = 0;
  std::int64_t toffoli = 0;
  std::int64_t ancilla = 0;
};

struct Prediction {
  // Aggregate closed form where one is published (Qge, Qgje).
  std::optional<ir::ResourceProfile> closed_form;
  // Sum of the per-stage formulas, expanded with the same conventions as
  // ir::resources.
  ir::ResourceProfile stage_sum;
  // Per-stage breakdown (Qge, Qgje, RowEchelon).
  std::vector<StageFormula> stages;
};

Prediction predicted_resources(const SynthKind& kind);

// Closed forms, as functions of n. Rounded down where fractional terms would
// otherwise appear (all are integers for integer n).
std::int64_t qge_closed_cnot(std::int64_t n);
std::int64_t qge_closed_t_depth(std::int64_t n);
std::int64_t qge_closed_ancilla(std::int64_t n);
std::int64_t qgje_closed_cnot(std::int64_t n);
std::int64_t qgje_closed_t_depth(std::int64_t n);
std::int64_t qgje_closed_ancilla(std::int64_t n);

}  // namespace qgms::synth
