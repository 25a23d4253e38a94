#include "qgms/verify.hpp"

#include <bit>
#include <chrono>
#include <cmath>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <functional>
#include <map>
#include <set>
#include <sstream>
#include <unordered_map>

#include <unistd.h>

#include "qgms/amplify.hpp"
#include "qgms/counting.hpp"
#include "qgms/error.hpp"
#include "qgms/gf2.hpp"
#include "qgms/gms.hpp"
#include "qgms/simon.hpp"
#include "qgms/sparse_state.hpp"
#include "qgms/statevector.hpp"
#include "qgms/synth.hpp"

namespace qgms::verify {

using report::Json;
using gf2::BitMatrix;
using gf2::BitVector;

namespace {

constexpr std::size_t kMaxFailures = 20;

CheckResult timed(std::string id, std::string title, const std::function<void(CheckResult&)>& body) {
  CheckResult r;
  r.id = std::move(id);
  r.title = std::move(title);
  const auto start = std::chrono::steady_clock::now();
  try {
    body(r);
  } catch (const std::exception& e) {
    r.fail(std::string("exception: ") + e.what());
  }
  r.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  return r;
}

std::string matrix_str(const BitMatrix& a) {
  std::string s;
  for (std::size_t i = 0; i < a.rows(); ++i) {
    if (i) s += '/';
    s += a.row(i).to_string();
  }
  return s;
}

// All x with A x = b, by trying every x.
std::vector<std::uint64_t> brute_solutions(const BitMatrix& a, std::uint64_t b) {
  std::vector<std::uint64_t> out;
  for (std::uint64_t x = 0; x < (std::uint64_t{1} << a.cols()); ++x)
    if ((a * BitVector::from_uint(a.cols(), x)).to_uint() == b) out.push_back(x);
  return out;
}

BitMatrix random_matrix(Rng& rng, std::size_t rows, std::size_t cols) {
  BitMatrix a(rows, cols);
  for (std::size_t i = 0; i < rows; ++i)
    for (std::size_t j = 0; j < cols; ++j) a.set(i, j, rng() & 1);
  return a;
}

// Rank of the rows of a and b stacked.
std::size_t stacked_rank(const BitMatrix& a, const BitMatrix& b) {
  std::vector<BitVector> rows;
  for (std::size_t i = 0; i < a.rows(); ++i) rows.push_back(a.row(i));
  for (std::size_t i = 0; i < b.rows(); ++i) rows.push_back(b.row(i));
  return gf2::rank(BitMatrix::from_rows(rows));
}

}  // namespace

void CheckResult::fail(std::string message) {
  pass = false;
  if (failures.size() < kMaxFailures) failures.push_back(std::move(message));
}

bool SuiteResult::pass() const {
  for (const auto& c : checks)
    if (!c.pass) return false;
  return true;
}

CheckResult gf2_solve_exhaustive() {
  return timed("gf2.solve", "gaussian_eliminate and general_solution against exhaustive search", [](CheckResult& r) {
    std::int64_t systems = 0, invertible = 0;
    for (unsigned n = 1; n <= 3; ++n) {
      for (std::uint64_t packed = 0; packed < (std::uint64_t{1} << (n * n)); ++packed) {
        const BitMatrix a = BitMatrix::from_packed(n, n, packed);
        const bool inv = gf2::rank(a) == n;
        invertible += inv;
        for (std::uint64_t b = 0; b < (std::uint64_t{1} << n); ++b) {
          ++systems;
          const BitVector bv = BitVector::from_uint(n, b);
          const auto brute = brute_solutions(a, b);
          if (inv) {
            const auto x = gf2::gaussian_eliminate(a.augment(bv)).to_uint();
            if (brute.size() != 1 || brute[0] != x)
              r.fail("gaussian_eliminate A=" + matrix_str(a) + " b=" + std::to_string(b));
          } else {
            try {
              (void)gf2::gaussian_eliminate(a.augment(bv));
              r.fail("singular A=" + matrix_str(a) + " not rejected");
            } catch (const SingularMatrix&) {
            }
          }
          const auto gs = gf2::general_solution(a, bv);
          std::set<std::uint64_t> got;
          if (gs) {
            const std::size_t k = gs->basis.size();
            for (std::uint64_t mask = 0; mask < (std::uint64_t{1} << k); ++mask) {
              BitVector v = gs->particular;
              for (std::size_t i = 0; i < k; ++i)
                if (mask >> i & 1) v ^= gs->basis[i];
              got.insert(v.to_uint());
            }
          }
          if (got != std::set<std::uint64_t>(brute.begin(), brute.end()))
            r.fail("general_solution A=" + matrix_str(a) + " b=" + std::to_string(b));
        }
      }
    }
    r.details = Json{{"systems", systems}, {"invertible_matrices", invertible}};
  });
}

CheckResult gf2_rref_properties(std::uint64_t seed) {
  return timed("gf2.rref", "rref, rank, row_echelon and nullspace invariants on random matrices", [seed](CheckResult& r) {
    Rng rng(seed);
    int trials = 0;
    for (; trials < 300; ++trials) {
      const std::size_t rows = 1 + uniform_below(rng, 20), cols = 1 + uniform_below(rng, 20);
      const BitMatrix a = random_matrix(rng, rows, cols);
      const auto red = gf2::rref(a);
      const std::string tag = std::to_string(rows) + "x" + std::to_string(cols) + " trial " + std::to_string(trials);
      if (!gf2::is_rref(red.matrix)) r.fail("rref not reduced: " + tag);
      if (red.rank != red.pivot_cols.size() || red.rank != gf2::rank(a)) r.fail("rank mismatch: " + tag);
      if (!(gf2::rref(red.matrix).matrix == red.matrix)) r.fail("rref not idempotent: " + tag);
      if (stacked_rank(a, red.matrix) != red.rank) r.fail("row space changed: " + tag);
      const BitMatrix e = gf2::row_echelon(a);
      if (!gf2::is_row_echelon(e) || gf2::rank(e) != red.rank || stacked_rank(a, e) != red.rank)
        r.fail("row_echelon: " + tag);
      const auto null = gf2::nullspace_basis(a);
      if (null.size() != cols - red.rank) r.fail("nullity: " + tag);
      for (const auto& v : null)
        if (!(a * v).is_zero()) r.fail("nullspace vector not in kernel: " + tag);
      if (!null.empty() && gf2::rank(BitMatrix::from_rows(null)) != null.size()) r.fail("nullspace basis dependent: " + tag);
    }
    r.details = Json{{"trials", trials}, {"seed", seed}};
  });
}

CheckResult criterion_1_qge_qgje() {
  return timed("C1", "QGE and QGJE circuits solve every invertible 3x3 system", [](CheckResult& r) {
    constexpr unsigned n = 3;
    const ir::Circuit circuits[2] = {synth::build_qge(n), synth::build_qgje(n)};
    const char* names[2] = {"qge", "qgje"};
    std::int64_t invertible = 0, cases = 0, mismatches = 0;
    for (std::uint64_t packed = 0; packed < (1u << (n * n)); ++packed) {
      const BitMatrix a = BitMatrix::from_packed(n, n, packed);
      if (gf2::rank(a) != n) continue;
      ++invertible;
      for (std::uint64_t b = 0; b < (1u << n); ++b) {
        const BitVector bv = BitVector::from_uint(n, b);
        const BitMatrix aug = a.augment(bv);
        const std::uint64_t expect = gf2::gaussian_eliminate(aug).to_uint();
        for (int k = 0; k < 2; ++k) {
          ++cases;
          const auto& c = circuits[k];
          sim::BasisState s(c.qubit_count());
          s.write(c.reg("data"), aug.packed());
          sim::run_in_place(c, s);
          const BitMatrix out = BitMatrix::from_packed(n, n + 1, s.read(c.reg("data")));
          const BitVector x = out.column(n);
          const bool ok = x.to_uint() == expect && (a * x) == bv && s.sign() == 1 &&
                          (k == 0 || out.column_slice(0, n) == BitMatrix::identity(n));
          if (!ok) {
            ++mismatches;
            r.fail(std::string(names[k]) + " A=" + matrix_str(a) + " b=" + bv.to_string() + " got x=" + x.to_string());
          }
        }
      }
    }
    if (invertible != 168) r.fail("expected 168 invertible matrices, found " + std::to_string(invertible));
    r.details = Json{{"invertible", invertible}, {"cases", cases}, {"mismatches", mismatches}};
  });
}

CheckResult criterion_2_rref() {
  return timed("C2", "RREF circuit matches classical rref on all 3x3 inputs", [](CheckResult& r) {
    constexpr unsigned n = 3;
    const ir::Circuit c = synth::build_rref(n, n);
    std::int64_t mismatches = 0;
    for (std::uint64_t packed = 0; packed < (1u << (n * n)); ++packed) {
      const BitMatrix a = BitMatrix::from_packed(n, n, packed);
      sim::BasisState s(c.qubit_count());
      s.write(c.reg("data"), packed);
      sim::run_in_place(c, s);
      const BitMatrix out = BitMatrix::from_packed(n, n, s.read(c.reg("data")));
      if (!gf2::is_rref(out) || !(out == gf2::rref(a).matrix) || s.sign() != 1) {
        ++mismatches;
        r.fail("A=" + matrix_str(a) + " got " + matrix_str(out));
      }
    }
    r.details = Json{{"inputs", 1u << (n * n)}, {"qubits", c.qubit_count()}, {"mismatches", mismatches}};
  });
}

CheckResult criterion_3_stage_counts() {
  return timed("C3", "per-stage gate counts for 2 <= n <= 8", [](CheckResult& r) {
    Json table = Json::array();
    for (std::int64_t n = 2; n <= 8; ++n) {
      for (const bool jordan : {false, true}) {
        const char* kname = jordan ? "qgje" : "qge";
        // Expected stages, row i = 1..n.
        std::vector<synth::StageFormula> expect;
        for (std::int64_t i = 1; i <= n; ++i) {
          expect.push_back({"pivot", static_cast<int>(i - 1), n - i, (n - i) * (n - i + 2), n - i});
          if (jordan)
            expect.push_back({"eliminate", static_cast<int>(i - 1), 2 * (n - 1), (n - 1) * (n - i + 1), n - 1});
          else
            expect.push_back({"eliminate", static_cast<int>(i - 1), 2 * (n - i), (n - i) * (n - i + 1), n - i});
        }
        if (!jordan) expect.push_back({"back_substitution", -1, 0, n * (n - 1) / 2, 0});

        const ir::Circuit c = jordan ? synth::build_qgje(static_cast<unsigned>(n)) : synth::build_qge(static_cast<unsigned>(n));
        const auto got = ir::stage_resources(c);
        const std::string tag = std::string(kname) + " n=" + std::to_string(n);
        if (got.size() != expect.size()) {
          r.fail(tag + ": " + std::to_string(got.size()) + " stages, expected " + std::to_string(expect.size()));
          continue;
        }
        std::int64_t cnot = 0, tof = 0, anc = 0;
        for (std::size_t k = 0; k < got.size(); ++k) {
          const auto& [stage, prof] = got[k];
          const auto& e = expect[k];
          cnot += e.cnot;
          tof += e.toffoli;
          anc += e.ancilla;
          if (stage.name != e.name || stage.column != e.column || prof.cnot_raw != e.cnot ||
              prof.toffoli_raw != e.toffoli || prof.mcx_raw != 0 || static_cast<std::int64_t>(stage.ancillas) != e.ancilla)
            r.fail(tag + " stage " + e.name + " " + std::to_string(e.column) + ": cnot " + std::to_string(prof.cnot_raw) +
                   "/" + std::to_string(e.cnot) + " toffoli " + std::to_string(prof.toffoli_raw) + "/" +
                   std::to_string(e.toffoli) + " ancilla " + std::to_string(stage.ancillas) + "/" + std::to_string(e.ancilla));
        }
        const auto total = ir::resources(c);
        const std::int64_t sum_cnot = cnot + 6 * tof, sum_tdepth = 7 * tof;
        if (total.cnot != sum_cnot || total.t_depth != sum_tdepth || total.ancilla != anc)
          r.fail(tag + ": totals differ from stage sum");
        const std::int64_t cf_cnot = jordan ? synth::qgje_closed_cnot(n) : synth::qge_closed_cnot(n);
        const std::int64_t cf_tdepth = jordan ? synth::qgje_closed_t_depth(n) : synth::qge_closed_t_depth(n);
        const std::int64_t cf_anc = jordan ? synth::qgje_closed_ancilla(n) : synth::qge_closed_ancilla(n);
        table.push_back(Json{{"kind", kname},
                             {"n", n},
                             {"stage_sum", Json{{"cnot", sum_cnot}, {"t_depth", sum_tdepth}, {"ancilla", anc}}},
                             {"closed_form", Json{{"cnot", cf_cnot}, {"t_depth", cf_tdepth}, {"ancilla", cf_anc}}},
                             {"delta", Json{{"cnot", sum_cnot - cf_cnot},
                                            {"t_depth", sum_tdepth - cf_tdepth},
                                            {"ancilla", anc - cf_anc}}}});
      }
    }
    r.details = Json{{"reconciliation", table}};
  });
}

CheckResult criterion_4_rank_count() {
  return timed("C4", "rank n-1 matrices over s-perp: enumeration equals closed form", [](CheckResult& r) {
    const std::map<unsigned, std::uint64_t> regression{{2, 3}, {3, 42}, {4, 2520}};
    Json rows = Json::array();
    for (unsigned n = 2; n <= 5; ++n) {
      const auto c = gms::count_rank_n_minus_1(n, gms::CountMode::Brute);
      rows.push_back(report::to_json(c));
      if (!c.agree) r.fail("n=" + std::to_string(n) + ": brute " + std::to_string(*c.brute) + " formula " + c.formula.str());
      if (auto it = regression.find(n); it != regression.end() && *c.brute != it->second)
        r.fail("n=" + std::to_string(n) + ": expected " + std::to_string(it->second));
    }
    for (unsigned n = 2; n <= 12; ++n) {
      const auto c = gms::count_rank_n_minus_1(n, gms::CountMode::Formula);
      if (!c.below_bound) r.fail("n=" + std::to_string(n) + ": count not below 2^{n(n-1)}");
    }
    r.details = Json{{"table", rows}};
  });
}

CheckResult criterion_5_character_sums() {
  return timed("C5", "character sums over F_2^n and over the coset X1", [](CheckResult& r) {
    std::int64_t tuples = 0;
    for (unsigned n = 1; n <= 3; ++n) {
      const std::uint64_t size = std::uint64_t{1} << n;
      for (unsigned l = 1; l <= 2; ++l) {
        const std::uint64_t count = std::uint64_t{1} << (n * l);
        for (std::uint64_t packed = 0; packed < count; ++packed) {
          std::vector<std::uint64_t> ys(l);
          for (unsigned i = 0; i < l; ++i) ys[i] = (packed >> (i * n)) & (size - 1);
          ++tuples;
          const std::int64_t expect = packed == 0 ? (std::int64_t{1} << (n * l)) : 0;
          if (gms::character_sum(ys, n) != expect)
            r.fail("n=" + std::to_string(n) + " l=" + std::to_string(l) + " y=" + std::to_string(packed));
          for (std::uint64_t s = 1; s < size; ++s) {
            // x_t = 0 with t the lowest set bit of s, so only y in {0, e_t} survive.
            const std::uint64_t et = s & (~s + 1);
            std::int64_t want = 1;
            for (auto y : ys) want *= (y == 0 || y == et) ? (std::int64_t{1} << (n - 1)) : 0;
            const std::int64_t got = gms::character_sum_coset(ys, n, s);
            bool perp = true;
            for (auto y : ys) perp = perp && std::popcount(y & s) % 2 == 0;
            if (got != want || (perp && packed != 0 && got != 0) ||
                (packed == 0 && got != (std::int64_t{1} << ((n - 1) * l))))
              r.fail("coset n=" + std::to_string(n) + " s=" + std::to_string(s) + " y=" + std::to_string(packed));
          }
        }
      }
    }
    r.details = Json{{"tuples", tuples}};
  });
}

CheckResult criterion_6_deferred(const std::vector<std::pair<unsigned, unsigned>>& pairs, std::uint64_t seed) {
  return timed("C6", "deferred and immediate measurement give the same joint distribution", [&](CheckResult& r) {
    Json rows = Json::array();
    for (const auto& [n, l] : pairs) {
      for (std::uint64_t s = 1; s < (std::uint64_t{1} << n); ++s) {
        const auto d = gms::deferred_vs_immediate(n, l, s, seed + s);
        const std::string tag = "n=" + std::to_string(n) + " l=" + std::to_string(l) + " s=" + std::to_string(s);
        if (d.max_abs_diff > 1e-10) r.fail(tag + ": max_abs_diff " + std::to_string(d.max_abs_diff));
        if (std::abs(d.p_correct_immediate - d.expected) > 1e-10 || std::abs(d.p_correct_deferred - d.expected) > 1e-10)
          r.fail(tag + ": P(correct) " + std::to_string(d.p_correct_deferred) + " expected " + std::to_string(d.expected));
        if (n == 2 && l == 2 && std::abs(d.expected - 0.75) > 1e-12) r.fail(tag + ": expected 3/4");
        rows.push_back(Json{{"n", n},
                            {"l", l},
                            {"s", s},
                            {"r", d.r},
                            {"expected", d.expected},
                            {"p_correct_immediate", d.p_correct_immediate},
                            {"p_correct_deferred", d.p_correct_deferred},
                            {"max_abs_diff", d.max_abs_diff},
                            {"outcomes", d.deferred.size()}});
      }
    }
    r.details = Json{{"cases", rows}};
  });
}

CheckResult criterion_7_grover() {
  return timed("C7", "amplitude amplification against sin^2((2t+1) theta)", [](CheckResult& r) {
    Json rows = Json::array();
    for (unsigned q : {2u, 3u, 4u, 6u}) {
      const double N = std::ldexp(1.0, static_cast<int>(q));
      const std::uint64_t target = (std::uint64_t{1} << q) - 2;
      const auto prep = sim::uniform_prep(q);
      const unsigned t_max = 2 * static_cast<unsigned>(std::ceil(M_PI / 4 * std::sqrt(N))) + 2;
      const auto curve = sim::amplification_curve(prep, [target](std::uint64_t i) { return i == target; }, t_max);
      double worst = 0;
      for (unsigned t = 0; t <= t_max; ++t) worst = std::max(worst, std::abs(curve[t] - sim::grover_success(N, 1, t)));
      if (worst > 1e-10) r.fail("N=" + std::to_string(static_cast<int>(N)) + ": deviation " + std::to_string(worst));
      rows.push_back(Json{{"N", N}, {"t_max", t_max}, {"max_deviation", worst}});
    }
    Json opt = Json::array();
    for (unsigned q : {6u, 8u}) {
      const double N = std::ldexp(1.0, static_cast<int>(q));
      const double amp = 1.0 / std::sqrt(N);
      const double T = gms::optimal_iterations(amp, amp, N, 1);
      const auto curve = sim::amplification_curve(
          sim::uniform_prep(q), [](std::uint64_t i) { return i == 0; }, static_cast<unsigned>(2 * T) + 2);
      unsigned best = 0;
      for (unsigned t = 1; t < curve.size(); ++t)
        if (curve[t] > curve[best]) best = t;
      const auto rounded = static_cast<unsigned>(std::lround(T));
      if (rounded != best)
        r.fail("N=" + std::to_string(static_cast<int>(N)) + ": T=" + std::to_string(T) + " argmax " + std::to_string(best));
      opt.push_back(Json{{"N", N}, {"T", T}, {"rounded", rounded}, {"argmax", best}});
    }
    r.details = Json{{"curves", rows}, {"optimal_iterations", opt}};
  });
}

CheckResult criterion_8_gms(std::uint64_t seed) {
  return timed("C8", "deferred GMS stays below 0.5 and P_max; the hybrid baseline reaches 0.9", [seed](CheckResult& r) {
    gms::GmsConfig cfg;
    cfg.seed = seed;
    const auto inst = gms::make_instance(cfg);
    const auto res = gms::run_gms(inst);
    const auto hyb = gms::hybrid_baseline(inst, cfg.t_max);
    for (std::size_t t = 0; t < res.curve.size(); ++t)
      if (res.curve[t] > res.stats.p_max + 1e-8) r.fail("t=" + std::to_string(t) + " exceeds P_max");
    if (res.best >= 0.5) r.fail("best deferred success " + std::to_string(res.best) + " >= 0.5");
    if (hyb.best < 0.9) r.fail("hybrid best " + std::to_string(hyb.best) + " < 0.9");

    // Same instance out to t = 4 sqrt(N).
    gms::Instance wide = inst;
    wide.cfg.t_max = static_cast<unsigned>(std::ceil(4 * std::sqrt(res.stats.N)));
    const auto far = gms::run_gms(wide);
    if (far.best >= 0.5) r.fail("success reaches " + std::to_string(far.best) + " within 4 sqrt(N)");

    r.details = Json{{"key", inst.fx.key},
                     {"k1", inst.fx.k1},
                     {"N", res.stats.N},
                     {"r", res.stats.r},
                     {"p_max", res.stats.p_max},
                     {"best", res.best},
                     {"best_t", res.best_t},
                     {"best_within_4_sqrt_N", far.best},
                     {"t_range", wide.cfg.t_max},
                     {"hybrid_best", hyb.best},
                     {"hybrid_best_t", hyb.best_t},
                     {"analysis_p_max_estimate", res.analysis.p_max_estimate}};
  });
}

CheckResult criterion_9_query_ratio() {
  return timed("C9", "N/r exceeds 2^{m+2n} - 2^{2n} and the implied cost exceeds key search", [](CheckResult& r) {
    Json rows = Json::array();
    for (const auto& [m, n] : std::vector<std::pair<unsigned, unsigned>>{{2, 2}, {3, 2}, {4, 3}}) {
      const auto q = gms::query_ratio(m, n);
      const std::string tag = "m=" + std::to_string(m) + " n=" + std::to_string(n);
      if (!q.exceeds) r.fail(tag + ": N/r does not exceed the bound");
      if (!(q.t_lower > q.t_exhaustive) || !(q.t_ratio > q.t_exhaustive)) r.fail(tag + ": cost below key search");
      // N and r from the amplitude counting, r by enumeration.
      const auto count = gms::count_rank_n_minus_1(n, gms::CountMode::Brute);
      const gms::BigInt N = ((gms::BigInt(1) << m) - 1) * (gms::BigInt(1) << (2 * n * n)) +
                            (gms::BigInt(1) << (2 * (n - 1) * n));
      const gms::BigInt rr = (gms::BigInt(1) << ((n - 1) * n)) * gms::BigInt(*count.brute);
      if (q.n_over_r != gms::BigRational(N, rr)) r.fail(tag + ": N/r differs from enumeration");
      rows.push_back(report::to_json(q));
    }
    if (gms::query_ratio(2, 2).n_over_r != gms::BigRational(196, 3)) r.fail("m=2 n=2: N/r != 196/3");
    r.details = Json{{"grid", rows}};
  });
}

namespace {

struct NormCase {
  std::string name;
  ir::Circuit circuit;
};

std::vector<NormCase> norm_cases() {
  std::vector<NormCase> v;
  auto add = [&](std::string name, ir::Circuit c) { v.push_back({std::move(name), std::move(c)}); };
  for (unsigned n : {2u, 3u, 4u, 5u}) add("qge n=" + std::to_string(n), synth::build_qge(n));
  for (unsigned n : {2u, 3u, 4u, 5u}) add("qgje n=" + std::to_string(n), synth::build_qgje(n));
  add("row_echelon 2x3", synth::build_row_echelon(2, 3));
  add("row_echelon 3x2", synth::build_row_echelon(3, 2));
  add("row_echelon 4x4", synth::build_row_echelon(4, 4));
  add("rref 2x2", synth::build_rref(2, 2));
  add("rref 3x3", synth::build_rref(3, 3));
  add("rref 3x4", synth::build_rref(3, 4));
  add("uqge n=2 l=1", synth::build_uqge_solution(2, 1));
  add("uqge n=2 l=2", synth::build_uqge_solution(2, 2));
  add("uqge n=3 l=2", synth::build_uqge_solution(3, 2));
  add("toffoli", ir::decompose_toffoli());
  for (unsigned k : {3u, 4u, 5u}) add("mcx k=" + std::to_string(k), ir::decompose_mcx(k));
  Rng rng(11);
  add("simon n=2 l=2", sim::parallel_simon_circuit(sim::build_simon_oracle(2, 3, rng).spec, 2, 2));
  add("simon n=3 l=2", sim::parallel_simon_circuit(sim::build_simon_oracle(3, 5, rng).spec, 3, 2));
  gms::GmsConfig cfg;
  const auto inst = gms::make_instance(cfg);
  add("gms initial state 2,2,2", gms::initial_state_circuit(inst.fx, cfg.l));
  add("gms classifier 2,2,2", gms::build_ug_circuit(inst.fx, cfg.l, cfg.plaintexts));
  gms::GmsConfig small = cfg;
  small.l = 1;
  const auto inst1 = gms::make_instance(small);
  add("gms classifier 2,2,1", gms::build_ug_circuit(inst1.fx, small.l, small.plaintexts));
  return v;
}

constexpr unsigned kDenseLimit = 18;
constexpr int kStates = 100;

bool all_classical(const ir::Circuit& c) {
  for (const auto& g : c.gates())
    if (!g.is_classical()) return false;
  return true;
}

// Random state with `support` random basis states and Gaussian amplitudes.
sim::SparseState random_sparse(unsigned qubits, std::size_t support, Rng& rng) {
  sim::SparseState s(qubits);
  const std::uint64_t mask = qubits >= 64 ? ~std::uint64_t{0} : (std::uint64_t{1} << qubits) - 1;
  double total = 0;
  std::unordered_map<std::uint64_t, sim::Amp> amps;
  while (amps.size() < support) {
    const double u1 = 1.0 - uniform_unit(rng), u2 = uniform_unit(rng);
    const double rad = std::sqrt(-2.0 * std::log(u1));
    auto [it, fresh] = amps.emplace(rng() & mask, sim::Amp(rad * std::cos(2 * M_PI * u2), rad * std::sin(2 * M_PI * u2)));
    if (fresh) total += std::norm(it->second);
  }
  for (auto& [k, a] : amps) a /= std::sqrt(total);
  s.assign(std::move(amps));
  return s;
}

std::string read_file(const std::filesystem::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::ostringstream os;
  os << in.rdbuf();
  return os.str();
}

}  // namespace

CheckResult criterion_10_unitarity(const std::string& cli) {
  return timed("C10", "norm preservation on random states and reproducible output", [&](CheckResult& r) {
    Rng rng(2024);
    Json rows = Json::array();
    for (const auto& [name, c] : norm_cases()) {
      double worst = 0;
      std::string mode;
      if (c.qubit_count() <= kDenseLimit) {
        mode = "dense";
        for (int k = 0; k < kStates; ++k) {
          sim::StateVector psi = sim::random_state(c.qubit_count(), rng);
          sim::run_in_place(c, psi);
          worst = std::max(worst, std::abs(psi.norm() - 1.0));
        }
      } else if (all_classical(c) && c.qubit_count() <= 64) {
        mode = "sparse";
        for (int k = 0; k < kStates; ++k) {
          sim::SparseState psi = random_sparse(c.qubit_count(), 64, rng);
          sim::run_in_place(c, psi);
          worst = std::max(worst, std::abs(psi.norm() - 1.0));
        }
      } else {
        r.fail(name + ": no backend for " + std::to_string(c.qubit_count()) + " qubits");
        continue;
      }
      if (worst > 1e-12) r.fail(name + ": norm deviation " + std::to_string(worst));
      rows.push_back(Json{{"circuit", name}, {"qubits", c.qubit_count()}, {"mode", mode}, {"max_deviation", worst}});
    }

    // In-process determinism: the same arguments give the same bytes.
    report::RunManifest man;
    man.subcommand = "synth";
    const auto k = synth::SynthKind::qge(3);
    const auto a = report::dump(report::synth_report(k, synth::build(k), man));
    const auto b = report::dump(report::synth_report(k, synth::build(k), man));
    if (a != b) r.fail("synth report differs between runs");
    const auto text = ir::to_text(synth::build(k));
    if (ir::to_text(ir::from_text(text)) != text) r.fail("circuit text does not round-trip");

    gms::GmsConfig cfg;
    cfg.t_max = 5;
    auto gms_bytes = [&] {
      const auto inst = gms::make_instance(cfg);
      report::GmsReportInput in{inst, gms::run_gms(inst), gms::hybrid_baseline(inst, cfg.t_max),
                                gms::query_ratio(cfg.m, cfg.n), gms::count_rank_n_minus_1(cfg.n, gms::CountMode::Formula)};
      return report::dump(report::gms_report(in, man)) + report::curve_csv(in.result.curve);
    };
    if (gms_bytes() != gms_bytes()) r.fail("gms report differs between runs");

    Json cli_runs = nullptr;
    if (!cli.empty()) {
      namespace fs = std::filesystem;
      const fs::path dir = fs::temp_directory_path() / ("qgms_det_" + std::to_string(::getpid()));
      fs::create_directories(dir);
      const std::vector<std::pair<std::string, std::vector<std::string>>> runs = {
          {"gms --m 2 --n 2 --l 2 --t-max 20 --seed 7 --out ", {".json", ".csv"}},
          {"synth qge --n 3 --out ", {".txt", ".json"}},
          {"synth uqge --n 2 --l 2 --out ", {".txt", ".json"}},
      };
      cli_runs = Json::array();
      int idx = 0;
      for (const auto& [args, exts] : runs) {
        std::string outputs[2];
        for (int rep = 0; rep < 2; ++rep) {
          const fs::path prefix = dir / ("run" + std::to_string(idx) + "_" + std::to_string(rep));
          const std::string cmd = "env -u SOURCE_DATE_EPOCH \"" + cli + "\" " + args + "\"" + prefix.string() + "\" > /dev/null";
          if (std::system(cmd.c_str()) != 0) {
            r.fail("command failed: " + cmd);
            break;
          }
          for (const auto& e : exts) outputs[rep] += read_file(prefix.string() + e);
        }
        const bool same = !outputs[0].empty() && outputs[0] == outputs[1];
        if (!same) r.fail("output differs between runs: " + args);
        cli_runs.push_back(Json{{"args", args}, {"identical", same}, {"bytes", outputs[0].size()}});
        ++idx;
      }
      std::error_code ec;
      fs::remove_all(dir, ec);
    }
    r.details = Json{{"states_per_circuit", kStates}, {"circuits", rows}, {"cli", cli_runs}};
  });
}

const std::vector<std::string>& suite_names() {
  static const std::vector<std::string> names{"gf2", "circuits", "counting", "deferred", "gms"};
  return names;
}

bool is_suite(std::string_view name) {
  for (const auto& s : suite_names())
    if (s == name) return true;
  return false;
}

SuiteResult run_suite(std::string_view suite, const SuiteOptions& opts) {
  SuiteResult out;
  out.suite = std::string(suite);
  if (suite == "gf2") {
    out.checks.push_back(gf2_solve_exhaustive());
    out.checks.push_back(gf2_rref_properties(opts.seed));
  } else if (suite == "circuits") {
    out.checks.push_back(criterion_1_qge_qgje());
    out.checks.push_back(criterion_2_rref());
    out.checks.push_back(criterion_3_stage_counts());
    out.checks.push_back(criterion_10_unitarity());
  } else if (suite == "counting") {
    out.checks.push_back(criterion_4_rank_count());
    out.checks.push_back(criterion_5_character_sums());
    out.checks.push_back(criterion_9_query_ratio());
  } else if (suite == "deferred") {
    if (opts.n || opts.l) {
      const unsigned n = opts.n.value_or(2), l = opts.l.value_or(2);
      if (n < 2 || l < 1) throw InvalidDimensions("deferred suite needs n >= 2, l >= 1");
      out.checks.push_back(criterion_6_deferred({{n, l}}, opts.seed));
    } else {
      out.checks.push_back(criterion_6_deferred({{2, 2}, {2, 3}, {3, 2}}, opts.seed));
    }
  } else if (suite == "gms") {
    out.checks.push_back(criterion_7_grover());
    out.checks.push_back(criterion_8_gms(opts.seed));
  } else {
    throw Error("unknown suite '" + std::string(suite) + "'");
  }
  return out;
}

Json to_json(const SuiteResult& r) {
  Json checks = Json::array();
  Json failures = Json::array();
  for (const auto& c : r.checks) {
    checks.push_back(Json{{"id", c.id},
                          {"title", c.title},
                          {"pass", c.pass},
                          {"failures", c.failures},
                          {"details", c.details}});
    for (const auto& f : c.failures) failures.push_back(Json{{"id", c.id}, {"message", f}});
  }
  return Json{{"schema", report::kSchema}, {"suite", r.suite}, {"pass", r.pass()}, {"checks", checks}, {"failures", failures}};
}

std::string to_text(const SuiteResult& r) {
  std::ostringstream os;
  for (const auto& c : r.checks) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.2fs", c.seconds);
    os << (c.pass ? "PASS " : "FAIL ") << c.id << " " << c.title << " (" << buf << ")\n";
    for (const auto& f : c.failures) os << "    " << f << "\n";
  }
  return os.str();
}

}  // namespace qgms::verify
