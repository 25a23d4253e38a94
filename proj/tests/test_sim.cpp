#include <cstdlib>
#include <map>
#include <set>

#include "doctest.h"
#include "qgms/amplify.hpp"
#include "qgms/error.hpp"
#include "qgms/oracle.hpp"
#include "qgms/simon.hpp"
#include "qgms/sparse_state.hpp"
#include "qgms/statevector.hpp"

using namespace qgms;
using namespace qgms::sim;
using ir::Gate;

namespace {

ir::Circuit gates(unsigned qubits, std::vector<Gate> gs) {
  ir::Circuit c(qubits, {});
  for (auto& g : gs) c.add(std::move(g));
  return c;
}

// Independent y-marginal of one Simon round: sum over f-values of
// |sum_{x : f(x) = z} (-1)^{x.y}|^2 / 4^n.
std::vector<double> direct_marginal(const std::vector<std::uint64_t>& f, unsigned n) {
  const std::uint64_t size = std::uint64_t{1} << n;
  std::vector<double> p(size, 0.0);
  std::map<std::uint64_t, std::vector<std::uint64_t>> pre;
  for (std::uint64_t x = 0; x < size; ++x) pre[f[x]].push_back(x);
  for (std::uint64_t y = 0; y < size; ++y)
    for (const auto& [z, xs] : pre) {
      double s = 0;
      for (auto x : xs) s += (std::popcount(x & y) & 1) ? -1.0 : 1.0;
      p[y] += s * s / static_cast<double>(size * size);
    }
  return p;
}

}  // namespace

TEST_CASE("single gates on basis states") {
  const auto one = run(gates(1, {Gate::x(0)}), StateVector(1));
  CHECK(std::abs(one[1] - 1.0) < 1e-15);

  const auto hh = run(gates(2, {Gate::h(0), Gate::h(1)}), StateVector(2));
  for (std::size_t i = 0; i < 4; ++i) CHECK(std::abs(hh[i] - 0.5) < 1e-15);

  auto in = StateVector::from_amplitudes({1 / std::sqrt(2.0), 1 / std::sqrt(2.0), 0, 0});
  const auto bell = run(gates(2, {Gate::cnot(0, 1)}), in);
  CHECK(std::abs(bell[0] - 1 / std::sqrt(2.0)) < 1e-15);
  CHECK(std::abs(bell[3] - 1 / std::sqrt(2.0)) < 1e-15);
  CHECK(std::abs(bell[1]) < 1e-15);

  const auto s = run(gates(1, {Gate::x(0), Gate::single(ir::GateKind::S, 0), Gate::single(ir::GateKind::T, 0)}), StateVector(1));
  CHECK(std::abs(s[1] - std::polar(1.0, 3 * M_PI / 4)) < 1e-15);
}

TEST_CASE("measurement and distributions") {
  Rng rng(1);
  const auto m1 = measure(StateVector::basis(1, 1), {0}, rng);
  CHECK(m1.outcome == 1);

  const double h = 1 / std::sqrt(2.0);
  const auto bell = StateVector::from_amplitudes({h, 0, 0, h});
  const auto dist = full_distribution(bell, {0});
  CHECK(dist[0] == doctest::Approx(0.5));
  CHECK(dist[1] == doctest::Approx(0.5));
  std::set<std::uint64_t> seen;
  for (int i = 0; i < 40; ++i) {
    const auto m = measure(bell, {0}, rng);
    seen.insert(m.outcome);
    const std::uint64_t both = m.outcome ? 3 : 0;
    CHECK(std::abs(m.post[both]) == doctest::Approx(1.0));
    CHECK(full_distribution(m.post, {1})[m.outcome] == doctest::Approx(1.0));
  }
  CHECK(seen.size() == 2);
  CHECK(extract(0b1010, {1, 3}) == 3);
}

TEST_CASE("qubit cap") {
  CHECK(qubit_cap() == 24);
  ::setenv("QGMS_QUBIT_CAP", "6", 1);
  CHECK(qubit_cap() == 6);
  CHECK_THROWS_AS(StateVector(7), QubitCapExceeded);
  try {
    StateVector too_big(9);
  } catch (const QubitCapExceeded& e) {
    CHECK(e.required() == 9);
    CHECK(e.cap() == 6);
  }
  ::unsetenv("QGMS_QUBIT_CAP");
  CHECK_NOTHROW(StateVector(7));
}

TEST_CASE("Simon oracle structure") {
  Rng rng(2);
  const auto o = build_simon_oracle(2, 1, rng);
  CHECK(o(0) == o(1));
  CHECK(o(2) == o(3));
  CHECK(o(0) != o(2));
  for (unsigned n = 2; n <= 6; ++n)
    for (std::uint64_t s = 1; s < (std::uint64_t{1} << n); ++s) {
      const auto f = build_simon_oracle(n, s, rng);
      std::set<std::uint64_t> image(f.spec->table.begin(), f.spec->table.end());
      CHECK(image.size() == (std::size_t{1} << (n - 1)));
      for (std::uint64_t x = 0; x < (std::uint64_t{1} << n); ++x) CHECK(f(x) == f(x ^ s));
      CHECK(periods(f.spec->table, n) == std::vector<std::uint64_t>{s});
    }
  CHECK_THROWS_AS(build_simon_oracle(3, 0, rng), ZeroPeriod);
}

TEST_CASE("two-bit permutations give a constant correct-key slice") {
  for (std::uint64_t seed = 0; seed < 40; ++seed) {
    const auto fx = build_fx_oracle(1, 2, 1, 1 + seed % 3, seed % 4, seed);
    const auto p = periods(key_slice(fx, fx.key), 2);
    CHECK(p.size() == 3);
  }
  // With random functions the slice still has period k1 and is sometimes 2-to-1.
  int two_to_one = 0;
  for (std::uint64_t seed = 0; seed < 40; ++seed) {
    const auto fx = build_fx_oracle(1, 2, 1, 2, 3, seed, CipherModel::Function);
    CHECK(fx.model == CipherModel::Function);
    for (std::uint64_t x = 0; x < 4; ++x) {
      CHECK(fx.f(fx.key, x) == fx.f(fx.key, x ^ 2));
      CHECK(fx.f(0, x) == (fx.encrypt(x) ^ fx.cipher[0][x]));
    }
    two_to_one += periods(key_slice(fx, fx.key), 2).size() == 1;
  }
  CHECK(two_to_one > 0);
  CHECK(name(CipherModel::Function) == "function");
}

TEST_CASE("FX oracle structure") {
  const auto fx = build_fx_oracle(2, 3, 2, 5, 6, 99);
  for (std::uint64_t x = 0; x < 8; ++x) CHECK(fx.f(fx.key, x) == fx.f(fx.key, x ^ fx.k1));
  CHECK(fx.encrypt(0) == (fx.cipher[fx.key][fx.k1] ^ fx.k2));
  for (const auto& perm : fx.cipher) CHECK(std::set<std::uint64_t>(perm.begin(), perm.end()).size() == 8);
  CHECK(key_slice(fx, fx.key) == std::vector<std::uint64_t>{
                                      fx.f(2, 0), fx.f(2, 1), fx.f(2, 2), fx.f(2, 3), fx.f(2, 4), fx.f(2, 5), fx.f(2, 6), fx.f(2, 7)});
  CHECK_THROWS_AS(build_fx_oracle(2, 3, 0, 0, 1, 1), ZeroWhiteningKey);

  // Wrong keys rarely have a period; count them over seeds.
  int spurious = 0, total = 0;
  for (std::uint64_t seed = 0; seed < 50; ++seed) {
    const auto f = build_fx_oracle(2, 4, 1, 3, 7, seed);
    for (std::uint64_t k = 0; k < 4; ++k) {
      const auto p = periods(key_slice(f, k), 4);
      if (k == f.key) {
        CHECK(std::find(p.begin(), p.end(), f.k1) != p.end());
      } else {
        ++total;
        spurious += !p.empty();
      }
    }
  }
  CHECK(spurious < total / 2);
}

TEST_CASE("Simon rounds") {
  Rng rng(4);
  const auto d2 = y_marginal(simon_round(build_simon_oracle(2, 3, rng)), 2, 1);
  CHECK(d2[0] == doctest::Approx(0.5));
  CHECK(d2[3] == doctest::Approx(0.5));
  CHECK(d2[1] == doctest::Approx(0.0));

  const auto d3 = y_marginal(simon_round(build_simon_oracle(3, 0b100, rng)), 3, 1);
  for (std::uint64_t y = 0; y < 8; ++y) CHECK(d3[y] == doctest::Approx(y & 0b100 ? 0.0 : 0.25));

  for (unsigned n = 2; n <= 4; ++n)
    for (std::uint64_t s = 1; s < (std::uint64_t{1} << n); ++s) {
      const auto o = build_simon_oracle(n, s, rng);
      const auto psi = simon_round(o);
      const auto d = y_marginal(psi, n, 1);
      const auto direct = direct_marginal(o.spec->table, n);
      const auto lib = simon_sample_distribution(o.spec->table, n);
      for (std::uint64_t y = 0; y < d.size(); ++y) {
        const double want = std::popcount(y & s) % 2 ? 0.0 : 1.0 / static_cast<double>(std::uint64_t{1} << (n - 1));
        CHECK(d[y] == doctest::Approx(want));
        CHECK(direct[y] == doctest::Approx(want));
        CHECK(lib[y] == doctest::Approx(want));
      }
      for (std::size_t i = 0; i < psi.dim(); ++i)
        if (std::popcount(i & s & ((std::uint64_t{1} << n) - 1)) % 2) CHECK(std::abs(psi[i]) < 1e-12);
    }

  const auto o = build_simon_oracle(2, 1, rng);
  const auto one = y_marginal(simon_round(o), 2, 1);
  const auto two = y_marginal(parallel_simon(o, 2), 2, 2);
  for (std::uint64_t y = 0; y < 16; ++y) CHECK(two[y] == doctest::Approx(one[y & 3] * one[y >> 2]));
}

TEST_CASE("sample distribution for a non-periodic function") {
  const std::vector<std::uint64_t> f{0, 1, 1, 3, 0, 2, 2, 2};
  const auto lib = simon_sample_distribution(f, 3);
  const auto direct = direct_marginal(f, 3);
  double total = 0;
  for (std::size_t y = 0; y < 8; ++y) {
    CHECK(lib[y] == doctest::Approx(direct[y]));
    total += lib[y];
  }
  CHECK(total == doctest::Approx(1.0));
}

TEST_CASE("oracle blocks are involutions") {
  Rng rng(8);
  auto spec = std::make_shared<OracleSpec>();
  spec->name = "g";
  spec->n_in = 3;
  spec->n_out = 2;
  for (int x = 0; x < 8; ++x) spec->table.push_back(uniform_below(rng, 4));
  const auto c = gates(6, {Gate::oracle_block(spec, {0, 2, 4}, {5, 1})});
  for (int k = 0; k < 10; ++k) {
    const auto psi = random_state(6, rng);
    const auto once = run(c, psi);
    CHECK(std::abs(once.norm() - 1.0) < 1e-12);
    CHECK(distance_up_to_phase(run(c, once), psi) < 1e-12);
  }
  for (std::uint64_t in = 0; in < 64; ++in) {
    const auto out = run(c, StateVector::basis(6, in));
    const std::uint64_t x = extract(in, {0, 2, 4});
    const std::uint64_t y = extract(in, {5, 1}) ^ (*spec)(x);
    std::uint64_t expect = in & ~((1u << 5) | (1u << 1));
    expect |= (y & 1) << 5 | (y >> 1 & 1) << 1;
    CHECK(std::abs(out[expect] - 1.0) < 1e-15);
  }
}

TEST_CASE("sparse and basis backends agree with the dense simulator") {
  Rng rng(9);
  ir::Circuit c(6, {});
  for (int i = 0; i < 40; ++i) {
    const auto a = static_cast<ir::Qubit>(uniform_below(rng, 6));
    const auto b = static_cast<ir::Qubit>((a + 1 + uniform_below(rng, 5)) % 6);
    const auto t = static_cast<ir::Qubit>((b + 1) % 6 == a ? (b + 2) % 6 : (b + 1) % 6);
    switch (uniform_below(rng, 5)) {
      case 0: c.add(Gate::h(a)); break;
      case 1: c.add(Gate::cnot(a, b)); break;
      case 2: c.add(Gate::toffoli(a, b, t)); break;
      case 3: c.add(Gate::z(a, {b})); break;
      default: c.add(Gate::single(ir::GateKind::T, a)); break;
    }
  }
  const auto psi = random_state(6, rng);
  const auto dense = run(c, psi);
  std::vector<ir::Qubit> ident{0, 1, 2, 3, 4, 5};
  auto sparse = SparseState::embed(psi, 6, ident);
  run_in_place(c, sparse);
  for (std::size_t i = 0; i < dense.dim(); ++i) CHECK(std::abs(sparse.get(i) - dense[i]) < 1e-12);

  BasisState b(3);
  b.set(0, true);
  b.set(1, true);
  run_in_place(gates(3, {Gate::toffoli(0, 1, 2), Gate::z(2)}), b);
  CHECK(b.get(2));
  CHECK(b.sign() == -1);
  CHECK_THROWS_AS(apply(b, Gate::h(0)), NonClassicalGate);
}

TEST_CASE("amplitude amplification") {
  const auto prep2 = uniform_prep(2);
  const auto after1 = amplitude_amplify(prep2, [](std::uint64_t i) { return i == 2; }, 1);
  CHECK(probability(after1, [](std::uint64_t i) { return i == 2; }) == doctest::Approx(1.0).epsilon(1e-12));

  const auto prep3 = uniform_prep(3);
  const auto good = [](std::uint64_t i) { return i == 5; };
  CHECK(probability(amplitude_amplify(prep3, good, 0), good) == doctest::Approx(0.125));
  const double p2 = probability(amplitude_amplify(prep3, good, 2), good);
  CHECK(std::abs(p2 - std::pow(std::sin(5 * std::asin(std::sqrt(0.125))), 2)) < 1e-10);
  CHECK(p2 == doctest::Approx(0.9453).epsilon(1e-4));

  OracleSpec marker{"m", 3, 1, {0, 0, 0, 0, 0, 1, 0, 0}};
  CHECK(probability(amplitude_amplify(prep3, marker, 2), good) == doctest::Approx(p2));
  OracleSpec bad{"m", 2, 1, {0, 0, 0, 1}};
  CHECK_THROWS_AS(amplitude_amplify(prep3, bad, 1), InvalidDimensions);

  for (unsigned q = 1; q <= 6; ++q) {
    const double N = std::ldexp(1.0, static_cast<int>(q));
    const auto curve = amplification_curve(uniform_prep(q), [](std::uint64_t i) { return i == 0; }, 12);
    for (unsigned t = 0; t <= 12; ++t) CHECK(std::abs(curve[t] - grover_success(N, 1, t)) < 1e-10);
  }
}

TEST_CASE("state dumps") {
  const auto psi = StateVector::basis(2, 3);
  const std::string j = to_json(psi, {ir::Register{"q", 0, 2}});
  CHECK(j.find("\"qubits\":2") != std::string::npos);
  CHECK(j.find("[3,1.0,0.0]") != std::string::npos);
  CHECK(distribution_csv({0.25, 0.75}) == "outcome,probability\n0,0.25\n1,0.75\n");
}
