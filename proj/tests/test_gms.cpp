#include <map>

#include "doctest.h"
#include "qgms/error.hpp"
#include "qgms/gf2.hpp"
#include "qgms/gms.hpp"
#include "qgms/statevector.hpp"

using namespace qgms;
using namespace qgms::gms;

namespace {

const Instance& reference_instance() {
  static const Instance inst = make_instance(GmsConfig{});
  return inst;
}

struct Fields {
  std::uint64_t key, y, f;
};

Fields split(std::uint64_t i, const GmsConfig& cfg) {
  const unsigned ln = cfg.n * cfg.l;
  return {i & ((std::uint64_t{1} << cfg.m) - 1), (i >> cfg.m) & ((std::uint64_t{1} << ln) - 1), i >> (cfg.m + ln)};
}

}  // namespace

TEST_CASE("instances honour the seed policy") {
  GmsConfig cfg;
  const auto& inst = reference_instance();
  CHECK(accepts(inst.fx, cfg.plaintexts, SeedPolicy::Ideal));
  CHECK(accepts(inst.fx, cfg.plaintexts, SeedPolicy::Clean));
  CHECK(inst.fx.k1 != 0);
  const auto again = make_instance(cfg);
  CHECK(again.cipher_seed == inst.cipher_seed);
  CHECK(again.fx.spec->table == inst.fx.spec->table);

  cfg.policy = SeedPolicy::AsDrawn;
  CHECK(make_instance(cfg).attempts == 1);
  cfg.plaintexts = {};
  CHECK_THROWS_AS(make_instance(cfg), InvalidDimensions);
  CHECK(search_qubits(GmsConfig{}) == 10);
}

TEST_CASE("initial state marginals") {
  const auto& inst = reference_instance();
  const auto& cfg = inst.cfg;
  const auto psi = prepare_initial_state(inst);
  CHECK(psi.norm() == doctest::Approx(1.0));
  const unsigned ln = cfg.n * cfg.l;
  std::map<std::uint64_t, double> key_p;
  std::map<std::uint64_t, std::map<std::uint64_t, double>> y_given_key;
  for (std::size_t i = 0; i < psi.dim(); ++i) {
    const auto fl = split(i, cfg);
    const double p = std::norm(psi[i]);
    key_p[fl.key] += p;
    y_given_key[fl.key][fl.y] += p;
  }
  for (std::uint64_t k = 0; k < 4; ++k) CHECK(key_p[k] == doctest::Approx(0.25));
  for (std::uint64_t yv = 0; yv < (std::uint64_t{1} << ln); ++yv) {
    bool perp = true;
    for (unsigned r = 0; r < cfg.l; ++r) perp = perp && std::popcount((yv >> (r * cfg.n)) & inst.fx.k1) % 2 == 0;
    const double right = y_given_key[inst.fx.key][yv] / 0.25;
    CHECK(right == doctest::Approx(perp ? 1.0 / 4 : 0.0));
    for (std::uint64_t k = 0; k < 4; ++k)
      if (k != inst.fx.key) CHECK(y_given_key[k][yv] / 0.25 == doctest::Approx(1.0 / 16));
  }
}

TEST_CASE("classifier examples") {
  const auto& inst = reference_instance();
  const auto& cfg = inst.cfg;
  CHECK_FALSE(ug_classifier(inst.fx.key, gf2::BitMatrix(cfg.l, cfg.n), inst.fx, cfg.plaintexts));

  // One row orthogonal to k1 and nonzero, the other zero: kernel {k1}.
  std::uint64_t row = 0;
  for (std::uint64_t v = 1; v < 4; ++v)
    if (std::popcount(v & inst.fx.k1) % 2 == 0) row = v;
  gf2::BitMatrix y(cfg.l, cfg.n);
  y.set_row(0, gf2::BitVector::from_uint(cfg.n, row));
  CHECK(ug_classifier(inst.fx.key, y, inst.fx, cfg.plaintexts));
  for (std::uint64_t k = 0; k < 4; ++k)
    if (k != inst.fx.key) CHECK_FALSE(ug_classifier(k, y, inst.fx, cfg.plaintexts));
}

TEST_CASE("wrong-key false positives are counted, not assumed away") {
  GmsConfig cfg;
  cfg.n = 3;
  cfg.plaintexts = {0};
  cfg.policy = SeedPolicy::AsDrawn;
  int positives = 0, checks = 0;
  for (std::uint64_t seed = 1; seed <= 20; ++seed) {
    cfg.seed = seed;
    const auto inst = make_instance(cfg);
    for (std::uint64_t k = 0; k < 4; ++k) {
      if (k == inst.fx.key) continue;
      for (std::uint64_t y = 0; y < (std::uint64_t{1} << 6); ++y) {
        const auto Y = unpack_rows(y, 2, 3);
        if (gf2::rank(Y) != 2) continue;
        ++checks;
        positives += ug_classifier(k, Y, inst.fx, cfg.plaintexts);
      }
    }
  }
  CHECK(checks > 0);
  MESSAGE("wrong-key false positives: " << positives << " of " << checks);
  CHECK(positives < checks);
}

TEST_CASE("classifier circuit marks exactly the classified states") {
  for (unsigned l : {1u, 2u}) {
    GmsConfig cfg;
    cfg.l = l;
    const auto inst = make_instance(cfg);
    const auto marked = marked_table(inst);
    for (std::uint64_t i = 0; i < marked.size(); ++i) {
      const auto fl = split(i, cfg);
      CHECK(static_cast<bool>(marked[i]) == ug_classifier(fl.key, unpack_rows(fl.y, cfg.l, cfg.n), inst.fx, cfg.plaintexts));
    }
  }
}

TEST_CASE("amplitude statistics") {
  // Uniform state: no spread among unmarked amplitudes.
  const auto u = sim::StateVector::from_amplitudes(std::vector<sim::Amp>(16, 0.25));
  const auto st = amplitude_stats(u, [](std::uint64_t i) { return i < 3; });
  CHECK(st.N == 16);
  CHECK(st.r == 3);
  CHECK(st.sigma2 == doctest::Approx(0.0));
  CHECK(st.p_max == doctest::Approx(1.0));

  std::vector<sim::Amp> a(16, 0.25);
  a[10] = 0.3;
  a[11] = std::sqrt(0.0625 * 2 - 0.09);
  const auto pert = amplitude_stats(sim::StateVector::from_amplitudes(a), [](std::uint64_t i) { return i < 3; });
  CHECK(pert.sigma2 > 0);
  CHECK(pert.p_max < 1);
  CHECK(pert.p_max == doctest::Approx(1 - 13 * pert.sigma2));
}

TEST_CASE("cipher model follows the block width unless set") {
  GmsConfig cfg;
  CHECK(cipher_model(cfg) == sim::CipherModel::Function);
  cfg.n = 3;
  CHECK(cipher_model(cfg) == sim::CipherModel::Permutation);
  cfg.cipher = sim::CipherModel::Function;
  CHECK(cipher_model(cfg) == sim::CipherModel::Function);
  GmsConfig perm;
  perm.cipher = sim::CipherModel::Permutation;
  perm.policy = SeedPolicy::Clean;
  perm.max_seed_attempts = 200;
  CHECK_THROWS_AS(make_instance(perm), Error);
}

TEST_CASE("P_max of the initial state") {
  const auto res = run_gms(reference_instance());
  CHECK(res.stats.p_max >= 0);
  CHECK(res.stats.p_max <= 1);
  CHECK(res.stats.N == 1024);
  CHECK(res.analysis.N == 784);
  CHECK(res.analysis.r_check == 12);
  CHECK(res.analysis.r_rank == 12);
  CHECK(std::abs(res.stats.p_max - res.analysis.p_max_estimate) / res.analysis.p_max_estimate < 0.1);
  MESSAGE("P_max " << res.stats.p_max << " estimate " << res.analysis.p_max_estimate);

  // Decreases as m grows at n = 2, l = 1. Seven wrong keys that are all
  // permutations are too rare to draw, so this uses the clean policy.
  double prev = 2;
  for (unsigned m = 1; m <= 3; ++m) {
    GmsConfig cfg;
    cfg.m = m;
    cfg.policy = SeedPolicy::Clean;
    cfg.l = 1;
    cfg.t_max = 0;
    const auto r = run_gms(make_instance(cfg));
    CHECK(r.stats.p_max >= 0);
    CHECK(r.stats.p_max <= 1);
    CHECK(r.stats.p_max < prev);
    prev = r.stats.p_max;
  }
}

TEST_CASE("deferred search stays below P_max and 1/2") {
  Instance inst = reference_instance();
  inst.cfg.t_max = 128;  // 4 sqrt(N)
  const auto res = run_gms(inst);
  CHECK(res.curve.size() == 129);
  CHECK(res.curve[0] == doctest::Approx(res.stats.marked_mass));
  for (double p : res.curve) {
    CHECK(p <= res.stats.p_max + 1e-8);
    CHECK(p < 0.5);
  }
  CHECK(res.optimal_t > 0);

  const auto hyb = hybrid_baseline(inst, 20);
  CHECK(hyb.best >= 0.9);
  CHECK(hyb.accept[inst.fx.key] == doctest::Approx(1.0));
}

TEST_CASE("reflection about the prepared state follows the two-dimensional rotation") {
  Instance inst = reference_instance();
  inst.cfg.diffusion = Diffusion::ReflectPrep;
  inst.cfg.t_max = 12;
  const auto res = run_gms(inst);
  const double theta = std::asin(std::sqrt(res.curve[0]));
  for (unsigned t = 0; t <= 12; ++t) CHECK(std::abs(res.curve[t] - std::pow(std::sin((2 * t + 1) * theta), 2)) < 1e-10);
}

TEST_CASE("optimal iteration count") {
  const double a = 1 / 32.0;
  CHECK(optimal_iterations(a, a, 1024, 1) == doctest::Approx(-0.5 + M_PI / 4 * 32 - M_PI / 24 / 32));
  CHECK(optimal_iterations(a, a, 1024, 1) == doctest::Approx(24.63).epsilon(1e-3));
  CHECK(std::lround(optimal_iterations(0.125, 0.125, 64, 1)) == 6);
  CHECK(std::lround(optimal_iterations(1 / 16.0, 1 / 16.0, 256, 1)) == 12);
  const double big = optimal_iterations(1e-6, 1e-6, 1e12, 1);
  CHECK(big / (M_PI / 4 * 1e6) == doctest::Approx(1.0).epsilon(1e-6));
  CHECK_THROWS_AS(optimal_iterations(0.1, 0.0, 64, 1), DegenerateUnmarkedMean);
}

TEST_CASE("character sums") {
  CHECK(character_sum({0, 0}, 2) == 16);
  for (std::uint64_t y2 = 0; y2 < 4; ++y2) CHECK(character_sum({0b10, y2}, 2) == 0);
  CHECK(character_sum_coset({0}, 3, 0b101) == 4);
  CHECK_THROWS_AS(character_sum_coset({0}, 3, 0), ZeroPeriod);
}

TEST_CASE("deferred and immediate measurement agree") {
  const auto d = deferred_vs_immediate(2, 2, 0b11, 5);
  CHECK(d.max_abs_diff < 1e-10);
  CHECK(d.expected == doctest::Approx(0.75));
  CHECK(d.p_correct_deferred == doctest::Approx(0.75));

  for (std::uint64_t s = 1; s < 8; ++s) {
    const auto e = deferred_vs_immediate(3, 2, s, 6);
    // r by direct enumeration of Y over (s-perp)^2.
    std::uint64_t r = 0, total = 0;
    for (std::uint64_t y = 0; y < 64; ++y) {
      const auto Y = unpack_rows(y, 2, 3);
      if (std::popcount((y & 7) & s) % 2 || std::popcount((y >> 3) & s) % 2) continue;
      ++total;
      r += gf2::rank(Y) == 2;
    }
    CHECK(total == 16);
    CHECK(e.r == r);
    CHECK(e.max_abs_diff < 1e-10);
    CHECK(e.p_correct_deferred == doctest::Approx(static_cast<double>(r) / 16).epsilon(1e-12));
    CHECK(e.p_correct_immediate == doctest::Approx(static_cast<double>(r) / 16).epsilon(1e-12));
  }
}
