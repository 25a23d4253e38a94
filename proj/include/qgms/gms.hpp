#pragma once

// Grover-meets-Simon with every Simon measurement deferred to the end.
//
// Search register layout: key (m qubits), y (l*n, round i at i*n), f (l*n).
// The classifier circuit appends s, flag, temp, diff, check and accept
// registers plus the solution circuit's ancillas.

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "qgms/amplify.hpp"
#include "qgms/circuit.hpp"
#include "qgms/gf2.hpp"
#include "qgms/oracle.hpp"
#include "qgms/statevector.hpp"

namespace qgms::gms {

// How a cipher seed is accepted when building an instance.
//  AsDrawn: first draw.
//  Clean:   f(k, .) is exactly 2-to-1 with period k1 and no wrong key passes
//           the plaintext check for any candidate period.
//  Ideal:   Clean, and every wrong-key slice f(k', .) is a permutation, as
//           the amplitude counting for the initial state assumes.
enum class SeedPolicy { AsDrawn, Clean, Ideal };

// MeanInversion reflects about the uniform superposition of the whole
// search register (Grover's diffusion applied to a non-uniform start);
// ReflectPrep reflects about the prepared state itself.
enum class Diffusion { MeanInversion, ReflectPrep };

std::string_view name(SeedPolicy p);
std::string_view name(Diffusion d);

struct GmsConfig {
  unsigned m = 2;
  unsigned n = 2;
  unsigned l = 2;
  unsigned t_max = 20;
  std::uint64_t seed = 7;
  std::vector<std::uint64_t> plaintexts{0, 1};
  SeedPolicy policy = SeedPolicy::Ideal;
  Diffusion diffusion = Diffusion::MeanInversion;
  // Unset: Function at n = 2, Permutation otherwise.
  std::optional<sim::CipherModel> cipher;
  unsigned max_seed_attempts = 100000;
};

sim::CipherModel cipher_model(const GmsConfig& cfg);

struct Instance {
  GmsConfig cfg;
  sim::FxOracle fx;
  std::uint64_t cipher_seed = 0;
  unsigned attempts = 0;
};

// Draws k, k1, k2 and cipher seeds from cfg.seed until the policy accepts.
// Throws Error when no seed is accepted within max_seed_attempts.
Instance make_instance(const GmsConfig& cfg);
bool accepts(const sim::FxOracle& fx, const std::vector<std::uint64_t>& plaintexts, SeedPolicy policy);

// Qubits in the search register, m + 2nl.
unsigned search_qubits(const GmsConfig& cfg);

ir::Circuit initial_state_circuit(const sim::FxOracle& fx, unsigned l);
// Throws QubitCapExceeded.
sim::StateVector prepare_initial_state(const Instance& inst);

// 1 iff rank Y = n-1 and the kernel vector s passes f(k', p) = f(k', p ^ s)
// for every plaintext p.
bool ug_classifier(std::uint64_t key_guess, const gf2::BitMatrix& y, const sim::FxOracle& fx,
                   const std::vector<std::uint64_t>& plaintexts);

// Phase oracle on the full classifier layout: compute (solution circuit,
// plaintext checks, accept bit), Z on accept, uncompute.
ir::Circuit build_ug_circuit(const sim::FxOracle& fx, unsigned l, const std::vector<std::uint64_t>& plaintexts);

// Sign pattern of the phase oracle over the search register, obtained by
// running the classifier circuit on every basis input. Throws Error if the
// circuit disagrees with ug_classifier or leaves scratch qubits dirty.
std::vector<unsigned char> marked_table(const Instance& inst);

struct AmplitudeStats {
  double N = 0;  // basis states in the register
  double r = 0;  // marked basis states
  double k0_mean = 0;
  double l0_mean = 0;
  double sigma2 = 0;
  double p_max = 0;
  double marked_mass = 0;       // sum over marked |k_i|^2
  double sum_l_sq = 0;          // sum over unmarked |l_i|^2
  double mean_sq_over_n = 0;    // |sum l_i|^2 / (N - r)^2
};

AmplitudeStats amplitude_stats(const sim::StateVector& psi, const sim::Predicate& marked);

// Counting of the initial state in the form used by the analysis: N over
// (2^m - 1) 2^{2nl} wrong-key states plus 2^{2(n-1)l} correct-key states.
struct AnalysisAccounting {
  double N = 0;
  double r_rank = 0;   // correct-key support states with rank Y = n-1
  double r_check = 0;  // support states the classifier accepts
  double sum_l_sq = 0;
  double mean_sq_over_n = 0;
  double p_max_estimate = 0;  // r/(2^m 2^{2(n-1)l}) + 2^m/(N - r), r = r_check
};

struct GmsResult {
  std::vector<double> curve;  // P(key = k and accepted) after t iterations
  double best = 0;
  unsigned best_t = 0;
  AmplitudeStats stats;
  AnalysisAccounting analysis;
  double optimal_t = 0;
  bool optimal_t_valid = false;  // r >= 1 and r/N <= 0.1
};

GmsResult run_gms(const Instance& inst);

struct HybridResult {
  std::vector<double> accept;  // per key guess: probability the classical check accepts
  std::vector<double> curve;   // P(measure k) after t Grover iterations over keys
  double best = 0;
  unsigned best_t = 0;
};

// Simon samples measured immediately, period solved classically, Grover over
// the 2^m keys with the resulting (random) marked set.
HybridResult hybrid_baseline(const Instance& inst, unsigned t_max);

// Truncated series -k0/(2 l0) + (pi/4) sqrt(N/r) - (pi/24) sqrt(r/N).
// Throws DegenerateUnmarkedMean when l0 = 0.
double optimal_iterations(double k0_mean, double l0_mean, double N, double r);

// prod_i sum_{x in F_2^n} (-1)^{x . y_i}.
std::int64_t character_sum(const std::vector<std::uint64_t>& ys, unsigned n);
// Same with x restricted to X1 = {x : x_t = 0}, t the lowest set bit of s.
std::int64_t character_sum_coset(const std::vector<std::uint64_t>& ys, unsigned n, std::uint64_t s);

// Outcome key: Y | s << (l n) | flag << (l n + n).
struct DeferredResult {
  std::map<std::uint64_t, double> immediate;
  std::map<std::uint64_t, double> deferred;
  double max_abs_diff = 0;
  double p_correct_immediate = 0;
  double p_correct_deferred = 0;
  std::uint64_t r = 0;  // matrices over s-perp with rank n-1
  double expected = 0;  // r / 2^{(n-1) l}
};

DeferredResult deferred_vs_immediate(unsigned n, unsigned l, std::uint64_t s, std::uint64_t seed);

// Y from the packed y register (row i = bits i*n .. i*n+n-1).
gf2::BitMatrix unpack_rows(std::uint64_t packed, unsigned l, unsigned n);

}  // namespace qgms::gms
