#pragma once

// XOR-form oracles |x>|y> -> |x>|y ^ f(x)> given by explicit tables, plus the
// two function families the experiments use: 2-to-1 Simon functions and the
// FX-construction difference function f(k', x) = Enc(x) ^ E(k', x).

#include <cstdint>
#include <memory>
#include <string>
#include <string_view>
#include <vector>

#include "qgms/rng.hpp"

namespace qgms::sim {

struct OracleSpec {
  std::string name;
  unsigned n_in = 0;
  unsigned n_out = 0;
  // table[x] = f(x); size 2^n_in, entries < 2^n_out.
  std::vector<std::uint64_t> table;

  std::uint64_t operator()(std::uint64_t x) const { return table[x]; }
  // Throws InvalidDimensions when the table does not match the widths.
  void validate() const;
};

struct SimonOracle {
  unsigned n = 0;
  std::uint64_t period = 0;
  std::shared_ptr<const OracleSpec> spec;

  std::uint64_t operator()(std::uint64_t x) const { return (*spec)(x); }
};

// f(x) = f(x ^ s) and f is injective on the cosets {x, x ^ s}; each coset gets
// a distinct uniformly drawn n-bit value. Throws ZeroPeriod for s = 0.
SimonOracle build_simon_oracle(unsigned n, std::uint64_t s, Rng& rng);

// Permutation: E(k', .) is a random permutation per key.
// Function: E(k', .) is a random function per key. At n = 2 the Permutation
// model cannot give a 2-to-1 correct-key slice: E(x) ^ E(x ^ k1) takes one
// value on each of the two cosets and the two values XOR to the XOR of all of
// F_2^2, which is 0.
enum class CipherModel { Permutation, Function };

std::string_view name(CipherModel c);

struct FxOracle {
  unsigned m = 0;  // key width
  unsigned n = 0;  // block width
  std::uint64_t key = 0;
  std::uint64_t k1 = 0;
  std::uint64_t k2 = 0;
  CipherModel model = CipherModel::Permutation;
  // cipher[k'][x] = E(k', x), one table per key.
  std::vector<std::vector<std::uint64_t>> cipher;
  // Table of f(k', x) indexed by k' | (x << m).
  std::shared_ptr<const OracleSpec> spec;

  std::uint64_t encrypt(std::uint64_t x) const { return cipher[key][x ^ k1] ^ k2; }
  std::uint64_t f(std::uint64_t key_guess, std::uint64_t x) const {
    return (*spec)(key_guess | (x << m));
  }
};

// E is drawn from `cipher_seed`. Throws ZeroWhiteningKey for k1 = 0.
FxOracle build_fx_oracle(unsigned m, unsigned n, std::uint64_t k, std::uint64_t k1, std::uint64_t k2,
                         std::uint64_t cipher_seed, CipherModel model = CipherModel::Permutation);

// All nonzero s with f(x) = f(x ^ s) for every x, for f given as a table over
// n-bit inputs.
std::vector<std::uint64_t> periods(const std::vector<std::uint64_t>& f, unsigned n);

// Restriction x -> f(k', x) of an FX oracle.
std::vector<std::uint64_t> key_slice(const FxOracle& fx, std::uint64_t key_guess);

}  // namespace qgms::sim
