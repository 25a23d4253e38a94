#include "qgms/oracle.hpp"

#include <map>

#include "qgms/error.hpp"

namespace qgms::sim {

void OracleSpec::validate() const {
  if (n_in >= 40 || n_out >= 64) throw InvalidDimensions("oracle '" + name + "' is too wide");
  if (table.size() != (std::size_t{1} << n_in))
    throw InvalidDimensions("oracle '" + name + "' table size does not match input width");
  for (auto v : table)
    if (v >> n_out) throw InvalidDimensions("oracle '" + name + "' value exceeds output width");
}

std::string_view name(CipherModel c) { return c == CipherModel::Permutation ? "permutation" : "function"; }

SimonOracle build_simon_oracle(unsigned n, std::uint64_t s, Rng& rng) {
  if (n < 2) throw InvalidDimensions("Simon oracle needs n >= 2");
  if (s == 0) throw ZeroPeriod();
  const std::uint64_t size = std::uint64_t{1} << n;
  if (s >= size) throw InvalidDimensions("period does not fit in n bits");

  // First 2^(n-1) entries of a random permutation are distinct values, one
  // per coset.
  const auto values = random_permutation(rng, size);
  auto spec = std::make_shared<OracleSpec>();
  spec->name = "simon";
  spec->n_in = n;
  spec->n_out = n;
  spec->table.assign(size, 0);
  std::uint64_t next = 0;
  for (std::uint64_t x = 0; x < size; ++x) {
    const std::uint64_t partner = x ^ s;
    if (partner < x) {
      spec->table[x] = spec->table[partner];
    } else {
      spec->table[x] = values[next++];
    }
  }
  return SimonOracle{n, s, std::move(spec)};
}

FxOracle build_fx_oracle(unsigned m, unsigned n, std::uint64_t k, std::uint64_t k1, std::uint64_t k2,
                         std::uint64_t cipher_seed, CipherModel model) {
  if (m < 1 || n < 1) throw InvalidDimensions("FX oracle needs m, n >= 1");
  if (m + n >= 32) throw InvalidDimensions("FX oracle table too large");
  if (k1 == 0) throw ZeroWhiteningKey();
  const std::uint64_t keys = std::uint64_t{1} << m;
  const std::uint64_t block = std::uint64_t{1} << n;
  if (k >= keys || k1 >= block || k2 >= block)
    throw InvalidDimensions("FX keys do not fit the declared widths");

  FxOracle fx;
  fx.m = m;
  fx.n = n;
  fx.key = k;
  fx.k1 = k1;
  fx.k2 = k2;
  fx.model = model;
  Rng rng(cipher_seed);
  fx.cipher.reserve(keys);
  for (std::uint64_t kk = 0; kk < keys; ++kk) {
    if (model == CipherModel::Permutation) {
      fx.cipher.push_back(random_permutation(rng, block));
    } else {
      std::vector<std::uint64_t> row(block);
      for (auto& v : row) v = uniform_below(rng, block);
      fx.cipher.push_back(std::move(row));
    }
  }

  auto spec = std::make_shared<OracleSpec>();
  spec->name = "fx";
  spec->n_in = m + n;
  spec->n_out = n;
  spec->table.resize(keys * block);
  for (std::uint64_t guess = 0; guess < keys; ++guess)
    for (std::uint64_t x = 0; x < block; ++x)
      spec->table[guess | (x << m)] = fx.encrypt(x) ^ fx.cipher[guess][x];
  fx.spec = std::move(spec);
  return fx;
}

std::vector<std::uint64_t> periods(const std::vector<std::uint64_t>& f, unsigned n) {
  const std::uint64_t size = std::uint64_t{1} << n;
  std::vector<std::uint64_t> out;
  for (std::uint64_t s = 1; s < size; ++s) {
    bool ok = true;
    for (std::uint64_t x = 0; x < size && ok; ++x) ok = f[x] == f[x ^ s];
    if (ok) out.push_back(s);
  }
  return out;
}

std::vector<std::uint64_t> key_slice(const FxOracle& fx, std::uint64_t key_guess) {
  const std::uint64_t block = std::uint64_t{1} << fx.n;
  std::vector<std::uint64_t> f(block);
  for (std::uint64_t x = 0; x < block; ++x) f[x] = fx.f(key_guess, x);
  return f;
}

}  // namespace qgms::sim
