#include "qgms/gms.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <set>

#include "qgms/error.hpp"
#include "qgms/kernels.hpp"
#include "qgms/simon.hpp"
#include "qgms/sparse_state.hpp"
#include "qgms/synth.hpp"

namespace qgms::gms {

using ir::Qubit;

std::string_view name(SeedPolicy p) {
  switch (p) {
    case SeedPolicy::AsDrawn: return "as-drawn";
    case SeedPolicy::Clean: return "clean";
    case SeedPolicy::Ideal: return "ideal";
  }
  return "?";
}

std::string_view name(Diffusion d) {
  switch (d) {
    case Diffusion::MeanInversion: return "mean-inversion";
    case Diffusion::ReflectPrep: return "reflect-prep";
  }
  return "?";
}

unsigned search_qubits(const GmsConfig& cfg) { return cfg.m + 2 * cfg.n * cfg.l; }

gf2::BitMatrix unpack_rows(std::uint64_t packed, unsigned l, unsigned n) {
  return gf2::BitMatrix::from_packed(l, n, packed);
}

// ---------------------------------------------------------------------------
// Instances

namespace {

bool passes(const sim::FxOracle& fx, std::uint64_t key_guess, std::uint64_t s,
            const std::vector<std::uint64_t>& plaintexts) {
  for (auto p : plaintexts)
    if (fx.f(key_guess, p) != fx.f(key_guess, p ^ s)) return false;
  return true;
}

}  // namespace

bool accepts(const sim::FxOracle& fx, const std::vector<std::uint64_t>& plaintexts, SeedPolicy policy) {
  if (policy == SeedPolicy::AsDrawn) return true;
  const std::uint64_t keys = std::uint64_t{1} << fx.m;
  const std::uint64_t block = std::uint64_t{1} << fx.n;
  const auto right = sim::key_slice(fx, fx.key);
  if (std::set<std::uint64_t>(right.begin(), right.end()).size() != block / 2) return false;
  for (std::uint64_t k = 0; k < keys; ++k) {
    for (std::uint64_t s = 1; s < block; ++s) {
      const bool expected = k == fx.key && s == fx.k1;
      if (passes(fx, k, s, plaintexts) != expected) return false;
    }
    if (policy == SeedPolicy::Ideal && k != fx.key) {
      const auto f = sim::key_slice(fx, k);
      if (std::set<std::uint64_t>(f.begin(), f.end()).size() != block) return false;
    }
  }
  return true;
}

sim::CipherModel cipher_model(const GmsConfig& cfg) {
  if (cfg.cipher) return *cfg.cipher;
  return cfg.n == 2 ? sim::CipherModel::Function : sim::CipherModel::Permutation;
}

Instance make_instance(const GmsConfig& cfg) {
  if (cfg.m < 1 || cfg.n < 2 || cfg.l < 1) throw InvalidDimensions("need m >= 1, n >= 2, l >= 1");
  if (cfg.plaintexts.empty()) throw InvalidDimensions("at least one plaintext is required");
  for (auto p : cfg.plaintexts)
    if (p >> cfg.n) throw InvalidDimensions("plaintext does not fit in n bits");
  Rng rng(cfg.seed);
  const std::uint64_t key = uniform_below(rng, std::uint64_t{1} << cfg.m);
  const std::uint64_t k1 = 1 + uniform_below(rng, (std::uint64_t{1} << cfg.n) - 1);
  const std::uint64_t k2 = uniform_below(rng, std::uint64_t{1} << cfg.n);
  for (unsigned attempt = 1; attempt <= cfg.max_seed_attempts; ++attempt) {
    const std::uint64_t cipher_seed = rng();
    auto fx = sim::build_fx_oracle(cfg.m, cfg.n, key, k1, k2, cipher_seed, cipher_model(cfg));
    if (accepts(fx, cfg.plaintexts, cfg.policy)) return Instance{cfg, std::move(fx), cipher_seed, attempt};
  }
  throw Error("no cipher seed satisfied the '" + std::string(name(cfg.policy)) + "' policy within " +
              std::to_string(cfg.max_seed_attempts) + " draws" +
              (cfg.policy == SeedPolicy::Ideal ? "; every wrong-key slice being a permutation is rare beyond tiny "
                                                  "instances, the clean policy drops that condition"
                                                : ""));
}

// ---------------------------------------------------------------------------
// Initial state and classifier

ir::Circuit initial_state_circuit(const sim::FxOracle& fx, unsigned l) {
  const unsigned m = fx.m, n = fx.n;
  ir::CircuitBuilder b;
  const auto key = b.declare("key", m);
  const auto y = b.declare("y", n * l);
  const auto f = b.declare("f", n * l);
  for (unsigned q = 0; q < m; ++q) b.h(key[q]);
  for (unsigned q = 0; q < n * l; ++q) b.h(y[q]);
  for (unsigned i = 0; i < l; ++i) {
    std::vector<Qubit> in, out;
    for (unsigned q = 0; q < m; ++q) in.push_back(key[q]);
    for (unsigned j = 0; j < n; ++j) {
      in.push_back(y[i * n + j]);
      out.push_back(f[i * n + j]);
    }
    b.add(ir::Gate::oracle_block(fx.spec, in, out));
  }
  for (unsigned q = 0; q < n * l; ++q) b.h(y[q]);
  return b.build();
}

sim::StateVector prepare_initial_state(const Instance& inst) {
  const unsigned q = search_qubits(inst.cfg);
  if (q > sim::qubit_cap()) throw QubitCapExceeded(q, sim::qubit_cap());
  return sim::run(initial_state_circuit(inst.fx, inst.cfg.l), sim::StateVector(q));
}

bool ug_classifier(std::uint64_t key_guess, const gf2::BitMatrix& y, const sim::FxOracle& fx,
                   const std::vector<std::uint64_t>& plaintexts) {
  if (plaintexts.empty()) throw InvalidDimensions("at least one plaintext is required");
  if (y.cols() != fx.n) throw InvalidDimensions("Y must have n columns");
  if (gf2::rank(y) != fx.n - 1) return false;
  const std::uint64_t s = gf2::nullspace_basis(y).at(0).to_uint();
  return passes(fx, key_guess, s, plaintexts);
}

ir::Circuit build_ug_circuit(const sim::FxOracle& fx, unsigned l, const std::vector<std::uint64_t>& plaintexts) {
  const unsigned m = fx.m, n = fx.n;
  for (auto p : plaintexts)
    if (p >> n) throw InvalidDimensions("plaintext does not fit in n bits");
  const ir::Circuit solve = synth::build_uqge_solution(n, l);

  ir::CircuitBuilder b;
  const auto key = b.declare("key", m);
  const auto y = b.declare("y", n * l);
  b.declare("f", n * l);
  const auto s = b.declare("s", n);
  const auto flag = b.declare("flag", 1);
  const auto temp = b.declare("temp", n);
  const auto diff = b.declare("diff", n);
  const auto check = b.declare("check", static_cast<Qubit>(plaintexts.size()));
  const auto accept = b.declare("accept", 1);
  const auto& solve_anc = solve.reg("ancilla");
  std::vector<Qubit> map(solve.qubit_count());
  for (Qubit q = 0; q < solve.qubit_count(); ++q) {
    if (q < n * l)
      map[q] = y[q];
    else if (q < n * l + n)
      map[q] = s[q - n * l];
    else if (q == n * l + n)
      map[q] = flag[0];
  }
  for (Qubit j = 0; j < solve_anc.size; ++j) map[solve_anc[j]] = b.alloc_ancilla();

  std::vector<ir::Gate> compute;
  for (ir::Gate g : solve.gates()) {
    for (auto& q : g.controls) q = map[q];
    for (auto& q : g.targets) q = map[q];
    compute.push_back(std::move(g));
  }

  std::vector<Qubit> oracle_in, diff_q;
  for (unsigned q = 0; q < m; ++q) oracle_in.push_back(key[q]);
  for (unsigned j = 0; j < n; ++j) {
    oracle_in.push_back(temp[j]);
    diff_q.push_back(diff[j]);
  }
  for (std::size_t c = 0; c < plaintexts.size(); ++c) {
    std::vector<ir::Gate> load;
    for (unsigned j = 0; j < n; ++j)
      if ((plaintexts[c] >> j) & 1U) load.push_back(ir::Gate::x(temp[j]));
    load.push_back(ir::Gate::oracle_block(fx.spec, oracle_in, diff_q));
    for (unsigned j = 0; j < n; ++j) load.push_back(ir::Gate::cnot(s[j], temp[j]));
    load.push_back(ir::Gate::oracle_block(fx.spec, oracle_in, diff_q));
    compute.insert(compute.end(), load.begin(), load.end());
    // check_c = [diff == 0]
    for (auto q : diff_q) compute.push_back(ir::Gate::x(q));
    compute.push_back(diff_q.size() == 1 ? ir::Gate::cnot(diff_q[0], check[c]) : ir::Gate::mcx(diff_q, check[c]));
    for (auto q : diff_q) compute.push_back(ir::Gate::x(q));
    compute.insert(compute.end(), load.rbegin(), load.rend());
  }
  std::vector<Qubit> checks;
  for (std::size_t c = 0; c < plaintexts.size(); ++c) checks.push_back(check[c]);
  compute.push_back(ir::Gate::x(flag[0]));
  checks.push_back(flag[0]);
  compute.push_back(checks.size() == 1 ? ir::Gate::cnot(checks[0], accept[0])
                    : checks.size() == 2 ? ir::Gate::toffoli(checks[0], checks[1], accept[0])
                                         : ir::Gate::mcx(checks, accept[0]));
  compute.push_back(ir::Gate::x(flag[0]));

  b.begin_stage("compute");
  for (const auto& g : compute) b.add(g);
  b.begin_stage("phase");
  b.add(ir::Gate::z(accept[0]));
  b.begin_stage("uncompute");
  for (auto it = compute.rbegin(); it != compute.rend(); ++it) b.add(*it);
  b.end_stage();
  return b.build();
}

std::vector<unsigned char> marked_table(const Instance& inst) {
  const auto& cfg = inst.cfg;
  const ir::Circuit ug = build_ug_circuit(inst.fx, cfg.l, cfg.plaintexts);
  const auto& key = ug.reg("key");
  const auto& y = ug.reg("y");
  const auto& f = ug.reg("f");
  const unsigned width = search_qubits(cfg);
  if (width >= 40) throw EnumerationTooLarge("search register too wide to tabulate");
  const std::uint64_t dim = std::uint64_t{1} << width;
  std::vector<unsigned char> marked(dim);
  const std::uint64_t key_mask = (std::uint64_t{1} << cfg.m) - 1;
  const std::uint64_t y_mask = (std::uint64_t{1} << (cfg.n * cfg.l)) - 1;
  for (std::uint64_t i = 0; i < dim; ++i) {
    const std::uint64_t k = i & key_mask, yv = (i >> cfg.m) & y_mask, fv = i >> (cfg.m + cfg.n * cfg.l);
    sim::BasisState bs(ug.qubit_count());
    bs.write(key, k);
    bs.write(y, yv);
    bs.write(f, fv);
    const sim::BasisState before = bs;
    sim::run_in_place(ug, bs);
    const bool flipped = bs.sign() < 0;
    if (flipped) bs.negate();
    if (!(bs == before)) throw Error("classifier circuit left scratch qubits dirty on input " + std::to_string(i));
    if (flipped != ug_classifier(k, unpack_rows(yv, cfg.l, cfg.n), inst.fx, cfg.plaintexts))
      throw Error("classifier circuit disagrees with the classical classifier on input " + std::to_string(i));
    marked[i] = flipped;
  }
  return marked;
}

// ---------------------------------------------------------------------------
// Amplitude statistics and the deferred search

AmplitudeStats amplitude_stats(const sim::StateVector& psi, const sim::Predicate& marked) {
  AmplitudeStats st;
  st.N = static_cast<double>(psi.dim());
  sim::Amp k_sum = 0, l_sum = 0;
  for (std::size_t i = 0; i < psi.dim(); ++i) {
    if (marked(i)) {
      st.r += 1;
      k_sum += psi[i];
      st.marked_mass += std::norm(psi[i]);
    } else {
      l_sum += psi[i];
      st.sum_l_sq += std::norm(psi[i]);
    }
  }
  const double unmarked = st.N - st.r;
  st.k0_mean = st.r > 0 ? (k_sum / st.r).real() : 0.0;
  st.l0_mean = unmarked > 0 ? (l_sum / unmarked).real() : 0.0;
  if (unmarked > 0) {
    const sim::Amp mean = l_sum / unmarked;
    double var = 0;
    for (std::size_t i = 0; i < psi.dim(); ++i)
      if (!marked(i)) var += std::norm(psi[i] - mean);
    st.sigma2 = var / unmarked;
    st.mean_sq_over_n = std::norm(l_sum) / (unmarked * unmarked);
  }
  st.p_max = 1.0 - unmarked * st.sigma2;
  return st;
}

double optimal_iterations(double k0_mean, double l0_mean, double N, double r) {
  if (l0_mean == 0.0) throw DegenerateUnmarkedMean();
  if (r < 1 || N <= r) throw InvalidDimensions("need 1 <= r < N");
  return -0.5 * k0_mean / l0_mean + M_PI / 4 * std::sqrt(N / r) - M_PI / 24 * std::sqrt(r / N);
}

namespace {

AnalysisAccounting analysis_accounting(const Instance& inst, const sim::StateVector& psi0,
                                 const std::vector<unsigned char>& marked) {
  const auto& cfg = inst.cfg;
  const double two_m = std::ldexp(1.0, static_cast<int>(cfg.m));
  const double wrong = std::ldexp(1.0, static_cast<int>(2 * cfg.n * cfg.l));
  const double right = std::ldexp(1.0, static_cast<int>(2 * (cfg.n - 1) * cfg.l));
  const std::uint64_t key_mask = (std::uint64_t{1} << cfg.m) - 1;
  const std::uint64_t y_mask = (std::uint64_t{1} << (cfg.n * cfg.l)) - 1;
  AnalysisAccounting pa;
  pa.N = (two_m - 1) * wrong + right;
  for (std::size_t i = 0; i < psi0.dim(); ++i) {
    if (std::abs(psi0[i]) <= 1e-12) continue;
    if (marked[i]) pa.r_check += 1;
    if ((i & key_mask) == inst.fx.key &&
        gf2::rank(unpack_rows((i >> cfg.m) & y_mask, cfg.l, cfg.n)) == cfg.n - 1)
      pa.r_rank += 1;
  }
  const double r = pa.r_check;
  pa.sum_l_sq = (two_m - 1) / two_m + (right - r) / (two_m * right);
  pa.mean_sq_over_n = two_m / ((pa.N - r) * (pa.N - r));
  pa.p_max_estimate = r / (two_m * right) + two_m / (pa.N - r);
  return pa;
}

}  // namespace

GmsResult run_gms(const Instance& inst) {
  const auto& cfg = inst.cfg;
  const sim::StateVector psi0 = prepare_initial_state(inst);
  const auto marked = marked_table(inst);
  const std::uint64_t key_mask = (std::uint64_t{1} << cfg.m) - 1;

  GmsResult res;
  res.stats = amplitude_stats(psi0, [&](std::uint64_t i) { return marked[i] != 0; });
  res.analysis = analysis_accounting(inst, psi0, marked);
  if (res.stats.r >= 1 && res.stats.l0_mean != 0.0) {
    res.optimal_t = optimal_iterations(res.stats.k0_mean, res.stats.l0_mean, res.stats.N, res.stats.r);
    res.optimal_t_valid = res.stats.r / res.stats.N <= 0.1;
  }

  auto success = [&](const sim::StateVector& psi) {
    double p = 0;
    for (std::size_t i = 0; i < psi.dim(); ++i)
      if (marked[i] && (i & key_mask) == inst.fx.key) p += std::norm(psi[i]);
    return p;
  };

  sim::StateVector psi = psi0;
  for (unsigned t = 0;; ++t) {
    const double p = success(psi);
    res.curve.push_back(p);
    if (p > res.best) {
      res.best = p;
      res.best_t = t;
    }
    if (t == cfg.t_max) break;
    auto* data = psi.amplitudes().data();
    sim::kernels::omp::apply_phase_table(data, psi.dim(), marked.data());
    if (cfg.diffusion == Diffusion::MeanInversion) {
      sim::kernels::omp::reflect_about_mean(data, psi.dim());
    } else {
      sim::Amp overlap = 0;
      for (std::size_t i = 0; i < psi.dim(); ++i) overlap += std::conj(psi0[i]) * psi[i];
      for (std::size_t i = 0; i < psi.dim(); ++i) psi[i] = 2.0 * overlap * psi0[i] - psi[i];
    }
  }
  return res;
}

// ---------------------------------------------------------------------------
// Immediate-measurement baseline

namespace {

// Canonical reduced basis of a subspace of F_2^n, highest-bit pivots.
using Basis = std::vector<std::uint64_t>;

Basis insert(Basis b, std::uint64_t v) {
  for (auto w : b)
    if (v & std::bit_floor(w)) v ^= w;
  if (v == 0) return b;
  const std::uint64_t top = std::bit_floor(v);
  for (auto& w : b)
    if (w & top) w ^= v;
  b.push_back(v);
  std::sort(b.begin(), b.end());
  return b;
}

bool contains(const Basis& b, std::uint64_t v) {
  for (auto w : b)
    if (v & std::bit_floor(w)) v ^= w;
  return v == 0;
}

std::uint64_t kernel_vector(const Basis& b, unsigned n) {
  for (std::uint64_t s = 1; s < (std::uint64_t{1} << n); ++s) {
    bool ok = true;
    for (auto w : b) ok = ok && (std::popcount(w & s) % 2 == 0);
    if (ok) return s;
  }
  return 0;
}

// Probability that sampling y ~ P until the span has dimension n-1 ends in a
// subspace whose kernel vector passes the plaintext check.
double acceptance(const std::vector<double>& P, unsigned n, const std::function<bool(std::uint64_t)>& check) {
  std::map<Basis, double> layer{{Basis{}, 1.0}};
  double accept = 0;
  for (unsigned d = 0; d + 1 < n; ++d) {
    std::map<Basis, double> next;
    for (const auto& [basis, p] : layer) {
      double stay = 0;
      for (std::uint64_t y = 0; y < P.size(); ++y)
        if (contains(basis, y)) stay += P[y];
      if (stay >= 1.0 - 1e-15) continue;  // no sample can grow the span
      for (std::uint64_t y = 0; y < P.size(); ++y)
        if (P[y] > 0 && !contains(basis, y)) next[insert(basis, y)] += p * P[y] / (1.0 - stay);
    }
    layer = std::move(next);
  }
  for (const auto& [basis, p] : layer)
    if (check(kernel_vector(basis, n))) accept += p;
  return accept;
}

}  // namespace

HybridResult hybrid_baseline(const Instance& inst, unsigned t_max) {
  const auto& fx = inst.fx;
  const unsigned keys = 1U << fx.m;
  if (keys > 16) throw EnumerationTooLarge("hybrid baseline enumerates marked sets; m <= 4");
  HybridResult h;
  for (std::uint64_t k = 0; k < keys; ++k) {
    const auto f = sim::key_slice(fx, k);
    const auto P = sim::simon_sample_distribution(f, fx.n);
    h.accept.push_back(acceptance(P, fx.n, [&](std::uint64_t s) { return passes(fx, k, s, inst.cfg.plaintexts); }));
  }
  h.curve.assign(t_max + 1, 0.0);
  for (std::uint64_t set = 0; set < (std::uint64_t{1} << keys); ++set) {
    double weight = 1;
    std::vector<unsigned char> mark(keys);
    for (unsigned k = 0; k < keys; ++k) {
      mark[k] = (set >> k) & 1U;
      weight *= mark[k] ? h.accept[k] : 1.0 - h.accept[k];
    }
    if (weight == 0) continue;
    std::vector<sim::Amp> amps(keys, 1.0 / std::sqrt(static_cast<double>(keys)));
    for (unsigned t = 0; t <= t_max; ++t) {
      h.curve[t] += weight * std::norm(amps[fx.key]);
      sim::kernels::serial::apply_phase_table(amps.data(), keys, mark.data());
      sim::kernels::serial::reflect_about_mean(amps.data(), keys);
    }
  }
  for (unsigned t = 0; t <= t_max; ++t)
    if (h.curve[t] > h.best) {
      h.best = h.curve[t];
      h.best_t = t;
    }
  return h;
}

// ---------------------------------------------------------------------------
// Character sums

std::int64_t character_sum(const std::vector<std::uint64_t>& ys, unsigned n) {
  std::int64_t total = 1;
  for (auto y : ys) {
    std::int64_t s = 0;
    for (std::uint64_t x = 0; x < (std::uint64_t{1} << n); ++x) s += (std::popcount(x & y) & 1) ? -1 : 1;
    total *= s;
  }
  return total;
}

std::int64_t character_sum_coset(const std::vector<std::uint64_t>& ys, unsigned n, std::uint64_t s) {
  if (s == 0) throw ZeroPeriod();
  const std::uint64_t t = s & (~s + 1);
  std::int64_t total = 1;
  for (auto y : ys) {
    std::int64_t sum = 0;
    for (std::uint64_t x = 0; x < (std::uint64_t{1} << n); ++x)
      if (!(x & t)) sum += (std::popcount(x & y) & 1) ? -1 : 1;
    total *= sum;
  }
  return total;
}

// ---------------------------------------------------------------------------
// Deferred versus immediate measurement of parallel Simon rounds

DeferredResult deferred_vs_immediate(unsigned n, unsigned l, std::uint64_t s, std::uint64_t seed) {
  Rng rng(seed);
  const auto oracle = sim::build_simon_oracle(n, s, rng);
  const sim::StateVector psi = sim::parallel_simon(oracle, l);
  const unsigned ln = n * l;
  DeferredResult res;

  const auto ydist = sim::y_marginal(psi, n, l);
  for (std::uint64_t yv = 0; yv < ydist.size(); ++yv) {
    if (ydist[yv] <= 1e-15) continue;
    const auto Y = unpack_rows(yv, l, n);
    std::uint64_t sol = 0, flag = 1;
    if (gf2::rank(Y) == n - 1) {
      sol = gf2::nullspace_basis(Y).at(0).to_uint();
      flag = 0;
    }
    res.immediate[yv | sol << ln | flag << (ln + n)] += ydist[yv];
  }

  const ir::Circuit solve = synth::build_uqge_solution(n, l);
  const unsigned width = solve.qubit_count() + ln;
  auto regs = solve.registers();
  regs.push_back(ir::Register{"f", solve.qubit_count(), ln});
  std::vector<Qubit> ident(solve.qubit_count());
  for (Qubit q = 0; q < ident.size(); ++q) ident[q] = q;
  const ir::Circuit wide = ir::remap(solve, ident, width, regs);
  std::vector<Qubit> place(2 * ln);
  for (Qubit q = 0; q < ln; ++q) {
    place[q] = q;
    place[ln + q] = solve.qubit_count() + q;
  }
  sim::SparseState state = sim::SparseState::embed(psi, width, place);
  sim::run_in_place(wide, state);
  std::vector<Qubit> out(ln + n + 1);
  for (Qubit q = 0; q < ln + n + 1; ++q) out[q] = q;
  for (const auto& [o, p] : sim::distribution(state, out))
    if (p > 1e-15) res.deferred[o] += p;

  std::set<std::uint64_t> keys;
  for (const auto& [o, p] : res.immediate) keys.insert(o);
  for (const auto& [o, p] : res.deferred) keys.insert(o);
  for (auto o : keys) {
    const double a = res.immediate.count(o) ? res.immediate.at(o) : 0.0;
    const double b = res.deferred.count(o) ? res.deferred.at(o) : 0.0;
    res.max_abs_diff = std::max(res.max_abs_diff, std::abs(a - b));
    if (((o >> ln) & ((std::uint64_t{1} << n) - 1)) == s) {
      res.p_correct_immediate += a;
      res.p_correct_deferred += b;
    }
  }

  std::vector<std::uint64_t> perp;
  for (std::uint64_t v = 0; v < (std::uint64_t{1} << n); ++v)
    if (std::popcount(v & s) % 2 == 0) perp.push_back(v);
  const std::uint64_t total = std::uint64_t{1} << ((n - 1) * l);
  for (std::uint64_t idx = 0; idx < total; ++idx) {
    std::uint64_t yv = 0, rest = idx;
    for (unsigned i = 0; i < l; ++i) {
      yv |= perp[rest % perp.size()] << (i * n);
      rest /= perp.size();
    }
    if (gf2::rank(unpack_rows(yv, l, n)) == n - 1) ++res.r;
  }
  res.expected = static_cast<double>(res.r) / static_cast<double>(total);
  return res;
}

}  // namespace qgms::gms
