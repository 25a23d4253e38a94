#include "qgms/statevector.hpp"

#include <cmath>
#include <cstdlib>
#include <sstream>

#include "json.hpp"

#include "qgms/error.hpp"
#include "qgms/kernels.hpp"
#include "qgms/oracle.hpp"

namespace qgms::sim {

namespace k = kernels;

unsigned qubit_cap() {
  if (const char* env = std::getenv("QGMS_QUBIT_CAP")) {
    char* end = nullptr;
    const unsigned long v = std::strtoul(env, &end, 10);
    if (end != env && *end == '\0' && v > 0 && v <= 40) return static_cast<unsigned>(v);
  }
  return 24;
}

StateVector::StateVector(unsigned qubits) : qubits_(qubits) {
  if (qubits > qubit_cap()) throw QubitCapExceeded(qubits, qubit_cap());
  amps_.assign(std::size_t{1} << qubits, Amp{0.0, 0.0});
  amps_[0] = 1.0;
}

StateVector StateVector::basis(unsigned qubits, std::uint64_t index) {
  StateVector s(qubits);
  if (index >= s.dim()) throw InvalidDimensions("basis index out of range");
  s.amps_[0] = 0.0;
  s.amps_[index] = 1.0;
  return s;
}

StateVector StateVector::from_amplitudes(std::vector<Amp> amps) {
  const std::size_t n = amps.size();
  if (n == 0 || (n & (n - 1)) != 0) throw InvalidDimensions("amplitude count must be a power of two");
  unsigned q = 0;
  while ((std::size_t{1} << q) < n) ++q;
  if (q > qubit_cap()) throw QubitCapExceeded(q, qubit_cap());
  StateVector s;
  s.qubits_ = q;
  s.amps_ = std::move(amps);
  return s;
}

double StateVector::norm(Backend b) const {
  const double n2 = b == Backend::Omp ? k::omp::norm2(amps_.data(), dim()) : k::serial::norm2(amps_.data(), dim());
  return std::sqrt(n2);
}

namespace {

const double kInvSqrt2 = 1.0 / std::sqrt(2.0);

k::Mat2 matrix_of(ir::GateKind kind) {
  const Amp i{0.0, 1.0};
  const Amp t = std::polar(1.0, M_PI / 4);
  switch (kind) {
    case ir::GateKind::H: return {kInvSqrt2, kInvSqrt2, kInvSqrt2, -kInvSqrt2};
    case ir::GateKind::S: return {1.0, 0.0, 0.0, i};
    case ir::GateKind::Sdg: return {1.0, 0.0, 0.0, -i};
    case ir::GateKind::T: return {1.0, 0.0, 0.0, t};
    case ir::GateKind::Tdg: return {1.0, 0.0, 0.0, std::conj(t)};
    default: throw InvalidDimensions("not a single-qubit matrix gate");
  }
}

std::uint64_t mask_of(const std::vector<ir::Qubit>& qs) {
  std::uint64_t m = 0;
  for (auto q : qs) m |= std::uint64_t{1} << q;
  return m;
}

}  // namespace

void apply(StateVector& psi, const ir::Gate& g, Backend b) {
  Amp* data = psi.amplitudes().data();
  const std::size_t dim = psi.dim();
  const bool par = b == Backend::Omp;
  switch (g.kind) {
    case ir::GateKind::X:
    case ir::GateKind::CNOT:
    case ir::GateKind::Toffoli:
    case ir::GateKind::MCX:
      par ? k::omp::apply_x(data, dim, g.targets[0], mask_of(g.controls))
          : k::serial::apply_x(data, dim, g.targets[0], mask_of(g.controls));
      return;
    case ir::GateKind::Z: {
      const std::uint64_t m = mask_of(g.controls) | (std::uint64_t{1} << g.targets[0]);
      par ? k::omp::apply_phase_flip(data, dim, m) : k::serial::apply_phase_flip(data, dim, m);
      return;
    }
    case ir::GateKind::Oracle: {
      if (!g.oracle) throw UnresolvedOracle(g.oracle_name);
      std::vector<unsigned> in(g.controls.begin(), g.controls.end());
      std::vector<unsigned> out(g.targets.begin(), g.targets.end());
      const auto& t = g.oracle->table;
      par ? k::omp::apply_oracle(data, dim, t.data(), in.data(), static_cast<unsigned>(in.size()), out.data(),
                                 static_cast<unsigned>(out.size()))
          : k::serial::apply_oracle(data, dim, t.data(), in.data(), static_cast<unsigned>(in.size()),
                                    out.data(), static_cast<unsigned>(out.size()));
      return;
    }
    default: {
      const k::Mat2 u = matrix_of(g.kind);
      par ? k::omp::apply_1q(data, dim, g.targets[0], u, 0) : k::serial::apply_1q(data, dim, g.targets[0], u, 0);
    }
  }
}

void run_in_place(const ir::Circuit& c, StateVector& psi, Backend b) {
  if (c.qubit_count() != psi.qubit_count())
    throw RegisterMismatch("circuit has " + std::to_string(c.qubit_count()) + " qubits, state has " +
                           std::to_string(psi.qubit_count()));
  for (const auto& g : c.gates()) apply(psi, g, b);
}

StateVector run(const ir::Circuit& c, StateVector psi, Backend b) {
  run_in_place(c, psi, b);
  return psi;
}

StateVector random_state(unsigned qubits, Rng& rng) {
  StateVector s(qubits);
  // Box-Muller on our own uniform draws keeps the sequence portable.
  double total = 0;
  for (auto& a : s.amplitudes()) {
    const double u1 = 1.0 - uniform_unit(rng), u2 = uniform_unit(rng);
    const double r = std::sqrt(-2.0 * std::log(u1));
    a = Amp(r * std::cos(2 * M_PI * u2), r * std::sin(2 * M_PI * u2));
    total += std::norm(a);
  }
  const double scale = 1.0 / std::sqrt(total);
  for (auto& a : s.amplitudes()) a *= scale;
  return s;
}

std::uint64_t extract(std::uint64_t i, const std::vector<ir::Qubit>& qubits) {
  std::uint64_t v = 0;
  for (std::size_t j = 0; j < qubits.size(); ++j) v |= ((i >> qubits[j]) & 1U) << j;
  return v;
}

std::vector<ir::Qubit> qubits_of(const ir::Register& r) {
  std::vector<ir::Qubit> q(r.size);
  for (ir::Qubit j = 0; j < r.size; ++j) q[j] = r.start + j;
  return q;
}

std::vector<double> full_distribution(const StateVector& psi, const std::vector<ir::Qubit>& qubits) {
  for (auto q : qubits)
    if (q >= psi.qubit_count()) throw InvalidDimensions("measured qubit out of range");
  std::vector<double> dist(std::size_t{1} << qubits.size(), 0.0);
  for (std::size_t i = 0; i < psi.dim(); ++i) dist[extract(i, qubits)] += std::norm(psi[i]);
  return dist;
}

Measurement measure(const StateVector& psi, const std::vector<ir::Qubit>& qubits, Rng& rng) {
  const auto dist = full_distribution(psi, qubits);
  const double u = uniform_unit(rng);
  double acc = 0;
  std::uint64_t outcome = dist.size() - 1;
  for (std::size_t o = 0; o < dist.size(); ++o) {
    acc += dist[o];
    if (u < acc) {
      outcome = o;
      break;
    }
  }
  while (dist[outcome] == 0.0 && outcome > 0) --outcome;
  Measurement m{outcome, psi};
  const double scale = 1.0 / std::sqrt(dist[outcome]);
  for (std::size_t i = 0; i < psi.dim(); ++i)
    m.post[i] = extract(i, qubits) == outcome ? psi[i] * scale : Amp{0.0, 0.0};
  return m;
}

double distance_up_to_phase(const StateVector& a, const StateVector& b) {
  if (a.dim() != b.dim()) throw RegisterMismatch("states differ in size");
  std::size_t big = 0;
  for (std::size_t i = 0; i < a.dim(); ++i)
    if (std::abs(a[i]) > std::abs(a[big])) big = i;
  Amp phase = 1.0;
  if (std::abs(b[big]) > 0) phase = a[big] / b[big] / std::abs(a[big] / b[big]);
  double d = 0;
  for (std::size_t i = 0; i < a.dim(); ++i) d = std::max(d, std::abs(a[i] - phase * b[i]));
  return d;
}

std::string to_json(const StateVector& psi, const std::vector<ir::Register>& registers) {
  nlohmann::ordered_json j;
  j["qubits"] = psi.qubit_count();
  j["registers"] = nlohmann::json::array();
  for (const auto& r : registers) j["registers"].push_back({{"name", r.name}, {"start", r.start}, {"size", r.size}});
  auto& amps = j["amplitudes"] = nlohmann::json::array();
  for (std::size_t i = 0; i < psi.dim(); ++i)
    if (std::abs(psi[i]) > 1e-12) amps.push_back({i, psi[i].real(), psi[i].imag()});
  return j.dump();
}

std::string distribution_csv(const std::vector<double>& dist) {
  std::ostringstream out;
  out.precision(17);
  out << "outcome,probability\n";
  for (std::size_t o = 0; o < dist.size(); ++o) out << o << ',' << dist[o] << '\n';
  return out.str();
}

}  // namespace qgms::sim
