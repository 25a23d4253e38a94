#include "qgms/amplify.hpp"

#include <cmath>

#include "qgms/error.hpp"
#include "qgms/kernels.hpp"

namespace qgms::sim {

namespace {

class Amplifier {
 public:
  Amplifier(const ir::Circuit& prep, const Predicate& good)
      : prep_(prep), unprep_(ir::invert(prep)), psi_(prep.qubit_count()) {
    marked_.resize(psi_.dim());
    for (std::size_t i = 0; i < psi_.dim(); ++i) marked_[i] = good(i) ? 1 : 0;
    run_in_place(prep_, psi_);
  }

  void step() {
    kernels::omp::apply_phase_table(psi_.amplitudes().data(), psi_.dim(), marked_.data());
    run_in_place(unprep_, psi_);
    psi_[0] = -psi_[0];
    run_in_place(prep_, psi_);
    for (auto& a : psi_.amplitudes()) a = -a;
  }

  double success() const {
    double p = 0;
    for (std::size_t i = 0; i < psi_.dim(); ++i)
      if (marked_[i]) p += std::norm(psi_[i]);
    return p;
  }

  const StateVector& state() const { return psi_; }

 private:
  const ir::Circuit& prep_;
  ir::Circuit unprep_;
  StateVector psi_;
  std::vector<unsigned char> marked_;
};

}  // namespace

StateVector amplitude_amplify(const ir::Circuit& prep, const Predicate& good, unsigned t) {
  Amplifier a(prep, good);
  for (unsigned i = 0; i < t; ++i) a.step();
  return a.state();
}

StateVector amplitude_amplify(const ir::Circuit& prep, const OracleSpec& marker, unsigned t) {
  if (marker.n_in != prep.qubit_count() || marker.n_out != 1)
    throw InvalidDimensions("marker must map every qubit of the prepared register to one bit");
  marker.validate();
  return amplitude_amplify(prep, [&](std::uint64_t i) { return marker(i) != 0; }, t);
}

double probability(const StateVector& psi, const Predicate& good) {
  double p = 0;
  for (std::size_t i = 0; i < psi.dim(); ++i)
    if (good(i)) p += std::norm(psi[i]);
  return p;
}

std::vector<double> amplification_curve(const ir::Circuit& prep, const Predicate& good, unsigned t_max) {
  Amplifier a(prep, good);
  std::vector<double> curve{a.success()};
  for (unsigned t = 1; t <= t_max; ++t) {
    a.step();
    curve.push_back(a.success());
  }
  return curve;
}

double grover_success(double N, double r, unsigned t) {
  const double theta = std::asin(std::sqrt(r / N));
  const double s = std::sin((2.0 * t + 1.0) * theta);
  return s * s;
}

ir::Circuit uniform_prep(unsigned qubits) {
  ir::CircuitBuilder b;
  const auto r = b.declare("q", qubits);
  for (unsigned q = 0; q < qubits; ++q) b.h(r[q]);
  return b.build();
}

}  // namespace qgms::sim
