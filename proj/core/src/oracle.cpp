#include "spinopt/oracle.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "spinopt/error.hpp"

namespace spinopt {

HamiltonianSchedule::HamiltonianSchedule(std::size_t dim, std::function<Matrix(double)> evaluator)
    : dim_(dim), evaluator_(std::move(evaluator)) {
  if (!evaluator_) throw DomainError("HamiltonianSchedule: empty evaluator");
}

Matrix HamiltonianSchedule::operator()(double t) const {
  Matrix h = evaluator_(t);
  if (h.dim() != dim_) throw DimensionError("HamiltonianSchedule: evaluator returned the wrong dimension");
  return h;
}

StateVector::StateVector(std::vector<Complex> amplitudes) : amps_(std::move(amplitudes)) {}

StateVector StateVector::basis(std::size_t dim, std::size_t k) {
  std::vector<Complex> amps(dim);
  amps.at(k) = 1.0;
  return StateVector(std::move(amps));
}

double StateVector::norm() const noexcept {
  double sum = 0.0;
  for (const auto& a : amps_) sum += std::norm(a);
  return std::sqrt(sum);
}

StateVector StateVector::normalized() const {
  const double n = norm();
  if (n == 0.0) throw DomainError("StateVector: cannot normalize the zero vector");
  std::vector<Complex> out(amps_);
  for (auto& a : out) a /= n;
  return StateVector(std::move(out));
}

Complex StateVector::inner(const StateVector& other) const {
  if (other.dim() != dim()) throw DimensionError("StateVector::inner: dimension mismatch");
  Complex sum = 0.0;
  for (std::size_t k = 0; k < amps_.size(); ++k) sum += std::conj(amps_[k]) * other.amps_[k];
  return sum;
}

StateVector operator*(const Matrix& op, const StateVector& psi) {
  if (op.dim() != psi.dim()) throw DimensionError("operator*: matrix/state dimension mismatch");
  std::vector<Complex> out(psi.dim());
  for (std::size_t i = 0; i < op.dim(); ++i)
    for (std::size_t j = 0; j < op.dim(); ++j) out[i] += op(i, j) * psi.amps_[j];
  return StateVector(std::move(out));
}

std::size_t default_steps(double t0, double t1) {
  const double turns = std::abs(t1 - t0) / (2.0 * std::numbers::pi);
  return std::max<std::size_t>(1, static_cast<std::size_t>(std::ceil(turns * static_cast<double>(kStepsPerTwoPi))));
}

Matrix time_ordered_exponential(const HamiltonianSchedule& schedule, double t0, double t1, std::size_t steps) {
  if (steps == 0) throw DomainError("time_ordered_exponential: steps must be >= 1");
  const double dt = (t1 - t0) / static_cast<double>(steps);
  Matrix u = Matrix::identity(schedule.dim());
  for (std::size_t k = 0; k < steps; ++k) {
    const double mid = t0 + (static_cast<double>(k) + 0.5) * dt;
    u = expm_unitary(schedule(mid), dt) * u;
  }
  return u;
}

Matrix rotating_frame_propagator(const Matrix& frame_generator, const Matrix& initial_hamiltonian, double t,
                                 double s) {
  if (frame_generator.dim() != initial_hamiltonian.dim()) {
    throw DimensionError("rotating_frame_propagator: dimension mismatch");
  }
  return expm_unitary(frame_generator, t) * expm_unitary(initial_hamiltonian - frame_generator, t - s) *
         expm_unitary(frame_generator, -s);
}

std::vector<StateVector> evolve_state(const StateVector& psi0, const HamiltonianSchedule& schedule, double t0,
                                      double t1, std::size_t steps) {
  if (steps == 0) throw DomainError("evolve_state: steps must be >= 1");
  if (psi0.dim() != schedule.dim()) throw DimensionError("evolve_state: state/schedule dimension mismatch");
  if (std::abs(psi0.norm() - 1.0) > 1e-10) throw DomainError("evolve_state: initial state is not normalized");

  const double dt = (t1 - t0) / static_cast<double>(steps);
  std::vector<StateVector> out;
  out.reserve(steps + 1);
  out.push_back(psi0);
  for (std::size_t k = 0; k < steps; ++k) {
    const double mid = t0 + (static_cast<double>(k) + 0.5) * dt;
    out.push_back(expm_unitary(schedule(mid), dt) * out.back());
  }
  return out;
}

double energy_variance(const StateVector& psi, const Matrix& hamiltonian) {
  if (psi.dim() != hamiltonian.dim()) throw DimensionError("energy_variance: dimension mismatch");
  const StateVector hpsi = hamiltonian * psi;
  const double mean = psi.inner(hpsi).real();
  const double mean_sq = hpsi.inner(hpsi).real();  // <psi|H^2|psi> for Hermitian H
  return std::max(0.0, mean_sq - mean * mean);
}

std::vector<SpeedSample> fs_speed_check(std::span<const StateVector> states, double dt,
                                        std::span<const double> variances) {
  if (states.size() < 3) throw DomainError("fs_speed_check: at least 3 states are required");
  if (variances.size() != states.size()) throw DimensionError("fs_speed_check: one variance per state is required");
  if (!(dt > 0.0)) throw DomainError("fs_speed_check: dt must be positive");

  std::vector<SpeedSample> out;
  out.reserve(states.size() - 2);
  for (std::size_t k = 1; k + 1 < states.size(); ++k) {
    const StateVector& psi = states[k];
    std::vector<Complex> d(psi.dim());
    for (std::size_t i = 0; i < psi.dim(); ++i) d[i] = (states[k + 1][i] - states[k - 1][i]) / (2.0 * dt);
    const StateVector dpsi(std::move(d));
    const double metric = std::max(0.0, dpsi.inner(dpsi).real() - std::norm(psi.inner(dpsi)));
    const double speed = std::sqrt(metric);
    const double spread = std::sqrt(variances[k]);
    out.push_back({speed, spread, std::abs(speed - spread)});
  }
  return out;
}

}  // namespace spinopt
