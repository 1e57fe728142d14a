#pragma once

// Independent numerical ground truth for time-dependent Schroedinger
// evolution: midpoint step products of short-time exponentials, the exact
// rotating-frame propagator, state trajectories and the Fubini-Study speed.

#include <cstddef>
#include <functional>
#include <span>
#include <vector>

#include "spinopt/matrix.hpp"

namespace spinopt {

class HamiltonianSchedule {
 public:
  HamiltonianSchedule(std::size_t dim, std::function<Matrix(double)> evaluator);

  std::size_t dim() const noexcept { return dim_; }

  /// Throws DimensionError if the evaluator returns the wrong dimension.
  Matrix operator()(double t) const;

 private:
  std::size_t dim_;
  std::function<Matrix(double)> evaluator_;
};

class StateVector {
 public:
  explicit StateVector(std::vector<Complex> amplitudes);

  /// Basis vector e_k.
  static StateVector basis(std::size_t dim, std::size_t k);

  std::size_t dim() const noexcept { return amps_.size(); }
  const Complex& operator[](std::size_t k) const { return amps_.at(k); }
  std::span<const Complex> amplitudes() const noexcept { return amps_; }

  double norm() const noexcept;
  StateVector normalized() const;

  /// <this|other>
  Complex inner(const StateVector& other) const;

  friend StateVector operator*(const Matrix& op, const StateVector& psi);

 private:
  std::vector<Complex> amps_;
};

/// Default resolution: 10^4 midpoint steps per 2 pi of elapsed time.
inline constexpr std::size_t kStepsPerTwoPi = 10000;

std::size_t default_steps(double t0, double t1);

/// prod_k expm_unitary(H(t_k + dt/2), dt), latest factor leftmost.
Matrix time_ordered_exponential(const HamiltonianSchedule& schedule, double t0, double t1, std::size_t steps);

/// V(t,s) = e^{-iCt} e^{-i(H0 - C)(t - s)} e^{iCs}: the exact propagator of
/// H(t) = e^{-iCt} H0 e^{iCt}.
Matrix rotating_frame_propagator(const Matrix& frame_generator, const Matrix& initial_hamiltonian, double t,
                                 double s);

/// States at t0, t0 + dt, ..., t1 (steps + 1 entries) under midpoint steps.
/// Throws DomainError if psi0 is not normalized within 1e-10.
std::vector<StateVector> evolve_state(const StateVector& psi0, const HamiltonianSchedule& schedule, double t0,
                                      double t1, std::size_t steps);

/// <H^2> - <H>^2.
double energy_variance(const StateVector& psi, const Matrix& hamiltonian);

struct SpeedSample {
  double fs_speed;
  double sqrt_variance;
  double residual;
};

/// Fubini-Study speed sqrt(<dpsi|(1 - |psi><psi|)|dpsi>) by central
/// differences over uniformly spaced states, compared with sqrt(variance).
/// Endpoints are dropped, so the result has states.size() - 2 entries;
/// variances[k] must belong to states[k].
std::vector<SpeedSample> fs_speed_check(std::span<const StateVector> states, double dt,
                                        std::span<const double> variances);

}  // namespace spinopt
