#pragma once

// The quantum brachistochrone as a dynamical system on generator
// coefficients: i d/dt (H + F) = [H, F], with H spanned by the Hamiltonian
// labels S of a ControlSplit and F by the complementary constraint labels.

#include <cstddef>
#include <span>
#include <string>
#include <vector>

#include "spinopt/error.hpp"
#include "spinopt/generators.hpp"
#include "spinopt/matrix.hpp"

namespace spinopt {

/// Partition of a basis into Hamiltonian indices S and constraint indices S^c.
/// Both index lists follow basis order.
class ControlSplit {
 public:
  /// Throws DomainError on empty, duplicate or out-of-range indices.
  ControlSplit(GeneratorBasis basis, std::vector<std::size_t> hamiltonian_indices);

  static ControlSplit from_labels(GeneratorBasis basis, std::span<const std::string> hamiltonian_labels);

  const GeneratorBasis& basis() const noexcept { return basis_; }
  std::span<const std::size_t> hamiltonian_indices() const noexcept { return hamiltonian_; }
  std::span<const std::size_t> constraint_indices() const noexcept { return constraint_; }
  std::vector<std::string> hamiltonian_labels() const;
  std::vector<std::string> constraint_labels() const;

  Matrix hamiltonian(std::span<const double> h_coeffs) const;
  Matrix constraint(std::span<const double> f_coeffs) const;

 private:
  GeneratorBasis basis_;
  std::vector<std::size_t> hamiltonian_;
  std::vector<std::size_t> constraint_;
};

/// su2 split with S = {sx, sy} and constraint sz.
ControlSplit su2_split();

/// su4 split with S = {s30, s21, s22, s23} (beta and the alpha triple) and the
/// remaining eleven labels as constraint.
ControlSplit dirac_split();

struct OperatorPair {
  std::vector<double> h;  // over S
  std::vector<double> f;  // over S^c
  double time = 0.0;
};

/// Projects H and F onto the split. Throws DomainError if either matrix has a
/// component outside its span (beyond 1e-10), since projection would silently
/// discard it.
OperatorPair pair_from_matrices(const Matrix& hamiltonian, const Matrix& constraint,
                                const ControlSplit& split, double time = 0.0);

struct PairRate {
  std::vector<double> h;
  std::vector<double> f;
};

/// d/dt of the coefficients: project K = -i[H, F] onto S and S^c.
PairRate brachistochrone_rhs(const OperatorPair& state, const ControlSplit& split);

struct Monitors {
  double tr_h2 = 0.0;
  double tr_f2 = 0.0;
  double tr_hf = 0.0;
};

Monitors monitors(const OperatorPair& state, const ControlSplit& split);

struct Sample {
  double time;
  std::vector<double> h;
  std::vector<double> f;
  Monitors monitors;
};

struct Trajectory {
  std::vector<Sample> samples;

  /// Largest |monitor(t) - monitor(0)| over the samples, per monitor.
  Monitors max_drift() const;
};

struct IntegrationSettings {
  double step = 1e-3;
  double horizon = 1.0;
  std::size_t sample_stride = 1;
};

class IntegrationError : public NumericalError {
 public:
  IntegrationError(const std::string& what, std::size_t step_index)
      : NumericalError(what), step_index_(step_index) {}
  std::size_t step_index() const noexcept { return step_index_; }

 private:
  std::size_t step_index_;
};

/// Fixed-step classical RK4 over round(T/h) steps. Records the initial state,
/// every `sample_stride`-th step, and the final step.
Trajectory integrate(const OperatorPair& initial, const ControlSplit& split, const IntegrationSettings& settings);

/// Dirac-split state in the component labelling of the constraint coefficients
/// Omega_ij (coefficient of sigma_i (x) sigma_j with alpha_j = sigma_x (x) sigma_j).
struct DiracSplitState {
  double m = 0.0;
  Vec3 p{};
  Vec3 omega0{};  // Omega_0j
  Vec3 omega2{};  // Omega_2j, "b"
  Vec3 omega3{};  // Omega_3j
  double omega10 = 0.0;
  double omega20 = 0.0;
};

/// m^2 + |p|^2.
double energy_squared(const DiracSplitState& s) noexcept;

/// The printed component equations for the Dirac split, evaluated verbatim:
/// dOmega_0j = dOmega_2j = 0, (dOmega_10, dOmega_3j) = 2 diag(-1,1,1,1) (m, p),
/// the antisymmetric (m, p) system and dOmega_20.
DiracSplitState dirac_split_rhs(const DiracSplitState& s);

/// The printed vector-matrix form, evaluated verbatim with n+- = Omega_0 +- Omega_3,
/// b = Omega_2, xi_r = Omega_10, xi_c = Omega_20:
///   dp = -m (n+ + n-) - (n+ + n-) x p,  dxi_c = m xi_r + p.(n+ - n-),
///   dn+ + dn- = 4p,  dn+ = dn-,  dxi_r = -m,  dm = b.p,  db = 0.
DiracSplitState dirac_vector_rhs(const DiracSplitState& s);

/// Maps the component labelling onto dirac_split() coefficients. Conjugation by
/// diag(1, i) (x) 1 carries sigma_x (x) sigma_j to sigma_y (x) sigma_j, so
/// labels map 1j -> 2j, 2j -> -(1j), 0j and 3j unchanged.
OperatorPair to_operator_pair(const DiracSplitState& s);
DiracSplitState from_coefficients(std::span<const double> h, std::span<const double> f);

/// brachistochrone_rhs on dirac_split(), expressed in the component labelling.
DiracSplitState generic_dirac_rhs(const DiracSplitState& s);

}  // namespace spinopt
