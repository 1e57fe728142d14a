#pragma once

// Closed-form time-optimal Hamiltonians and their unitary families:
//   su4: the Dirac Hamiltonian with rotating off-diagonal phase, its
//        (non-unitary) eigenframe W(t), the propagator and constraint evolution;
//   su2: the two-level pair;
//   su3: the qutrit pair and the gate Q(t).

#include <functional>
#include <numbers>
#include <span>
#include <utility>

#include "spinopt/generators.hpp"
#include "spinopt/matrix.hpp"

namespace spinopt {

/// Sign conventions settled by the audit. Printed variants are kept alongside
/// so the audit can test both assignments.
struct Conventions {
  /// U(t,s) = diag(e^{i sign E(t-s)} 1, e^{-i sign E(t-s)} 1). Also the sign
  /// in i dH/dt = sign [H, D0].
  int su4_phase_sign;
  /// Sign of the (1,3) entry i e^{-i theta} sin(t-s) of the su3 propagator.
  int su3_corner_sign;
};

inline constexpr Conventions kConventions{-1, +1};
inline constexpr Conventions kPrintedConventions{+1, -1};

inline constexpr double kDefaultDiracTheta = -std::numbers::pi / 2.0;
inline constexpr double kDefaultSu3Theta = 0.0;

/// Rest mass, initial momentum and global phase of the Dirac family.
/// The energy E = +sqrt(m^2 + |p0|^2) is always derived, never stored
/// independently.
class DiracParameters {
 public:
  /// Throws DomainError when E = 0 or any input is non-finite.
  DiracParameters(double mass, const Vec3& momentum, double theta = kDefaultDiracTheta);

  double mass() const noexcept { return mass_; }
  const Vec3& momentum() const noexcept { return momentum_; }
  double theta() const noexcept { return theta_; }
  double energy() const noexcept { return energy_; }
  double energy_plus() const noexcept { return energy_ + mass_; }
  double energy_minus() const noexcept { return energy_ - mass_; }
  double momentum_norm_squared() const noexcept;

 private:
  double mass_;
  Vec3 momentum_;
  double theta_;
  double energy_;
};

/// [[m 1, -i e^{-2iEt} p0.sigma], [i e^{2iEt} p0.sigma, -m 1]].
Matrix dirac_hamiltonian(const DiracParameters& params, double t);

/// Exact d/dt of dirac_hamiltonian.
Matrix dirac_hamiltonian_rate(const DiracParameters& params, double t);

/// [[m 1, e^{-i(2Et + theta)} p0.sigma], [e^{i(2Et + theta)} p0.sigma, -m 1]]
/// using params.theta(). Equals dirac_hamiltonian at theta = +pi/2.
Matrix phased_hamiltonian(const DiracParameters& params, double t);

/// D0 = E (sigma_z (x) 1).
Matrix eigenvalue_matrix(const DiracParameters& params);

struct EigenFrame {
  Matrix w;
  Matrix w_inv;
  Matrix d0;
};

/// Block eigenframe with epsilon = (1, -i sigma_z, +i sigma_y):
///   W(t)     = [[-i eps.p0 e^{-2iEt}/E-, i eps.p0 e^{-2iEt}/E+], [sigma_x, sigma_x]]
///   W^-1(t)  = 1/(2E) [[i eps^dag.p0 e^{2iEt}, E- sigma_x], [-i eps^dag.p0 e^{2iEt}, E+ sigma_x]]
/// so that W D0 W^-1 = dirac_hamiltonian(t). W is invertible but not unitary.
/// Throws DomainError when |p0| = 0 (E = m).
EigenFrame su4_eigenframe(const DiracParameters& params, double t);

/// Same blocks without the -i/+i phase on the upper/left blocks; reconstructs
/// the theta = 0 form of phased_hamiltonian instead.
EigenFrame su4_eigenframe_unphased(const DiracParameters& params, double t);

/// diag(e^{i sign E(t-s)} 1_2, e^{-i sign E(t-s)} 1_2).
Matrix su4_propagator(const DiracParameters& params, double t, double s,
                      int phase_sign = kConventions.su4_phase_sign);

/// U(t,0) F(0) U^dagger(t,0) with F(0) built from the eleven constraint
/// coefficients of dirac_split() (basis order).
Matrix su4_constraint_t(std::span<const double> f0, const DiracParameters& params, double t,
                        int phase_sign = kConventions.su4_phase_sign);

/// epsilon . p and epsilon^dagger . p.
Matrix epsilon_dot(const Vec3& p);
Matrix epsilon_dagger_dot(const Vec3& p);

/// ((eps.p)(eps^dag.p), (eps^dag.p)(eps.p)); both equal |p|^2 1_2.
std::pair<Matrix, Matrix> epsilon_product(const Vec3& p);

struct FamilyPoint {
  Matrix hamiltonian;  // H(t)
  Matrix propagator;   // U(t, s)
};

/// H(t) = [[0, e^{-it}], [e^{it}, 0]]
Matrix su2_hamiltonian(double t);
/// U(t,s) = diag(1, e^{i(t-s)})
Matrix su2_propagator(double t, double s);
FamilyPoint su2_family(double t, double s);

/// H(t) = [[0, cos t, 0], [cos t, 0, -i e^{-i theta} sin t], [0, i e^{i theta} sin t, 0]]
Matrix su3_hamiltonian(double theta, double t);
/// [[cos, 0, corner_sign i e^{-i theta} sin], [0, 1, 0], [i e^{i theta} sin, 0, cos]] at (t - s).
Matrix su3_propagator(double theta, double t, double s, int corner_sign = kConventions.su3_corner_sign);
/// Q(t); Q(0) is the qutrit gate [[1,-1,0],[1,1,0],[0,0,sqrt 2]]/sqrt 2.
Matrix su3_gate(double theta, double t);
FamilyPoint su3_family(double theta, double t, double s);

/// A closed-form Hamiltonian/propagator pair viewed as a schedule
/// H(t) = e^{-iCt} H0 e^{iCt} with frame generator C.
struct UnitaryFamily {
  GroupId group;
  std::function<Matrix(double)> hamiltonian;
  std::function<Matrix(double, double)> propagator;
  std::function<Matrix(double)> gate;  // empty unless su3
  Matrix frame_generator;              // C
  Matrix initial_hamiltonian;          // H0 = H(0)
  double period;                       // natural time scale for sweeps (2 pi, or 2 pi / E)
};

UnitaryFamily su2_unitary_family();
UnitaryFamily su3_unitary_family(double theta = kDefaultSu3Theta);
UnitaryFamily su4_unitary_family(const DiracParameters& params);

}  // namespace spinopt
