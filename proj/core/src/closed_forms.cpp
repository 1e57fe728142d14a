#include "spinopt/closed_forms.hpp"

#include <cmath>

#include "spinopt/brachistochrone.hpp"
#include "spinopt/error.hpp"

namespace spinopt {

namespace {

Matrix blocks(const Matrix& upper_left, const Matrix& upper_right, const Matrix& lower_left,
              const Matrix& lower_right) {
  Matrix out(4);
  for (std::size_t i = 0; i < 2; ++i) {
    for (std::size_t j = 0; j < 2; ++j) {
      out(i, j) = upper_left(i, j);
      out(i, j + 2) = upper_right(i, j);
      out(i + 2, j) = lower_left(i, j);
      out(i + 2, j + 2) = lower_right(i, j);
    }
  }
  return out;
}

Complex phase(double angle) { return std::polar(1.0, angle); }

EigenFrame block_frame(const DiracParameters& params, double t, Complex upper_phase) {
  const Vec3& p = params.momentum();
  if (params.momentum_norm_squared() == 0.0) {
    throw DomainError("su4_eigenframe: |p0| = 0 makes E = m and the frame degenerate");
  }
  const double e = params.energy();
  const Complex rot = phase(-2.0 * e * t);
  const Matrix eps = epsilon_dot(p) * (upper_phase * rot);
  const Matrix eps_dag = epsilon_dagger_dot(p) * (std::conj(upper_phase) * std::conj(rot));
  const Matrix sx = pauli(1);

  EigenFrame frame;
  frame.w = blocks(eps / params.energy_minus(), -eps / params.energy_plus(), sx, sx);
  frame.w_inv = blocks(eps_dag, sx * params.energy_minus(), -eps_dag, sx * params.energy_plus()) / (2.0 * e);
  frame.d0 = eigenvalue_matrix(params);
  return frame;
}

}  // namespace

DiracParameters::DiracParameters(double mass, const Vec3& momentum, double theta)
    : mass_(mass), momentum_(momentum), theta_(theta) {
  if (!std::isfinite(mass) || !std::isfinite(theta) || !std::isfinite(momentum[0]) ||
      !std::isfinite(momentum[1]) || !std::isfinite(momentum[2])) {
    throw DomainError("DiracParameters: non-finite input");
  }
  energy_ = std::sqrt(mass_ * mass_ + momentum_norm_squared());
  if (energy_ == 0.0) throw DomainError("DiracParameters: E = 0 (degenerate spectrum)");
}

double DiracParameters::momentum_norm_squared() const noexcept {
  return momentum_[0] * momentum_[0] + momentum_[1] * momentum_[1] + momentum_[2] * momentum_[2];
}

Matrix dirac_hamiltonian(const DiracParameters& params, double t) {
  const double m = params.mass();
  const Matrix ps = sigma_dot(params.momentum());
  const Complex up = -kI * phase(-2.0 * params.energy() * t);
  const Complex down = kI * phase(2.0 * params.energy() * t);
  const Matrix one = Matrix::identity(2);
  return blocks(one * m, ps * up, ps * down, one * (-m));
}

Matrix dirac_hamiltonian_rate(const DiracParameters& params, double t) {
  const double e = params.energy();
  const Matrix ps = sigma_dot(params.momentum());
  // d/dt(-i e^{-2iEt}) = -2E e^{-2iEt};  d/dt(i e^{2iEt}) = -2E e^{2iEt}
  const Complex up = -2.0 * e * phase(-2.0 * e * t);
  const Complex down = -2.0 * e * phase(2.0 * e * t);
  const Matrix zero(2);
  return blocks(zero, ps * up, ps * down, zero);
}

Matrix phased_hamiltonian(const DiracParameters& params, double t) {
  const double m = params.mass();
  const Matrix ps = sigma_dot(params.momentum());
  const double angle = 2.0 * params.energy() * t + params.theta();
  const Matrix one = Matrix::identity(2);
  return blocks(one * m, ps * phase(-angle), ps * phase(angle), one * (-m));
}

Matrix eigenvalue_matrix(const DiracParameters& params) {
  const double e = params.energy();
  return Matrix::diagonal({e, e, -e, -e});
}

EigenFrame su4_eigenframe(const DiracParameters& params, double t) {
  return block_frame(params, t, -kI);
}

EigenFrame su4_eigenframe_unphased(const DiracParameters& params, double t) {
  return block_frame(params, t, 1.0);
}

Matrix su4_propagator(const DiracParameters& params, double t, double s, int phase_sign) {
  const double angle = static_cast<double>(phase_sign) * params.energy() * (t - s);
  const Complex up = phase(angle);
  const Complex down = phase(-angle);
  return Matrix::diagonal({up, up, down, down});
}

Matrix su4_constraint_t(std::span<const double> f0, const DiracParameters& params, double t, int phase_sign) {
  static const ControlSplit split = dirac_split();
  const Matrix f = split.constraint(f0);
  const Matrix u = su4_propagator(params, t, 0.0, phase_sign);
  return u * f * u.adjoint();
}

Matrix epsilon_dot(const Vec3& p) {
  return pauli(0) * p[0] + pauli(3) * (-kI * p[1]) + pauli(2) * (kI * p[2]);
}

Matrix epsilon_dagger_dot(const Vec3& p) {
  return pauli(0) * p[0] + pauli(3) * (kI * p[1]) + pauli(2) * (-kI * p[2]);
}

std::pair<Matrix, Matrix> epsilon_product(const Vec3& p) {
  const Matrix e = epsilon_dot(p);
  const Matrix ed = epsilon_dagger_dot(p);
  return {e * ed, ed * e};
}

Matrix su2_hamiltonian(double t) {
  return Matrix(2, {0.0, phase(-t), phase(t), 0.0});
}

Matrix su2_propagator(double t, double s) {
  return Matrix::diagonal({1.0, phase(t - s)});
}

FamilyPoint su2_family(double t, double s) {
  return {su2_hamiltonian(t), su2_propagator(t, s)};
}

Matrix su3_hamiltonian(double theta, double t) {
  const double c = std::cos(t);
  const double s = std::sin(t);
  return Matrix(3, {0.0, c, 0.0,
                    c, 0.0, -kI * phase(-theta) * s,
                    0.0, kI * phase(theta) * s, 0.0});
}

Matrix su3_propagator(double theta, double t, double s, int corner_sign) {
  const double c = std::cos(t - s);
  const double sn = std::sin(t - s);
  return Matrix(3, {c, 0.0, static_cast<double>(corner_sign) * kI * phase(-theta) * sn,
                    0.0, 1.0, 0.0,
                    kI * phase(theta) * sn, 0.0, c});
}

Matrix su3_gate(double theta, double t) {
  const double r = 1.0 / std::numbers::sqrt2;
  const double c = std::cos(t);
  const double s = std::sin(t);
  return Matrix(3, {r * c, -r * c, kI * phase(-theta) * s,
                    r, r, 0.0,
                    kI * r * phase(theta) * s, -kI * r * phase(theta) * s, c});
}

FamilyPoint su3_family(double theta, double t, double s) {
  return {su3_hamiltonian(theta, t), su3_propagator(theta, t, s)};
}

UnitaryFamily su2_unitary_family() {
  UnitaryFamily f;
  f.group = GroupId::su2;
  f.hamiltonian = [](double t) { return su2_hamiltonian(t); };
  f.propagator = [](double t, double s) { return su2_propagator(t, s); };
  f.frame_generator = pauli(3) * 0.5;
  f.initial_hamiltonian = su2_hamiltonian(0.0);
  f.period = 2.0 * std::numbers::pi;
  return f;
}

UnitaryFamily su3_unitary_family(double theta) {
  UnitaryFamily f;
  f.group = GroupId::su3;
  f.hamiltonian = [theta](double t) { return su3_hamiltonian(theta, t); };
  f.propagator = [theta](double t, double s) { return su3_propagator(theta, t, s); };
  f.gate = [theta](double t) { return su3_gate(theta, t); };
  // U(t,0) = exp(-iCt) for the resolved corner sign.
  Matrix c(3);
  c(0, 2) = -phase(-theta);
  c(2, 0) = -phase(theta);
  f.frame_generator = c;
  f.initial_hamiltonian = su3_hamiltonian(theta, 0.0);
  f.period = 2.0 * std::numbers::pi;
  return f;
}

UnitaryFamily su4_unitary_family(const DiracParameters& params) {
  UnitaryFamily f;
  f.group = GroupId::su4;
  f.hamiltonian = [params](double t) { return dirac_hamiltonian(params, t); };
  f.propagator = [params](double t, double s) { return su4_propagator(params, t, s); };
  // U(t,0) = exp(i sign D0 t) = exp(-iCt)
  f.frame_generator = eigenvalue_matrix(params) * static_cast<double>(-kConventions.su4_phase_sign);
  f.initial_hamiltonian = dirac_hamiltonian(params, 0.0);
  f.period = 2.0 * std::numbers::pi / params.energy();
  return f;
}

}  // namespace spinopt
