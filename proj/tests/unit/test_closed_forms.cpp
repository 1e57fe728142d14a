#include <doctest.h>

#include <cmath>
#include <numbers>

#include "property.hpp"
#include "spinopt/brachistochrone.hpp"
#include "spinopt/closed_forms.hpp"
#include "spinopt/error.hpp"

using namespace spinopt;

namespace {

const DiracParameters kUnit(1.0, {0.0, 0.0, 1.0});

double central_difference_error(const DiracParameters& params, double t, int sign) {
  const double d = 1e-6;
  const Matrix rate = (dirac_hamiltonian(params, t + d) - dirac_hamiltonian(params, t - d)) / (2.0 * d);
  const Matrix comm = bracket(dirac_hamiltonian(params, t), eigenvalue_matrix(params)) * static_cast<double>(sign);
  return max_abs_diff(rate * kI, comm);
}

}  // namespace

TEST_SUITE("closed_forms") {
  TEST_CASE("DiracParameters derive the energy") {
    CHECK(kUnit.energy() == doctest::Approx(std::sqrt(2.0)));
    CHECK(kUnit.energy_plus() * kUnit.energy_minus() == doctest::Approx(1.0));
    CHECK(kUnit.theta() == doctest::Approx(-std::numbers::pi / 2));
    CHECK_THROWS_AS(DiracParameters(0.0, {0.0, 0.0, 0.0}), DomainError);
    CHECK_THROWS_AS(DiracParameters(std::nan(""), {0.0, 0.0, 1.0}), DomainError);
  }

  TEST_CASE("E+ E- = |p|^2") {
    testing::Gen gen(41);
    for (int k = 0; k < 500; ++k) {
      const DiracParameters p = gen.dirac();
      CHECK(std::abs(p.energy_plus() * p.energy_minus() - p.momentum_norm_squared()) < 1e-12);
      CHECK(std::abs(p.energy() * p.energy() - p.mass() * p.mass() - p.momentum_norm_squared()) < 1e-12);
    }
  }

  TEST_CASE("dirac_hamiltonian at t = 0 is the assembled Dirac matrix") {
    const Matrix h0 = dirac_hamiltonian(kUnit, 0.0);
    CHECK(max_abs_diff(h0, assemble_dirac(dirac_operators(), 1.0, {0.0, 0.0, 1.0})) < 1e-16);
    // Tr(H^2)/2 = 2 (m^2 + |p|^2) for the 4x4 matrix.
    CHECK((h0 * h0).trace().real() / 2.0 == doctest::Approx(4.0));
  }

  TEST_CASE("dirac_hamiltonian: Hermitian, H^2 = E^2, period pi/E") {
    testing::Gen gen(42);
    for (int k = 0; k < 300; ++k) {
      const DiracParameters p = gen.dirac();
      const double t = gen.uniform(-5.0, 5.0);
      const Matrix h = dirac_hamiltonian(p, t);
      CHECK(predicates(h).hermitian);
      CHECK(max_abs_diff(h * h, Matrix::identity(4) * (p.energy() * p.energy())) < 1e-12);
      CHECK(max_abs_diff(dirac_hamiltonian(p, t + std::numbers::pi / p.energy()), h) < 1e-12);
    }
  }

  TEST_CASE("phased_hamiltonian matches dirac_hamiltonian at theta = pi/2") {
    testing::Gen gen(43);
    for (int k = 0; k < 100; ++k) {
      const DiracParameters base = gen.dirac();
      const DiracParameters p(base.mass(), base.momentum(), std::numbers::pi / 2);
      const double t = gen.uniform();
      CHECK(max_abs_diff(phased_hamiltonian(p, t), dirac_hamiltonian(p, t)) < 1e-14);
    }
  }

  TEST_CASE("dirac_hamiltonian_rate matches finite differences") {
    testing::Gen gen(44);
    for (int k = 0; k < 100; ++k) {
      const DiracParameters p = gen.dirac();
      const double t = gen.uniform();
      const double d = 1e-6;
      const Matrix fd = (dirac_hamiltonian(p, t + d) - dirac_hamiltonian(p, t - d)) / (2.0 * d);
      CHECK(max_abs_diff(fd, dirac_hamiltonian_rate(p, t)) < 1e-7 * (1.0 + p.energy() * p.energy() * p.energy()));
    }
  }

  TEST_CASE("i dH/dt equals a commutator with -D0") {
    testing::Gen gen(45);
    for (int k = 0; k < 100; ++k) {
      const DiracParameters p = gen.dirac();
      const double t = gen.uniform();
      CHECK(central_difference_error(p, t, kConventions.su4_phase_sign) < 2e-6 * std::max(1.0, p.energy()));
      CHECK(central_difference_error(p, t, -kConventions.su4_phase_sign) > 1e-3);
    }
  }

  TEST_CASE("eigenframe: inverse, reconstruction, eigenvectors") {
    testing::Gen gen(46);
    const Matrix one = Matrix::identity(4);
    for (int k = 0; k < 200; ++k) {
      const DiracParameters p = gen.dirac(0.1);
      const double t = gen.uniform();
      const EigenFrame f = su4_eigenframe(p, t);
      CHECK(max_abs_diff(f.w * f.w_inv, one) < 1e-10);
      CHECK(max_abs_diff(f.w_inv * f.w, one) < 1e-10);
      const Matrix h = f.w * f.d0 * f.w_inv;
      CHECK(max_abs_diff(h, dirac_hamiltonian(p, t)) < 1e-10);
      CHECK(predicates(h, 1e-10).hermitian);
    }

    const EigenFrame f0 = su4_eigenframe(kUnit, 0.0);
    const Matrix h0 = dirac_hamiltonian(kUnit, 0.0);
    const double e = kUnit.energy();
    for (std::size_t col = 0; col < 4; ++col) {
      const double lambda = col < 2 ? e : -e;
      double err = 0.0;
      const Matrix hw = h0 * f0.w;
      for (std::size_t r = 0; r < 4; ++r) err = std::max(err, std::abs(hw(r, col) - lambda * f0.w(r, col)));
      CHECK(err < 1e-14);
    }
  }

  TEST_CASE("eigenframe is not unitary") {
    const EigenFrame f = su4_eigenframe(kUnit, 0.0);
    CHECK(predicates(f.w).unitary_deviation > 0.1);
  }

  TEST_CASE("unphased eigenframe reconstructs the theta = 0 form") {
    testing::Gen gen(47);
    for (int k = 0; k < 50; ++k) {
      const DiracParameters base = gen.dirac(0.1);
      const DiracParameters p(base.mass(), base.momentum(), 0.0);
      const double t = gen.uniform();
      const EigenFrame f = su4_eigenframe_unphased(p, t);
      CHECK(max_abs_diff(f.w * f.d0 * f.w_inv, phased_hamiltonian(p, t)) < 1e-10);
      CHECK(max_abs_diff(f.w * f.d0 * f.w_inv, dirac_hamiltonian(p, t)) > 0.1);
    }
  }

  TEST_CASE("eigenframe rejects p = 0") {
    CHECK_THROWS_AS(su4_eigenframe(DiracParameters(1.0, {0.0, 0.0, 0.0}), 0.0), DomainError);
  }

  TEST_CASE("epsilon identity") {
    for (const Vec3& p : {Vec3{1.0, 0.0, 0.0}, Vec3{0.0, 0.0, 1.0}}) {
      const auto [a, b] = epsilon_product(p);
      CHECK(a == Matrix::identity(2));
      CHECK(b == Matrix::identity(2));
    }
    testing::Gen gen(48);
    for (int k = 0; k < 1000; ++k) {
      const Vec3 p = gen.vec3();
      const Matrix expected = Matrix::identity(2) * (p[0] * p[0] + p[1] * p[1] + p[2] * p[2]);
      const auto [a, b] = epsilon_product(p);
      CHECK(max_abs_diff(a, expected) < 1e-14);
      CHECK(max_abs_diff(b, expected) < 1e-14);
    }
  }

  TEST_CASE("su4 propagator: identity, composition, isometry under the audited sign") {
    testing::Gen gen(49);
    for (int k = 0; k < 100; ++k) {
      const DiracParameters p = gen.dirac();
      const double t = gen.uniform();
      const double s = gen.uniform();
      const double r = gen.uniform();
      CHECK(su4_propagator(p, t, t) == Matrix::identity(4));
      CHECK(max_abs_diff(su4_propagator(p, t, s) * su4_propagator(p, s, r), su4_propagator(p, t, r)) < 1e-12);
      const Matrix u = su4_propagator(p, t, s);
      CHECK(max_abs_diff(u * dirac_hamiltonian(p, s) * u.adjoint(), dirac_hamiltonian(p, t)) < 1e-10);
      const Matrix printed = su4_propagator(p, t, s, kPrintedConventions.su4_phase_sign);
      if (std::abs(std::sin(2.0 * p.energy() * (t - s))) > 0.1 && p.momentum_norm_squared() > 0.1) {
        CHECK(max_abs_diff(printed * dirac_hamiltonian(p, s) * printed.adjoint(), dirac_hamiltonian(p, t)) > 1e-3);
      }
    }
  }

  TEST_CASE("su4 constraint evolution") {
    testing::Gen gen(50);
    const ControlSplit split = dirac_split();
    for (int k = 0; k < 50; ++k) {
      const DiracParameters p = gen.dirac();
      const std::vector<double> f0 = gen.values(11);
      CHECK(max_abs_diff(su4_constraint_t(f0, p, 0.0), split.constraint(f0)) < 1e-15);
      const double t = gen.uniform();
      const Matrix ft = su4_constraint_t(f0, p, t);
      CHECK(std::abs((dirac_hamiltonian(p, t) * ft).trace()) < 1e-12);
    }

    // Only the n+- components (s0j, s3j): block diagonal, commutes with U.
    const GeneratorBasis& b = split.basis();
    std::vector<double> f0(11, 0.0);
    const auto cons = split.constraint_indices();
    for (std::size_t i = 0; i < cons.size(); ++i) {
      const std::string& label = b.label(cons[i]);
      if (label[1] == '0' || label[1] == '3') f0[i] = gen.uniform();
    }
    for (double t : {0.3, 1.1, -2.0}) {
      CHECK(max_abs_diff(su4_constraint_t(f0, kUnit, t), split.constraint(f0)) < 1e-15);
    }
  }

  TEST_CASE("su2 family") {
    CHECK(max_abs_diff(su2_propagator(std::numbers::pi, 0.0), Matrix::diagonal({1.0, -1.0})) < 1e-15);
    testing::Gen gen(51);
    for (int k = 0; k < 100; ++k) {
      const double t = gen.uniform();
      const double s = gen.uniform();
      const FamilyPoint fp = su2_family(t, s);
      CHECK(max_abs_diff(fp.propagator * su2_hamiltonian(s) * fp.propagator.adjoint(), fp.hamiltonian) < 1e-12);
      CHECK(max_abs_diff(fp.hamiltonian * fp.hamiltonian, Matrix::identity(2)) < 1e-15);
    }
  }

  TEST_CASE("su3 family: gate and factorization") {
    const double r = 1.0 / std::sqrt(2.0);
    const Matrix q0(3, {r, -r, 0.0, r, r, 0.0, 0.0, 0.0, 1.0});
    CHECK(max_abs_diff(su3_gate(0.0, 0.0), q0) == 0.0);
    CHECK(max_abs_diff(su3_gate(1.3, 0.0), q0) == 0.0);

    testing::Gen gen(52);
    for (int k = 0; k < 100; ++k) {
      const double theta = gen.uniform();
      const double t = gen.uniform();
      const double s = gen.uniform();
      const Matrix u = su3_propagator(theta, t, s);
      CHECK(max_abs_diff(su3_gate(theta, t) * su3_gate(theta, s).adjoint(), u) < 1e-10);
      CHECK(max_abs_diff(u * su3_hamiltonian(theta, s) * u.adjoint(), su3_hamiltonian(theta, t)) < 1e-10);
      CHECK(predicates(su3_gate(theta, t)).unitary);
    }
  }

  TEST_CASE("su3 printed corner sign breaks unitarity") {
    const Matrix printed = su3_propagator(0.4, 1.0, 0.0, kPrintedConventions.su3_corner_sign);
    CHECK(predicates(printed).unitary_deviation > 0.1);
    const Matrix resolved = su3_propagator(0.4, 1.0, 0.0);
    CHECK(predicates(resolved).unitary);
  }

  TEST_CASE("su3 conjugation identity holds only for theta in {0, pi}") {
    for (double theta : {0.0, std::numbers::pi}) {
      CHECK(max_abs_diff(su3_propagator(theta, -0.8, 0.5).conjugate(), su3_propagator(theta, 0.8, -0.5)) < 1e-15);
    }
    const double theta = 0.7;
    CHECK(max_abs_diff(su3_propagator(theta, -0.8, 0.5).conjugate(), su3_propagator(theta, 0.8, -0.5)) > 0.1);
    CHECK(max_abs_diff(su3_propagator(theta, -0.8, 0.5).conjugate(), su3_propagator(-theta, 0.8, -0.5)) < 1e-15);
  }

  TEST_CASE("unitary family laws") {
    testing::Gen gen(53);
    const std::vector<UnitaryFamily> families{su2_unitary_family(), su3_unitary_family(), su4_unitary_family(kUnit),
                                              su4_unitary_family(gen.dirac())};
    for (const auto& fam : families) {
      const std::size_t dim = group_dimension(fam.group);
      for (int k = 0; k < 100; ++k) {
        const double t = gen.uniform();
        const double s = gen.uniform();
        const double r = gen.uniform();
        const Matrix u = fam.propagator(t, s);
        CHECK(predicates(u).unitary_deviation < 1e-12);
        CHECK(max_abs_diff(fam.propagator(t, t), Matrix::identity(dim)) < 1e-12);
        CHECK(max_abs_diff(u * fam.propagator(s, r), fam.propagator(t, r)) < 1e-12);
        CHECK(max_abs_diff(u.adjoint(), fam.propagator(s, t)) < 1e-12);
        CHECK(max_abs_diff(fam.propagator(-t, -s).conjugate(), u) < 1e-12);
      }
    }
  }

  TEST_CASE("frame generators reproduce the Hamiltonian schedule") {
    testing::Gen gen(54);
    const std::vector<UnitaryFamily> families{su2_unitary_family(), su3_unitary_family(0.6),
                                              su4_unitary_family(gen.dirac())};
    for (const auto& fam : families) {
      for (int k = 0; k < 50; ++k) {
        const double t = gen.uniform();
        const Matrix rot = expm_unitary(fam.frame_generator, t);
        CHECK(max_abs_diff(rot * fam.initial_hamiltonian * rot.adjoint(), fam.hamiltonian(t)) < 1e-12);
      }
    }
  }
}
