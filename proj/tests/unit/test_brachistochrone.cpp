#include <doctest.h>

#include <cmath>
#include <limits>
#include <numbers>

#include "property.hpp"
#include "spinopt/brachistochrone.hpp"
#include "spinopt/closed_forms.hpp"

using namespace spinopt;

namespace {

ControlSplit split_for(GroupId g) {
  switch (g) {
    case GroupId::su2:
      return su2_split();
    case GroupId::su3:
      return ControlSplit(build_basis(GroupId::su3), {0, 1, 3, 4});
    case GroupId::su4:
      return dirac_split();
  }
  return su2_split();
}

DiracSplitState random_state(testing::Gen& gen) {
  DiracSplitState s;
  s.m = gen.uniform();
  s.p = gen.vec3();
  s.omega0 = gen.vec3();
  s.omega2 = gen.vec3();
  s.omega3 = gen.vec3();
  s.omega10 = gen.uniform();
  s.omega20 = gen.uniform();
  return s;
}

double max3(const Vec3& a, const Vec3& b) {
  return std::max({std::abs(a[0] - b[0]), std::abs(a[1] - b[1]), std::abs(a[2] - b[2])});
}

/// Max coefficient error of an su2 run from H = sx, F = -sz/2 against cos t, sin t.
double su2_closed_form_error(double h, double horizon) {
  const OperatorPair init{{1.0, 0.0}, {-0.5}, 0.0};
  const Trajectory traj = integrate(init, su2_split(), {h, horizon, 1});
  double err = 0.0;
  for (const auto& s : traj.samples) {
    err = std::max({err, std::abs(s.h[0] - std::cos(s.time)), std::abs(s.h[1] - std::sin(s.time)),
                    std::abs(s.f[0] + 0.5)});
  }
  return err;
}

}  // namespace

TEST_SUITE("brachistochrone") {
  TEST_CASE("control split construction") {
    const ControlSplit s = su2_split();
    CHECK(s.hamiltonian_labels() == std::vector<std::string>{"sx", "sy"});
    CHECK(s.constraint_labels() == std::vector<std::string>{"sz"});

    const ControlSplit d = dirac_split();
    CHECK(d.hamiltonian_labels() == std::vector<std::string>{"s21", "s22", "s23", "s30"});
    CHECK(d.constraint_indices().size() == 11);

    CHECK_THROWS_AS(ControlSplit(build_basis(GroupId::su2), {}), DomainError);
    CHECK_THROWS_AS(ControlSplit(build_basis(GroupId::su2), {0, 0}), DomainError);
    CHECK_THROWS_AS(ControlSplit(build_basis(GroupId::su2), {3}), DomainError);
    const std::vector<std::string> bad{"sx", "l1"};
    CHECK_THROWS_AS(ControlSplit::from_labels(build_basis(GroupId::su2), bad), DomainError);
  }

  TEST_CASE("pair_from_matrices rejects components outside the spans") {
    const ControlSplit s = su2_split();
    const OperatorPair ok = pair_from_matrices(pauli(1), pauli(3) * -0.5, s);
    CHECK(ok.h == std::vector<double>{1.0, 0.0});
    CHECK(ok.f == std::vector<double>{-0.5});
    CHECK_THROWS_AS(pair_from_matrices(pauli(3), pauli(3), s), DomainError);
    CHECK_THROWS_AS(pair_from_matrices(pauli(1), pauli(2), s), DomainError);
  }

  TEST_CASE("rhs: zero constraint freezes H") {
    testing::Gen gen(31);
    for (GroupId g : {GroupId::su2, GroupId::su3, GroupId::su4}) {
      const ControlSplit s = split_for(g);
      const OperatorPair st{gen.values(s.hamiltonian_indices().size()),
                            std::vector<double>(s.constraint_indices().size(), 0.0), 0.0};
      const PairRate r = brachistochrone_rhs(st, s);
      for (double v : r.h) CHECK(v == 0.0);
      for (double v : r.f) CHECK(v == 0.0);
    }
  }

  TEST_CASE("rhs: su2 with H = sx, F = lambda sz") {
    for (double lambda : {-0.5, 0.3, 2.0}) {
      const PairRate r = brachistochrone_rhs({{1.0, 0.0}, {lambda}, 0.0}, su2_split());
      CHECK(r.h[0] == doctest::Approx(0.0));
      CHECK(r.h[1] == doctest::Approx(-2.0 * lambda));
      CHECK(r.f[0] == doctest::Approx(0.0));
    }
  }

  TEST_CASE("rhs: Dirac split mass rate") {
    testing::Gen gen(32);
    for (int k = 0; k < 100; ++k) {
      const DiracSplitState s = random_state(gen);
      const DiracSplitState d = generic_dirac_rhs(s);
      const double expected = 2.0 * (s.omega2[0] * s.p[0] + s.omega2[1] * s.p[1] + s.omega2[2] * s.p[2]);
      CHECK(std::abs(d.m - expected) < 1e-12);
    }
  }

  TEST_CASE("label map round-trips") {
    testing::Gen gen(33);
    for (int k = 0; k < 50; ++k) {
      const DiracSplitState s = random_state(gen);
      const OperatorPair pair = to_operator_pair(s);
      const DiracSplitState back = from_coefficients(pair.h, pair.f);
      CHECK(back.m == s.m);
      CHECK(back.p == s.p);
      CHECK(back.omega0 == s.omega0);
      CHECK(back.omega2 == s.omega2);
      CHECK(back.omega3 == s.omega3);
      CHECK(back.omega10 == s.omega10);
      CHECK(back.omega20 == s.omega20);
    }
  }

  TEST_CASE("Dirac-split printed equations: worked examples") {
    DiracSplitState a;
    a.m = 1.0;
    a.p = {0.0, 0.0, 2.0};
    const DiracSplitState da = dirac_split_rhs(a);
    CHECK(da.omega10 == -2.0);
    CHECK(da.omega3[2] == 4.0);

    DiracSplitState b;
    b.m = 1.0;
    b.p = {1.0, 0.0, 0.0};
    b.omega2 = {1.0, 0.0, 0.0};
    const DiracSplitState db = dirac_split_rhs(b);
    CHECK(db.m == 2.0);
    CHECK(db.p[0] == -2.0);

    DiracSplitState c;
    c.m = 1.0;
    c.omega10 = 1.0;
    CHECK(dirac_split_rhs(c).omega20 == 2.0);

    // Frozen components.
    testing::Gen gen(34);
    const DiracSplitState d = dirac_split_rhs(random_state(gen));
    CHECK(d.omega0 == Vec3{0.0, 0.0, 0.0});
    CHECK(d.omega2 == Vec3{0.0, 0.0, 0.0});
  }

  TEST_CASE("vector form: worked examples") {
    DiracSplitState s;
    s.m = 1.3;
    s.p = {0.4, -0.2, 0.9};
    CHECK(dirac_vector_rhs(s).p == Vec3{0.0, 0.0, 0.0});

    DiracSplitState b;
    b.m = 1.0;
    b.p = {1.0, 0.0, 0.0};
    b.omega2 = {1.0, 0.0, 0.0};
    CHECK(dirac_vector_rhs(b).m == 1.0);
    CHECK(dirac_split_rhs(b).m == 2.0);

    DiracSplitState n;
    n.p = {1.0, 0.0, 0.0};
    const DiracSplitState dn = dirac_vector_rhs(n);
    // dn+ + dn- = 2 dOmega_0
    CHECK(2.0 * dn.omega0[0] == 4.0);
    CHECK(dn.omega0[1] == 0.0);
    CHECK(dn.omega3 == Vec3{0.0, 0.0, 0.0});
    CHECK(dirac_vector_rhs(b).omega10 == -1.0);
  }

  TEST_CASE("generic engine agrees with the printed component equations") {
    testing::Gen gen(35);
    for (int k = 0; k < 100; ++k) {
      const DiracSplitState s = random_state(gen);
      const DiracSplitState g = generic_dirac_rhs(s);
      const DiracSplitState c = dirac_split_rhs(s);
      CHECK(std::abs(g.m - c.m) < 1e-12);
      CHECK(max3(g.p, c.p) < 1e-12);
      CHECK(max3(g.omega0, c.omega0) < 1e-12);
      CHECK(max3(g.omega2, c.omega2) < 1e-12);
      CHECK(std::abs(g.omega20 - c.omega20) < 1e-12);
      // The omega10 / omega3 rates carry an extra factor omega20 in the generic engine.
      CHECK(std::abs(g.omega10 - c.omega10 * s.omega20) < 1e-12);
      CHECK(max3(g.omega3, Vec3{c.omega3[0] * s.omega20, c.omega3[1] * s.omega20, c.omega3[2] * s.omega20}) < 1e-12);

      DiracSplitState slice = s;
      slice.omega20 = 1.0;
      const DiracSplitState gs = generic_dirac_rhs(slice);
      const DiracSplitState cs = dirac_split_rhs(slice);
      CHECK(std::abs(gs.omega10 - cs.omega10) < 1e-12);
      CHECK(max3(gs.omega3, cs.omega3) < 1e-12);
    }
  }

  TEST_CASE("generic engine disagrees with the vector form") {
    DiracSplitState s;
    s.m = 1.0;
    s.p = {1.0, 0.0, 0.0};
    s.omega2 = {1.0, 0.0, 0.0};
    const DiracSplitState g = generic_dirac_rhs(s);
    const DiracSplitState v = dirac_vector_rhs(s);
    CHECK(g.m == doctest::Approx(2.0));
    CHECK(v.m == doctest::Approx(1.0));
    CHECK(g.omega0[0] == doctest::Approx(0.0));
    CHECK(v.omega0[0] == doctest::Approx(2.0));
  }

  TEST_CASE("integrate: zero constraint keeps the initial coefficients") {
    testing::Gen gen(36);
    const ControlSplit s = dirac_split();
    const OperatorPair init{gen.values(4), std::vector<double>(11, 0.0), 0.0};
    const Trajectory traj = integrate(init, s, {1e-2, 1.0, 7});
    for (const auto& sample : traj.samples) CHECK(sample.h == init.h);
  }

  TEST_CASE("integrate: sampling and step count") {
    const OperatorPair init{{1.0, 0.0}, {-0.5}, 0.0};
    const Trajectory traj = integrate(init, su2_split(), {0.1, 1.0, 3});
    // 10 steps: samples at 0, 3, 6, 9 and the final step 10.
    REQUIRE(traj.samples.size() == 5);
    CHECK(traj.samples.front().time == 0.0);
    CHECK(traj.samples[1].time == doctest::Approx(0.3));
    CHECK(traj.samples.back().time == doctest::Approx(1.0));
    for (std::size_t k = 1; k < traj.samples.size(); ++k) CHECK(traj.samples[k].time > traj.samples[k - 1].time);

    const Trajectory odd = integrate(init, su2_split(), {0.3, 1.0, 1});
    CHECK(std::abs(odd.samples.back().time - 1.0) <= 0.3);
  }

  TEST_CASE("integrate: invalid settings") {
    const OperatorPair init{{1.0, 0.0}, {-0.5}, 0.0};
    CHECK_THROWS_AS(integrate(init, su2_split(), {0.0, 1.0, 1}), DomainError);
    CHECK_THROWS_AS(integrate(init, su2_split(), {1e-3, -1.0, 1}), DomainError);
    CHECK_THROWS_AS(integrate(init, su2_split(), {1e-3, 1.0, 0}), DomainError);
    CHECK_THROWS_AS(integrate({{1.0}, {-0.5}, 0.0}, su2_split(), {1e-3, 1.0, 1}), DimensionError);
  }

  TEST_CASE("integrate: non-finite state reports the failing step") {
    const double huge = 1e154;
    const OperatorPair init{{huge, huge}, {huge}, 0.0};
    try {
      integrate(init, su2_split(), {1.0, 100.0, 1});
      FAIL("expected IntegrationError");
    } catch (const IntegrationError& e) {
      CHECK(e.step_index() >= 1);
      CHECK(std::string(e.what()).find("step") != std::string::npos);
    }
    const double nan = std::numeric_limits<double>::quiet_NaN();
    CHECK_THROWS_AS(integrate({{nan, 0.0}, {0.5}, 0.0}, su2_split(), {1e-2, 1.0, 1}), IntegrationError);
  }

  TEST_CASE("integrate: su2 reproduces the closed-form Hamiltonian") {
    CHECK(su2_closed_form_error(1e-3, 2.0 * std::numbers::pi) < 1e-6);
  }

  TEST_CASE("integrate: fourth-order convergence") {
    const double coarse = su2_closed_form_error(0.1, 2.0 * std::numbers::pi);
    const double fine = su2_closed_form_error(0.05, 2.0 * std::numbers::pi);
    const double ratio = coarse / fine;
    CHECK(ratio >= 12.0);
    CHECK(ratio <= 20.0);
  }

  TEST_CASE("invariants: trace monitors are conserved along the flow") {
    testing::Gen gen(37);
    for (GroupId g : {GroupId::su2, GroupId::su3, GroupId::su4}) {
      const ControlSplit s = split_for(g);
      for (int k = 0; k < 4; ++k) {
        const OperatorPair init{gen.values(s.hamiltonian_indices().size()), gen.values(s.constraint_indices().size()),
                                0.0};
        const Monitors drift = integrate(init, s, {1e-3, 2.0, 100}).max_drift();
        CHECK(drift.tr_h2 < 1e-8);
        CHECK(drift.tr_f2 < 1e-8);
        CHECK(drift.tr_hf < 1e-10);
      }
    }
  }

  TEST_CASE("invariants: Dirac-split energy is conserved") {
    testing::Gen gen(38);
    const ControlSplit s = dirac_split();
    for (int k = 0; k < 4; ++k) {
      const DiracSplitState st = random_state(gen);
      const Trajectory traj = integrate(to_operator_pair(st), s, {1e-3, 2.0, 50});
      const double e0 = energy_squared(st);
      for (const auto& sample : traj.samples) {
        CHECK(std::abs(energy_squared(from_coefficients(sample.h, sample.f)) - e0) < 1e-8);
      }
    }
  }

  TEST_CASE("invariants: printed component rates conserve energy") {
    // The antisymmetric (m, p) system leaves m^2 + |p|^2 stationary.
    testing::Gen gen(39);
    for (int k = 0; k < 100; ++k) {
      const DiracSplitState s = random_state(gen);
      const DiracSplitState d = dirac_split_rhs(s);
      const double rate = 2.0 * (s.m * d.m + s.p[0] * d.p[0] + s.p[1] * d.p[1] + s.p[2] * d.p[2]);
      CHECK(std::abs(rate) < 1e-12);
    }
  }
}
