#include <doctest.h>

#include <set>

#include "spinopt/audit.hpp"
#include "spinopt/error.hpp"

using namespace spinopt;

namespace {

CheckResult run(std::string_view id, double tol = 1e-10, std::uint64_t seed = 0) {
  AuditOptions o;
  o.tol = tol;
  o.seed = seed;
  return run_check(id, o);
}

}  // namespace

TEST_SUITE("audit") {
  TEST_CASE("catalog order and completeness") {
    const auto cat = check_catalog();
    REQUIRE(cat.size() == 13);
    CHECK(cat.front() == "algebra_eq2_4");
    CHECK(cat.back() == "constraint_orthogonality");
    const auto report = full_report();
    REQUIRE(report.size() == cat.size());
    std::set<std::string> ids;
    for (std::size_t k = 0; k < report.size(); ++k) {
      CHECK(report[k].id == cat[k]);
      ids.insert(report[k].id);
      CHECK(report[k].max_error >= 0.0);
    }
    CHECK(ids.size() == cat.size());
  }

  TEST_CASE("algebra check is exact at zero tolerance") {
    const CheckResult r = run("algebra_eq2_4", 0.0);
    CHECK(r.status == CheckStatus::pass);
    CHECK(r.max_error == 0.0);
  }

  TEST_CASE("epsilon identity at tight tolerance") {
    const CheckResult r = run("epsilon_identity", 1e-12);
    CHECK(r.status == CheckStatus::pass);
    CHECK(r.max_error < 1e-14);
  }

  TEST_CASE("propagator question for the su2 family") {
    AuditOptions o;
    o.tol = 1e-6;
    o.family = GroupId::su2;
    const CheckResult r = run_check("propagator_question", o);
    CHECK(r.status == CheckStatus::fail);
    CHECK(r.detail.find("su2:U=FAIL") != std::string::npos);
    CHECK(r.detail.find("V=PASS") != std::string::npos);
    CHECK(r.detail.find("su3") == std::string::npos);
  }

  TEST_CASE("family restriction leaves each family's probes unchanged") {
    const std::string full = run("propagator_question").detail;
    AuditOptions o;
    o.family = GroupId::su4;
    const std::string only = run_check("propagator_question", o).detail;
    CHECK(full.find(only) != std::string::npos);
  }

  TEST_CASE("expected findings") {
    CHECK(run("kg_identity").status == CheckStatus::pass);
    CHECK(run("sphere_constraint").status == CheckStatus::fail);
    CHECK(run("eigenframe_inverse").status == CheckStatus::pass);
    CHECK(run("isometry_su2").status == CheckStatus::pass);
    CHECK(run("constraint_orthogonality").status == CheckStatus::pass);

    const CheckResult su3 = run("isometry_su3");
    CHECK(su3.status == CheckStatus::resolved);
    CHECK(su3.status_token() == "RESOLVED:su3_corner_sign=+1");
    CHECK(run("q_factorization").status_token() == "RESOLVED:su3_corner_sign=+1");

    const CheckResult su4 = run("isometry_su4");
    CHECK(su4.status_token() == "RESOLVED:phase_sign=-1");
    CHECK(run("commutator_eq26").status_token() == "RESOLVED:phase_sign=-1");

    const CheckResult ode = run("ode_transcriptions");
    CHECK(ode.status == CheckStatus::fail);
    for (const char* key : {"mdot=", "pdot=", "omega10dot=", "vector_pdot=", "vector_mdot="}) {
      CHECK(ode.detail.find(key) != std::string::npos);
    }
  }

  TEST_CASE("determinism") {
    CHECK(format_report(full_report(1e-10, 7)) == format_report(full_report(1e-10, 7)));
    const auto report = full_report(1e-10, 3);
    for (std::size_t k = 0; k < report.size(); ++k) {
      AuditOptions o;
      o.seed = 3;
      CHECK(format_result(run_check(check_catalog()[k], o)) == format_result(report[k]));
    }
  }

  TEST_CASE("seed changes probes") {
    CHECK(format_report(full_report(1e-10, 0)) != format_report(full_report(1e-10, 1)));
  }

  TEST_CASE("monotone in tolerance") {
    for (std::uint64_t seed : {0u, 1u, 2u}) {
      const auto tight = full_report(1e-10, seed);
      const auto loose = full_report(1e-2, seed);
      std::size_t tight_fail = 0, loose_fail = 0;
      for (std::size_t k = 0; k < tight.size(); ++k) {
        if (tight[k].status != CheckStatus::fail) CHECK(loose[k].status != CheckStatus::fail);
        tight_fail += tight[k].status == CheckStatus::fail;
        loose_fail += loose[k].status == CheckStatus::fail;
      }
      CHECK(loose_fail <= tight_fail);
    }
  }

  TEST_CASE("formatting") {
    CheckResult r;
    r.id = "demo";
    r.status = CheckStatus::resolved;
    r.convention = "phase_sign=-1";
    r.max_error = 1.23456e-7;
    r.detail = "x=1";
    CHECK(format_result(r) == "CHECK demo RESOLVED:phase_sign=-1 max_err=1.235e-07 x=1");
    r.status = CheckStatus::pass;
    r.detail.clear();
    CHECK(format_result(r) == "CHECK demo PASS max_err=1.235e-07");
    const std::vector<CheckResult> rs{r};
    CHECK(format_report(rs) == "CHECK demo PASS max_err=1.235e-07\n");
    CHECK_FALSE(has_failure(rs));
  }

  TEST_CASE("errors") {
    CHECK_THROWS_AS(run("no_such_check"), DomainError);
    CHECK_THROWS_AS(run("kg_identity", -1.0), DomainError);
  }
}
