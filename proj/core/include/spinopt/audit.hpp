#pragma once

// Numerical referee for the printed identities of the closed-form families
// and the Dirac-split equations. Each check measures a deviation over seeded
// random probes and reports PASS, FAIL or RESOLVED:<convention> when the
// printed form fails but exactly one alternative sign assignment passes.

#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "spinopt/generators.hpp"

namespace spinopt {

enum class CheckStatus { pass, fail, resolved };

struct CheckResult {
  std::string id;
  CheckStatus status = CheckStatus::fail;
  std::string convention;  // non-empty only when resolved
  double max_error = 0.0;
  std::string detail;

  /// "PASS", "FAIL" or "RESOLVED:<convention>".
  std::string status_token() const;
};

inline constexpr std::size_t kProbesPerCheck = 100;
inline constexpr double kProbeRange = 2.0;  // probes drawn uniformly from [-2, 2]

struct AuditOptions {
  double tol = 1e-10;
  std::uint64_t seed = 0;
  /// Restricts propagator_question to one family; other checks ignore it.
  std::optional<GroupId> family;
};

/// Check ids in report order.
std::span<const std::string_view> check_catalog();

/// Throws DomainError for an unknown id or a negative / non-finite tol.
/// Probes for check k are seeded from (seed, k), so a single run equals the
/// corresponding line of full_report.
CheckResult run_check(std::string_view id, const AuditOptions& options = {});

std::vector<CheckResult> full_report(double tol = 1e-10, std::uint64_t seed = 0);

/// CHECK <id> <status> max_err=<%.3e> <detail>
std::string format_result(const CheckResult& result);

/// One formatted line per result, each terminated by '\n'.
std::string format_report(std::span<const CheckResult> results);

bool has_failure(std::span<const CheckResult> results) noexcept;

}  // namespace spinopt
