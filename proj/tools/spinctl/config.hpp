#pragma once

// Run configuration for `spinctl integrate`.
//
//   # comment
//   group = su2
//   split = sx, sy
//   h = 1e-3
//   T = 6.2832
//   stride = 10        (optional, default 1)
//   seed = 0           (optional, default 0)
//
//   [hamiltonian]      initial coefficients over the split labels
//   sx = 1
//
//   [constraint]       initial coefficients over the remaining labels
//   sz = -0.5
//
// Labels not listed start at zero.

#include <cstddef>
#include <cstdint>
#include <map>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "spinopt/brachistochrone.hpp"
#include "spinopt/generators.hpp"

namespace spinctl {

class ConfigError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct RunConfig {
  spinopt::GroupId group = spinopt::GroupId::su2;
  std::vector<std::string> split;
  std::map<std::string, double> hamiltonian;
  std::map<std::string, double> constraint;
  double h = 0.0;
  double T = 0.0;
  std::size_t stride = 1;
  std::uint64_t seed = 0;
};

/// Throws ConfigError on malformed lines (with line number), unknown or
/// duplicate keys, missing required keys ("missing key: h") and labels that
/// do not belong to the group or to the right side of the split.
RunConfig parse_config(std::string_view text);

spinopt::ControlSplit make_split(const RunConfig& config);

/// Initial coefficients in split order.
spinopt::OperatorPair initial_pair(const RunConfig& config, const spinopt::ControlSplit& split);

/// Parses a finite real; throws ConfigError naming `what` otherwise.
double parse_real(std::string_view text, std::string_view what);

}  // namespace spinctl
