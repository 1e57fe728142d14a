#pragma once

#include <iosfwd>
#include <string>
#include <vector>

#include "spinopt/matrix.hpp"

namespace spinctl {

inline constexpr int kExitOk = 0;
inline constexpr int kExitCheckFailure = 1;
inline constexpr int kExitInvalidInput = 2;

/// Runs one spinctl invocation; `args` excludes the program name.
/// Never throws: every failure is reported on `err` and mapped to an exit code.
int dispatch(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

/// `<title> <n>x<n>` followed by one row per line of `re+imj` entries.
void write_matrix(std::ostream& os, const std::string& title, const spinopt::Matrix& m);

/// %.17g
std::string format_real(double value);

}  // namespace spinctl
