#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace spinopt {

/// Operand shapes do not agree (or a dimension outside 2..4 reached an
/// operator-only entry point).
class DimensionError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// A precondition on values failed: non-Hermitian input, E = 0, bad step size.
class DomainError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// A computation produced non-finite values.
class NumericalError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace spinopt
