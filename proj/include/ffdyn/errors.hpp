#pragma once

#include <stdexcept>
#include <string>

namespace ffdyn {

/// Base class for everything this library throws.
struct Error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

/// Malformed literals, field specs, configs.  CLI exit code 2.
struct ParseError : Error {
  using Error::Error;
};

/// A precondition on the inputs was violated (division by zero, d not a
/// divisor of m*r, degree out of range, ...).  CLI exit code 2.
struct DomainError : Error {
  using Error::Error;
};

/// A configured work or size budget was exceeded.  CLI exit code 3.
struct CapError : Error {
  using Error::Error;
};

/// An internal identity that must always hold did not.  CLI exit code 4.
struct InvariantError : Error {
  using Error::Error;
};

inline void require(bool ok, const char* what) {
  if (!ok) throw DomainError(what);
}

inline void check_invariant(bool ok, const char* what) {
  if (!ok) throw InvariantError(what);
}

}  // namespace ffdyn
