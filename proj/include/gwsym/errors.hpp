#pragma once

#include <stdexcept>
#include <string>

namespace gwsym {

/// Malformed textual input (ring specs, element text).
class ParseError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// Inversion (or any unit-only operation) was handed a non-unit.
class NonUnitError : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

/// Operands belong to different rings.
class SpecMismatch : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// A documented precondition of an operation does not hold.
class PreconditionError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// An enumeration or search limit was reached before the work completed.
class CapExceeded : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// An identity that holds by construction failed; signals a bug, not bad input.
class InternalError : public std::logic_error {
 public:
  using std::logic_error::logic_error;
};

inline void ensure(bool cond, const std::string& what) {
  if (!cond) throw InternalError(what);
}

}  // namespace gwsym
