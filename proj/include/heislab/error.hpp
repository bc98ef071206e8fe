#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace heislab {

enum class ErrorKind {
  CompositeModulus,
  ReducibleModulus,
  LimitExceeded,
  DivisionByZero,
  NotADivisor,
  DimensionMismatch,
  OddDimension,
  ZeroInSet,
  SetTooSmall,
  InvalidSpec,
  SizeUnsatisfiable,
  SuiteMismatch,
  ParseError,
  // A theorem-true inequality or exact identity failed: always a bug.
  InvariantViolation,
};

std::string_view to_string(ErrorKind kind) noexcept;

class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& what)
      : std::runtime_error(std::string(to_string(kind)) + ": " + what), kind_(kind) {}

  ErrorKind kind() const noexcept { return kind_; }

 private:
  ErrorKind kind_;
};

[[noreturn]] inline void fail(ErrorKind kind, const std::string& what) { throw Error(kind, what); }

inline void require(bool cond, ErrorKind kind, const std::string& what) {
  if (!cond) fail(kind, what);
}

}  // namespace heislab
