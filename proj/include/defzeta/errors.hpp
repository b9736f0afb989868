#pragma once

#include <stdexcept>
#include <string>

namespace defzeta {

enum class ErrorKind {
  NotAUnit,
  ContextMismatch,
  NotIrreducible,
  RequiresTeichmullerModulus,
  ZeroInput,
  SingularCurve,
  Supersingular,
  NoValidShift,
  PrecisionLoss,
  NonIntegralResult,
  UnstableTruncation,
  PreconditionViolation,
  NoRepresentative,
  ParseError,
};

const char* kind_name(ErrorKind k);

class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& what)
      : std::runtime_error(std::string(kind_name(kind)) + ": " + what), kind_(kind) {}
  ErrorKind kind() const { return kind_; }

 private:
  ErrorKind kind_;
};

[[noreturn]] inline void fail(ErrorKind kind, const std::string& what) { throw Error(kind, what); }

}  // namespace defzeta
