#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace dulac {

enum class ErrorCode {
  ParseError = 1,
  ExponentNotInSemigroup,
  NonUnitSlope,
  NotNormalized,
  NotHyperbolic,
  ResonantCoefficient,
  IterationBudgetExceeded,
  OrderTooLow,
  DomainError,
  InvalidRho,
  EvalDomainError,
  NotConverged,
  DecayHypothesisViolated,
  GrowthBoundViolated,
  InsufficientData,
  PreconditionViolated,
  InvalidArgument,
};

const char* error_name(ErrorCode c);

class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& msg, std::ptrdiff_t offset = -1)
      : std::runtime_error(std::string(error_name(code)) + ": " + msg),
        code_(code),
        offset_(offset) {}

  ErrorCode code() const { return code_; }
  // Byte offset into the parsed text, -1 when not a parse error.
  std::ptrdiff_t offset() const { return offset_; }

 private:
  ErrorCode code_;
  std::ptrdiff_t offset_;
};

}  // namespace dulac
