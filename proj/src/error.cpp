#include "dulac/error.hpp"

namespace dulac {

const char* error_name(ErrorCode c) {
  switch (c) {
    case ErrorCode::ParseError: return "ParseError";
    case ErrorCode::ExponentNotInSemigroup: return "ExponentNotInSemigroup";
    case ErrorCode::NonUnitSlope: return "NonUnitSlope";
    case ErrorCode::NotNormalized: return "NotNormalized";
    case ErrorCode::NotHyperbolic: return "NotHyperbolic";
    case ErrorCode::ResonantCoefficient: return "ResonantCoefficient";
    case ErrorCode::IterationBudgetExceeded: return "IterationBudgetExceeded";
    case ErrorCode::OrderTooLow: return "OrderTooLow";
    case ErrorCode::DomainError: return "DomainError";
    case ErrorCode::InvalidRho: return "InvalidRho";
    case ErrorCode::EvalDomainError: return "EvalDomainError";
    case ErrorCode::NotConverged: return "NotConverged";
    case ErrorCode::DecayHypothesisViolated: return "DecayHypothesisViolated";
    case ErrorCode::GrowthBoundViolated: return "GrowthBoundViolated";
    case ErrorCode::InsufficientData: return "InsufficientData";
    case ErrorCode::PreconditionViolated: return "PreconditionViolated";
    case ErrorCode::InvalidArgument: return "InvalidArgument";
  }
  return "Unknown";
}

}  // namespace dulac
