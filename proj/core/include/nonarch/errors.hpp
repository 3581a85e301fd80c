#pragma once

#include <stdexcept>
#include <string>

namespace nonarch {

enum class ErrorCode {
  TruncatedZero,
  NegativeValuation,
  RamificationDepthExceeded,
  LeadingDegeneracy,
  RankMismatch,
  NonPositiveValuationTerm,
  DivergentEvaluation,
  CurvedRightFactor,
  BasisMismatch,
  InhomogeneousLabelDegree,
  NotAInfinity,
  NegativeEnergy,
  ContractionSideConditionViolated,
  NonzeroObstruction,
  PrecisionLoss,
  NotGenerated,
  CurvedComposition,
  DivergenceAtCutoff,
  NonConvergence,
  UnknownName,
  SingularLeadingJacobian,
  NoConvergenceAtOrder,
  NotCritical,
  NotInImage,
  ParseError,
  Overflow,
  InvalidArgument,
};

const char* error_name(ErrorCode c);

class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& what)
      : std::runtime_error(std::string(error_name(code)) + ": " + what), code_(code) {}
  ErrorCode code() const { return code_; }

 private:
  ErrorCode code_;
};

// Raised by the expression parser; pos is a 0-based character offset.
class ParseError : public Error {
 public:
  ParseError(std::size_t pos, const std::string& msg)
      : Error(ErrorCode::ParseError, "at position " + std::to_string(pos) + ": " + msg), pos_(pos) {}
  std::size_t position() const { return pos_; }

 private:
  std::size_t pos_;
};

}  // namespace nonarch
