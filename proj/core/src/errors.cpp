#include "nonarch/errors.hpp"

namespace nonarch {

const char* error_name(ErrorCode c) {
  switch (c) {
    case ErrorCode::TruncatedZero: return "TruncatedZero";
    case ErrorCode::NegativeValuation: return "NegativeValuation";
    case ErrorCode::RamificationDepthExceeded: return "RamificationDepthExceeded";
    case ErrorCode::LeadingDegeneracy: return "LeadingDegeneracy";
    case ErrorCode::RankMismatch: return "RankMismatch";
    case ErrorCode::NonPositiveValuationTerm: return "NonPositiveValuationTerm";
    case ErrorCode::DivergentEvaluation: return "DivergentEvaluation";
    case ErrorCode::CurvedRightFactor: return "CurvedRightFactor";
    case ErrorCode::BasisMismatch: return "BasisMismatch";
    case ErrorCode::InhomogeneousLabelDegree: return "InhomogeneousLabelDegree";
    case ErrorCode::NotAInfinity: return "NotAInfinity";
    case ErrorCode::NegativeEnergy: return "NegativeEnergy";
    case ErrorCode::ContractionSideConditionViolated: return "ContractionSideConditionViolated";
    case ErrorCode::NonzeroObstruction: return "NonzeroObstruction";
    case ErrorCode::PrecisionLoss: return "PrecisionLoss";
    case ErrorCode::NotGenerated: return "NotGenerated";
    case ErrorCode::CurvedComposition: return "CurvedComposition";
    case ErrorCode::DivergenceAtCutoff: return "DivergenceAtCutoff";
    case ErrorCode::NonConvergence: return "NonConvergence";
    case ErrorCode::UnknownName: return "UnknownName";
    case ErrorCode::SingularLeadingJacobian: return "SingularLeadingJacobian";
    case ErrorCode::NoConvergenceAtOrder: return "NoConvergenceAtOrder";
    case ErrorCode::NotCritical: return "NotCritical";
    case ErrorCode::NotInImage: return "NotInImage";
    case ErrorCode::ParseError: return "ParseError";
    case ErrorCode::Overflow: return "Overflow";
    case ErrorCode::InvalidArgument: return "InvalidArgument";
  }
  return "Unknown";
}

}  // namespace nonarch
