#include "tilegraph/error.hpp"

namespace tilegraph {

std::string_view to_string(ErrorCode code) noexcept {
  switch (code) {
    case ErrorCode::EmptyRows: return "EmptyRows";
    case ErrorCode::RowsNotDecreasing: return "RowsNotDecreasing";
    case ErrorCode::UnsupportedDimension: return "UnsupportedDimension";
    case ErrorCode::NegativeDegree: return "NegativeDegree";
    case ErrorCode::NotInvertible: return "NotInvertible";
    case ErrorCode::InvalidInput: return "InvalidInput";
    case ErrorCode::CornersNotInvertible: return "CornersNotInvertible";
    case ErrorCode::EnumerationTooLarge: return "EnumerationTooLarge";
    case ErrorCode::SourceRangeMismatch: return "SourceRangeMismatch";
    case ErrorCode::DegreeOutOfRange: return "DegreeOutOfRange";
    case ErrorCode::BijectionFailure: return "BijectionFailure";
    case ErrorCode::ConstantNotValid: return "ConstantNotValid";
    case ErrorCode::NoSolution: return "NoSolution";
    case ErrorCode::ColumnsDependent: return "ColumnsDependent";
    case ErrorCode::SublatticeNotContained: return "SublatticeNotContained";
    case ErrorCode::DimensionMismatch: return "DimensionMismatch";
    case ErrorCode::InfiniteK0: return "InfiniteK0";
    case ErrorCode::HypothesisFailed: return "HypothesisFailed";
    case ErrorCode::TheoremViolation: return "TheoremViolation";
    case ErrorCode::TraceNonZero: return "TraceNonZero";
    case ErrorCode::CountMismatch: return "CountMismatch";
    case ErrorCode::MismatchAgainstReference: return "MismatchAgainstReference";
  }
  return "Unknown";
}

ErrorKind kind_of(ErrorCode code) noexcept {
  switch (code) {
    case ErrorCode::EnumerationTooLarge:
      return ErrorKind::Resource;
    case ErrorCode::TheoremViolation:
    case ErrorCode::BijectionFailure:
    case ErrorCode::CountMismatch:
      return ErrorKind::Internal;
    default:
      return ErrorKind::Domain;
  }
}

}  // namespace tilegraph
