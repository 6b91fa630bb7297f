#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace tilegraph {

enum class ErrorCode {
  // tiles
  EmptyRows,
  RowsNotDecreasing,
  UnsupportedDimension,
  NegativeDegree,
  NotInvertible,
  InvalidInput,
  // graph
  CornersNotInvertible,
  EnumerationTooLarge,
  SourceRangeMismatch,
  DegreeOutOfRange,
  BijectionFailure,
  ConstantNotValid,
  // zlin
  NoSolution,
  ColumnsDependent,
  SublatticeNotContained,
  DimensionMismatch,
  // ktheory
  InfiniteK0,
  HypothesisFailed,
  TheoremViolation,
  // subshift
  TraceNonZero,
  CountMismatch,
  // cli
  MismatchAgainstReference,
};

std::string_view to_string(ErrorCode code) noexcept;

/// Broad class of an error, used by the CLI to choose an exit status.
enum class ErrorKind { Domain, Internal, Resource };

ErrorKind kind_of(ErrorCode code) noexcept;

class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& detail)
      : std::runtime_error(std::string(to_string(code)) + ": " + detail), code_(code) {}

  ErrorCode code() const noexcept { return code_; }
  ErrorKind kind() const noexcept { return kind_of(code_); }

 private:
  ErrorCode code_;
};

}  // namespace tilegraph
