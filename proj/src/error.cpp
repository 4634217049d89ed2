#include "cyclerank/error.hpp"

namespace cyclerank {

ErrorCategory category_of(ErrorCode code) noexcept {
  switch (code) {
    case ErrorCode::InvalidArgument:
    case ErrorCode::UnsupportedK:
      return ErrorCategory::Usage;
    case ErrorCode::IndexOutOfRange:
    case ErrorCode::DuplicateEdge:
    case ErrorCode::NegativeWeight:
    case ErrorCode::NotSymmetric:
    case ErrorCode::ParseError:
    case ErrorCode::UnresolvedLabel:
    case ErrorCode::IoError:
    case ErrorCode::LabelMismatchAcrossYears:
    case ErrorCode::NonSquareMatrix:
    case ErrorCode::TooFewYears:
    case ErrorCode::InconsistentLabels:
    case ErrorCode::DegenerateTruth:
      return ErrorCategory::Data;
    default:
      return ErrorCategory::Numerical;
  }
}

std::string_view name_of(ErrorCode code) noexcept {
  switch (code) {
    case ErrorCode::InvalidArgument: return "InvalidArgument";
    case ErrorCode::IndexOutOfRange: return "IndexOutOfRange";
    case ErrorCode::DuplicateEdge: return "DuplicateEdge";
    case ErrorCode::NegativeWeight: return "NegativeWeight";
    case ErrorCode::NotSymmetric: return "NotSymmetric";
    case ErrorCode::ParseError: return "ParseError";
    case ErrorCode::UnresolvedLabel: return "UnresolvedLabel";
    case ErrorCode::IoError: return "IoError";
    case ErrorCode::LabelMismatchAcrossYears: return "LabelMismatchAcrossYears";
    case ErrorCode::NonSquareMatrix: return "NonSquareMatrix";
    case ErrorCode::TooFewYears: return "TooFewYears";
    case ErrorCode::InconsistentLabels: return "InconsistentLabels";
    case ErrorCode::DegenerateTruth: return "DegenerateTruth";
    case ErrorCode::UnsupportedK: return "UnsupportedK";
    case ErrorCode::ZeroSpectralRadius: return "ZeroSpectralRadius";
    case ErrorCode::NoConvergence: return "NoConvergence";
    case ErrorCode::SolverFailure: return "SolverFailure";
    case ErrorCode::DegenerateDominantEigenvalue: return "DegenerateDominantEigenvalue";
    case ErrorCode::LambdaMismatch: return "LambdaMismatch";
    case ErrorCode::OutOfBounds: return "OutOfBounds";
    case ErrorCode::AlphaTooLarge: return "AlphaTooLarge";
    case ErrorCode::Overflow: return "Overflow";
    case ErrorCode::InconclusiveSpectralGap: return "InconclusiveSpectralGap";
    case ErrorCode::NonFiniteScore: return "NonFiniteScore";
  }
  return "Unknown";
}

}  // namespace cyclerank
