#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace cyclerank {

// Every failure the library reports. The C API mirrors these one-to-one.
enum class ErrorCode {
  InvalidArgument = 1,
  IndexOutOfRange,
  DuplicateEdge,
  NegativeWeight,
  NotSymmetric,
  ParseError,
  UnresolvedLabel,
  IoError,
  LabelMismatchAcrossYears,
  NonSquareMatrix,
  TooFewYears,
  InconsistentLabels,
  DegenerateTruth,
  UnsupportedK,
  ZeroSpectralRadius,
  NoConvergence,
  SolverFailure,
  DegenerateDominantEigenvalue,
  LambdaMismatch,
  OutOfBounds,
  AlphaTooLarge,
  Overflow,
  InconclusiveSpectralGap,
  NonFiniteScore,
};

enum class ErrorCategory { Usage, Data, Numerical };

ErrorCategory category_of(ErrorCode code) noexcept;
std::string_view name_of(ErrorCode code) noexcept;

class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& what)
      : std::runtime_error(std::string(name_of(code)) + ": " + what), code_(code), detail_(what) {}

  ErrorCode code() const noexcept { return code_; }
  ErrorCategory category() const noexcept { return category_of(code_); }
  // Message without the code prefix.
  const std::string& detail() const noexcept { return detail_; }

 private:
  ErrorCode code_;
  std::string detail_;
};

}  // namespace cyclerank
