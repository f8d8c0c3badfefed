#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace mrc {

enum class ErrorCode {
  // validation
  NonSymmetricCoupling,
  DiagonalNotUnity,
  CouplingOutOfRange,
  NotPositiveDefinite,
  DimensionMismatch,
  NonPositiveComponent,
  InvalidGrid,
  InvalidArgument,
  KOutOfRange,
  // numerical
  SingularCoupling,
  SingularAtFrequency,
  EmptySpectrum,
  UnmatchedPeak,
  NoBracket,
  // configuration / input files
  ConfigParse,
};

// Maps onto the CLI exit codes: Config -> 2, Validation -> 3, Numerical -> 4.
enum class ErrorCategory { Config, Validation, Numerical };

std::string_view to_string(ErrorCode code) noexcept;
ErrorCategory category_of(ErrorCode code) noexcept;

class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& message)
      : std::runtime_error(std::string(to_string(code)) + ": " + message), code_(code) {}

  ErrorCode code() const noexcept { return code_; }
  ErrorCategory category() const noexcept { return category_of(code_); }

 private:
  ErrorCode code_;
};

}  // namespace mrc
