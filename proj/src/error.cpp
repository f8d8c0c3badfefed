#include "mrc/error.hpp"

namespace mrc {

std::string_view to_string(ErrorCode code) noexcept {
  switch (code) {
    case ErrorCode::NonSymmetricCoupling: return "NonSymmetricCoupling";
    case ErrorCode::DiagonalNotUnity: return "DiagonalNotUnity";
    case ErrorCode::CouplingOutOfRange: return "CouplingOutOfRange";
    case ErrorCode::NotPositiveDefinite: return "NotPositiveDefinite";
    case ErrorCode::DimensionMismatch: return "DimensionMismatch";
    case ErrorCode::NonPositiveComponent: return "NonPositiveComponent";
    case ErrorCode::InvalidGrid: return "InvalidGrid";
    case ErrorCode::InvalidArgument: return "InvalidArgument";
    case ErrorCode::KOutOfRange: return "KOutOfRange";
    case ErrorCode::SingularCoupling: return "SingularCoupling";
    case ErrorCode::SingularAtFrequency: return "SingularAtFrequency";
    case ErrorCode::EmptySpectrum: return "EmptySpectrum";
    case ErrorCode::UnmatchedPeak: return "UnmatchedPeak";
    case ErrorCode::NoBracket: return "NoBracket";
    case ErrorCode::ConfigParse: return "ConfigParse";
  }
  return "Unknown";
}

ErrorCategory category_of(ErrorCode code) noexcept {
  switch (code) {
    case ErrorCode::ConfigParse:
      return ErrorCategory::Config;
    case ErrorCode::SingularCoupling:
    case ErrorCode::SingularAtFrequency:
    case ErrorCode::EmptySpectrum:
    case ErrorCode::UnmatchedPeak:
    case ErrorCode::NoBracket:
      return ErrorCategory::Numerical;
    default:
      return ErrorCategory::Validation;
  }
}

}  // namespace mrc
