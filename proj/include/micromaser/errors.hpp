#pragma once

#include <stdexcept>
#include <string>

namespace micromaser {

enum class ErrorCode {
  kShape,
  kDimensionLimit,
  kSymmetry,
  kDomain,
  kValidation,
  kStability,
  kSettings,
  kDivergence,
  kTruncation,
  kFit,
  kUndefinedCorrelation,
};

/// Machine-readable name, e.g. "truncation".
const char* to_string(ErrorCode code) noexcept;

/// Base of every error raised by the library. Carries a code so callers
/// (the CLI in particular) can map failures to exit statuses.
class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& what)
      : std::runtime_error(what), code_(code) {}
  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

#define MICROMASER_DEFINE_ERROR(Name, Code)                    \
  class Name : public Error {                                  \
   public:                                                     \
    explicit Name(const std::string& what) : Error(Code, what) {} \
  };

MICROMASER_DEFINE_ERROR(ShapeError, ErrorCode::kShape)
MICROMASER_DEFINE_ERROR(DimensionLimitError, ErrorCode::kDimensionLimit)
MICROMASER_DEFINE_ERROR(SymmetryError, ErrorCode::kSymmetry)
MICROMASER_DEFINE_ERROR(DomainError, ErrorCode::kDomain)
MICROMASER_DEFINE_ERROR(ValidationError, ErrorCode::kValidation)
MICROMASER_DEFINE_ERROR(StabilityError, ErrorCode::kStability)
MICROMASER_DEFINE_ERROR(SettingsError, ErrorCode::kSettings)
MICROMASER_DEFINE_ERROR(DivergenceError, ErrorCode::kDivergence)
MICROMASER_DEFINE_ERROR(TruncationError, ErrorCode::kTruncation)
MICROMASER_DEFINE_ERROR(FitError, ErrorCode::kFit)
MICROMASER_DEFINE_ERROR(UndefinedCorrelationError, ErrorCode::kUndefinedCorrelation)

#undef MICROMASER_DEFINE_ERROR

// Reservoir populations for which the upward rate is not below the downward
// rate. There is no thermal steady state in this regime.
class GainRegimeError : public StabilityError {
 public:
  using StabilityError::StabilityError;
};

inline const char* to_string(ErrorCode code) noexcept {
  switch (code) {
    case ErrorCode::kShape: return "shape";
    case ErrorCode::kDimensionLimit: return "dimension_limit";
    case ErrorCode::kSymmetry: return "symmetry";
    case ErrorCode::kDomain: return "domain";
    case ErrorCode::kValidation: return "validation";
    case ErrorCode::kStability: return "stability";
    case ErrorCode::kSettings: return "settings";
    case ErrorCode::kDivergence: return "divergence";
    case ErrorCode::kTruncation: return "truncation";
    case ErrorCode::kFit: return "fit";
    case ErrorCode::kUndefinedCorrelation: return "undefined_correlation";
  }
  return "unknown";
}

}  // namespace micromaser
