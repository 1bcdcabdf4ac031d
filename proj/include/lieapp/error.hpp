#pragma once

#include <stdexcept>
#include <string>

namespace lieapp {

enum class ErrorCode {
  UnknownSurface,
  BadParams,
  BadConfig,
  SchemaError,
  GeometryError,
  UmbilicEverywhere,
  ProjectionSingular,
  DegeneratePair,
  NoNullVectors,
  AllZeroCoefficients,
  TauNotInWedgeF,
  FrameDegenerate,
  AssociateSingular,
  NotApproximatelyFlat,
  RegularityViolation,
  SingularIntersection,
  DependentQuantities,
  DegenerateGInfinity,
};

const char* to_string(ErrorCode c);

class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& what)
      : std::runtime_error(std::string(to_string(code)) + ": " + what), code_(code) {}

  ErrorCode code() const { return code_; }

  /// Input/configuration problem, as opposed to a geometric one.
  bool is_config() const {
    switch (code_) {
      case ErrorCode::UnknownSurface:
      case ErrorCode::BadParams:
      case ErrorCode::BadConfig:
      case ErrorCode::SchemaError:
      case ErrorCode::AllZeroCoefficients:
        return true;
      default:
        return false;
    }
  }

 private:
  ErrorCode code_;
};

}  // namespace lieapp
