#pragma once

#include <stdexcept>
#include <string>

namespace nvforge {

// Error identities surfaced through the C API and the CLI.
enum class ErrorCode {
  Ok = 0,
  InvalidArgument,
  BadConfig,
  IoError,
  ParseError,
  DuplicateWavelength,
  TooShort,
  UnknownTable,
  NonPositiveThickness,
  ZeroDenominator,
  UnknownEnergy,
  EnergyMismatch,
  InsufficientData,
  DegenerateData,
  NonConvergence,
  ModelOverrun,
  OutOfRange,
  NonMonotonicData,
  WindowOutOfRange,
  EmptyOverlap,
  KindMismatch,
  DegenerateReferences,
  DegenerateSignal,
  BadCalibration,
  UncalibratedEnergy,
  NoFeasibleFluence,
  NoFeasibleRecipe,
  RegressionFailure,
  Internal,
};

// Stable name used in diagnostics, e.g. "ZeroDenominator".
const char* error_name(ErrorCode code);

// Input/validation errors map to process exit 2, model errors to exit 3.
bool is_validation_error(ErrorCode code);

class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& message)
      : std::runtime_error(message), code_(code) {}
  ErrorCode code() const { return code_; }

 private:
  ErrorCode code_;
};

[[noreturn]] void fail(ErrorCode code, const std::string& message);

// Throws InvalidArgument with `what` when `ok` is false.
void require(bool ok, const std::string& what);

}  // namespace nvforge
