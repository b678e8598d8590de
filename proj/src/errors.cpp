#include "nvforge/errors.hpp"

namespace nvforge {

const char* error_name(ErrorCode code) {
  switch (code) {
    case ErrorCode::Ok: return "Ok";
    case ErrorCode::InvalidArgument: return "InvalidArgument";
    case ErrorCode::BadConfig: return "BadConfig";
    case ErrorCode::IoError: return "IoError";
    case ErrorCode::ParseError: return "ParseError";
    case ErrorCode::DuplicateWavelength: return "DuplicateWavelength";
    case ErrorCode::TooShort: return "TooShort";
    case ErrorCode::UnknownTable: return "UnknownTable";
    case ErrorCode::NonPositiveThickness: return "NonPositiveThickness";
    case ErrorCode::ZeroDenominator: return "ZeroDenominator";
    case ErrorCode::UnknownEnergy: return "UnknownEnergy";
    case ErrorCode::EnergyMismatch: return "EnergyMismatch";
    case ErrorCode::InsufficientData: return "InsufficientData";
    case ErrorCode::DegenerateData: return "DegenerateData";
    case ErrorCode::NonConvergence: return "NonConvergence";
    case ErrorCode::ModelOverrun: return "ModelOverrun";
    case ErrorCode::OutOfRange: return "OutOfRange";
    case ErrorCode::NonMonotonicData: return "NonMonotonicData";
    case ErrorCode::WindowOutOfRange: return "WindowOutOfRange";
    case ErrorCode::EmptyOverlap: return "EmptyOverlap";
    case ErrorCode::KindMismatch: return "KindMismatch";
    case ErrorCode::DegenerateReferences: return "DegenerateReferences";
    case ErrorCode::DegenerateSignal: return "DegenerateSignal";
    case ErrorCode::BadCalibration: return "BadCalibration";
    case ErrorCode::UncalibratedEnergy: return "UncalibratedEnergy";
    case ErrorCode::NoFeasibleFluence: return "NoFeasibleFluence";
    case ErrorCode::NoFeasibleRecipe: return "NoFeasibleRecipe";
    case ErrorCode::RegressionFailure: return "RegressionFailure";
    case ErrorCode::Internal: return "Internal";
  }
  return "Internal";
}

bool is_validation_error(ErrorCode code) {
  switch (code) {
    case ErrorCode::InvalidArgument:
    case ErrorCode::BadConfig:
    case ErrorCode::IoError:
    case ErrorCode::ParseError:
    case ErrorCode::DuplicateWavelength:
    case ErrorCode::TooShort:
    case ErrorCode::UnknownTable:
    case ErrorCode::NonPositiveThickness:
      return true;
    default:
      return false;
  }
}

void fail(ErrorCode code, const std::string& message) {
  throw Error(code, message);
}

void require(bool ok, const std::string& what) {
  if (!ok) fail(ErrorCode::InvalidArgument, what);
}

}  // namespace nvforge
