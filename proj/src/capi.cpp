#include "nvforge.h"

#include <cstdlib>
#include <cstring>
#include <new>
#include <string>

#include "nvforge/config.hpp"
#include "nvforge/errors.hpp"
#include "nvforge/runner.hpp"

struct nvf_session {
  nvforge::Settings settings;
  std::string last_error;
};

namespace {

using nvforge::ErrorCode;

// The C enum mirrors ErrorCode value-for-value; keep them locked together.
static_assert(NVF_OK == static_cast<int>(ErrorCode::Ok));
static_assert(NVF_INVALID_ARGUMENT == static_cast<int>(ErrorCode::InvalidArgument));
static_assert(NVF_BAD_CONFIG == static_cast<int>(ErrorCode::BadConfig));
static_assert(NVF_IO_ERROR == static_cast<int>(ErrorCode::IoError));
static_assert(NVF_PARSE_ERROR == static_cast<int>(ErrorCode::ParseError));
static_assert(NVF_DUPLICATE_WAVELENGTH ==
              static_cast<int>(ErrorCode::DuplicateWavelength));
static_assert(NVF_TOO_SHORT == static_cast<int>(ErrorCode::TooShort));
static_assert(NVF_UNKNOWN_TABLE == static_cast<int>(ErrorCode::UnknownTable));
static_assert(NVF_NON_POSITIVE_THICKNESS ==
              static_cast<int>(ErrorCode::NonPositiveThickness));
static_assert(NVF_ZERO_DENOMINATOR ==
              static_cast<int>(ErrorCode::ZeroDenominator));
static_assert(NVF_UNKNOWN_ENERGY == static_cast<int>(ErrorCode::UnknownEnergy));
static_assert(NVF_ENERGY_MISMATCH ==
              static_cast<int>(ErrorCode::EnergyMismatch));
static_assert(NVF_INSUFFICIENT_DATA ==
              static_cast<int>(ErrorCode::InsufficientData));
static_assert(NVF_DEGENERATE_DATA ==
              static_cast<int>(ErrorCode::DegenerateData));
static_assert(NVF_NON_CONVERGENCE ==
              static_cast<int>(ErrorCode::NonConvergence));
static_assert(NVF_MODEL_OVERRUN == static_cast<int>(ErrorCode::ModelOverrun));
static_assert(NVF_OUT_OF_RANGE == static_cast<int>(ErrorCode::OutOfRange));
static_assert(NVF_NON_MONOTONIC_DATA ==
              static_cast<int>(ErrorCode::NonMonotonicData));
static_assert(NVF_WINDOW_OUT_OF_RANGE ==
              static_cast<int>(ErrorCode::WindowOutOfRange));
static_assert(NVF_EMPTY_OVERLAP == static_cast<int>(ErrorCode::EmptyOverlap));
static_assert(NVF_KIND_MISMATCH == static_cast<int>(ErrorCode::KindMismatch));
static_assert(NVF_DEGENERATE_REFERENCES ==
              static_cast<int>(ErrorCode::DegenerateReferences));
static_assert(NVF_DEGENERATE_SIGNAL ==
              static_cast<int>(ErrorCode::DegenerateSignal));
static_assert(NVF_BAD_CALIBRATION ==
              static_cast<int>(ErrorCode::BadCalibration));
static_assert(NVF_UNCALIBRATED_ENERGY ==
              static_cast<int>(ErrorCode::UncalibratedEnergy));
static_assert(NVF_NO_FEASIBLE_FLUENCE ==
              static_cast<int>(ErrorCode::NoFeasibleFluence));
static_assert(NVF_NO_FEASIBLE_RECIPE ==
              static_cast<int>(ErrorCode::NoFeasibleRecipe));
static_assert(NVF_REGRESSION_FAILURE ==
              static_cast<int>(ErrorCode::RegressionFailure));
static_assert(NVF_INTERNAL == static_cast<int>(ErrorCode::Internal));

template <typename Fn>
nvf_status guarded(nvf_session* session, Fn&& fn) {
  if (session == nullptr) return NVF_BAD_HANDLE;
  try {
    fn();
    session->last_error.clear();
    return NVF_OK;
  } catch (const nvforge::Error& e) {
    session->last_error = e.what();
    return static_cast<nvf_status>(static_cast<int>(e.code()));
  } catch (const std::exception& e) {
    session->last_error = e.what();
    return NVF_INTERNAL;
  } catch (...) {
    session->last_error = "unknown failure";
    return NVF_INTERNAL;
  }
}

}  // namespace

extern "C" {

nvf_session* nvf_session_new(void) { return new (std::nothrow) nvf_session(); }

void nvf_session_free(nvf_session* session) { delete session; }

const char* nvf_session_last_error(const nvf_session* session) {
  return session == nullptr ? "bad session handle"
                            : session->last_error.c_str();
}

nvf_status nvf_config_set(nvf_session* session, const char* key,
                          const char* value) {
  return guarded(session, [&] {
    if (key == nullptr || value == nullptr) {
      nvforge::fail(ErrorCode::InvalidArgument, "key/value must not be NULL");
    }
    session->settings.set(key, value);
  });
}

nvf_status nvf_config_load(nvf_session* session, const char* path) {
  return guarded(session, [&] {
    if (path == nullptr) {
      nvforge::fail(ErrorCode::InvalidArgument, "path must not be NULL");
    }
    nvforge::load_config_file(path, session->settings);
  });
}

const char* nvf_config_get(const nvf_session* session, const char* key) {
  if (session == nullptr || key == nullptr) return nullptr;
  const std::string* value = session->settings.lookup(key);
  return value == nullptr ? nullptr : value->c_str();
}

nvf_status nvf_run(nvf_session* session, const char* command, char** out) {
  if (out != nullptr) *out = nullptr;
  return guarded(session, [&] {
    if (command == nullptr || out == nullptr) {
      nvforge::fail(ErrorCode::InvalidArgument,
                    "command/out must not be NULL");
    }
    const std::string text =
        nvforge::run_command(command, session->settings);
    char* buffer = static_cast<char*>(std::malloc(text.size() + 1));
    if (buffer == nullptr) {
      nvforge::fail(ErrorCode::Internal, "out of memory");
    }
    std::memcpy(buffer, text.c_str(), text.size() + 1);
    *out = buffer;
  });
}

void nvf_string_free(char* s) { std::free(s); }

const char* nvf_status_name(nvf_status status) {
  if (status == NVF_BAD_HANDLE) return "BadHandle";
  const int v = static_cast<int>(status);
  if (v < 0 || v > static_cast<int>(ErrorCode::Internal)) return "Internal";
  return nvforge::error_name(static_cast<ErrorCode>(v));
}

int nvf_status_is_validation(nvf_status status) {
  const int v = static_cast<int>(status);
  if (v <= 0 || v > static_cast<int>(ErrorCode::Internal)) return 0;
  return nvforge::is_validation_error(static_cast<ErrorCode>(v)) ? 1 : 0;
}

const char* nvf_version(void) { return "1.0.0"; }

}  // extern "C"
