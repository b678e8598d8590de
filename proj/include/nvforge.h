/*
 * nvforge C API.
 *
 * Opaque-session, string-in / string-out interface over the nvforge core.
 * Typical use:
 *
 *   nvf_session* s = nvf_session_new();
 *   nvf_config_set(s, "predict.p1_ppm", "2.2");
 *   nvf_config_set(s, "predict.energy_mev", "2");
 *   nvf_config_set(s, "predict.fluence_e_per_cm2", "1e17");
 *   char* out = NULL;
 *   nvf_status rc = nvf_run(s, "predict", &out);
 *   if (rc == NVF_OK) { puts(out); nvf_string_free(out); }
 *   else fprintf(stderr, "%s: %s\n", nvf_status_name(rc),
 *                nvf_session_last_error(s));
 *   nvf_session_free(s);
 *
 * All functions are thread-compatible: distinct sessions may be used from
 * distinct threads; a single session must not be shared without external
 * synchronization.
 */
#ifndef NVFORGE_H
#define NVFORGE_H

#ifndef NVF_API
#if defined(_WIN32)
#define NVF_API
#else
#define NVF_API __attribute__((visibility("default")))
#endif
#endif

#ifdef __cplusplus
extern "C" {
#endif

/* Stable status codes. Values 1..8 are input/validation failures (process
 * exit 2 in the CLI); the remaining nonzero codes are model/runtime failures
 * (exit 3). */
typedef enum nvf_status {
  NVF_OK = 0,
  NVF_INVALID_ARGUMENT = 1,
  NVF_BAD_CONFIG = 2,
  NVF_IO_ERROR = 3,
  NVF_PARSE_ERROR = 4,
  NVF_DUPLICATE_WAVELENGTH = 5,
  NVF_TOO_SHORT = 6,
  NVF_UNKNOWN_TABLE = 7,
  NVF_NON_POSITIVE_THICKNESS = 8,
  NVF_ZERO_DENOMINATOR = 9,
  NVF_UNKNOWN_ENERGY = 10,
  NVF_ENERGY_MISMATCH = 11,
  NVF_INSUFFICIENT_DATA = 12,
  NVF_DEGENERATE_DATA = 13,
  NVF_NON_CONVERGENCE = 14,
  NVF_MODEL_OVERRUN = 15,
  NVF_OUT_OF_RANGE = 16,
  NVF_NON_MONOTONIC_DATA = 17,
  NVF_WINDOW_OUT_OF_RANGE = 18,
  NVF_EMPTY_OVERLAP = 19,
  NVF_KIND_MISMATCH = 20,
  NVF_DEGENERATE_REFERENCES = 21,
  NVF_DEGENERATE_SIGNAL = 22,
  NVF_BAD_CALIBRATION = 23,
  NVF_UNCALIBRATED_ENERGY = 24,
  NVF_NO_FEASIBLE_FLUENCE = 25,
  NVF_NO_FEASIBLE_RECIPE = 26,
  NVF_REGRESSION_FAILURE = 27,
  NVF_INTERNAL = 28,
  NVF_BAD_HANDLE = 100
} nvf_status;

/* Opaque session: a key/value settings store plus last-error state. */
typedef struct nvf_session nvf_session;

/* Returns NULL only on allocation failure. */
NVF_API nvf_session* nvf_session_new(void);
NVF_API void nvf_session_free(nvf_session* session);

/* Message of the most recent failed call on this session ("" after a
 * success). The pointer stays owned by the session and is invalidated by the
 * next call on it. */
NVF_API const char* nvf_session_last_error(const nvf_session* session);

/* Sets one dotted config key (e.g. "coherence.t2_other_us" = "694").
 * Unknown keys yield NVF_BAD_CONFIG. Later sets overwrite earlier ones. */
NVF_API nvf_status nvf_config_set(nvf_session* session, const char* key,
                                  const char* value);

/* Loads a `key = value` config file into the session, line order. */
NVF_API nvf_status nvf_config_load(nvf_session* session, const char* path);

/* Current value of a key, or NULL when unset (or on a bad handle/key). The
 * pointer stays owned by the session and is invalidated when the key is next
 * modified. */
NVF_API const char* nvf_config_get(const nvf_session* session,
                                   const char* key);

/* Runs one command ("predict", "optimize", "design", "fit-pl", "fit-echo",
 * "absorption", "calibrate", "regress", "report", "dataset-dump") against the
 * session
 * settings. On NVF_OK, *out receives a NUL-terminated buffer with the
 * command's primary output (JSON for most commands); release it with
 * nvf_string_free. On failure *out is set to NULL. */
NVF_API nvf_status nvf_run(nvf_session* session, const char* command,
                           char** out);

NVF_API void nvf_string_free(char* s);

/* Stable identifier of a status, e.g. "ZeroDenominator". */
NVF_API const char* nvf_status_name(nvf_status status);

/* 1 when the status is an input/validation failure, else 0. */
NVF_API int nvf_status_is_validation(nvf_status status);

/* Semantic library version, e.g. "1.0.0". */
NVF_API const char* nvf_version(void);

#ifdef __cplusplus
}
#endif

#endif /* NVFORGE_H */
