#include "nvforge/coherence.hpp"

#include <cmath>

#include "nvforge/errors.hpp"

namespace nvforge {

void validate_coherence_params(const CoherenceParams& params) {
  if (!(params.b_rate > 0.0)) {
    fail(ErrorCode::InvalidArgument, "coherence: b_rate must be > 0");
  }
  if (!(params.t2_other_s > 0.0)) {
    fail(ErrorCode::InvalidArgument, "coherence: t2_other_s must be > 0");
  }
  if (!(params.p1_fraction > 0.0) || !(params.p1_fraction <= 1.0)) {
    fail(ErrorCode::InvalidArgument,
         "coherence: p1_fraction must be in (0, 1]");
  }
}

double t2_from_nitrogen(double n_ppm, const CoherenceParams& params) {
  validate_coherence_params(params);
  if (!(n_ppm >= 0.0)) {
    fail(ErrorCode::InvalidArgument, "n_ppm must be >= 0");
  }
  return 1.0 / (params.b_rate * n_ppm + 1.0 / params.t2_other_s);
}

double nitrogen_from_t2(double t2_s, const CoherenceParams& params) {
  validate_coherence_params(params);
  if (!(t2_s > 0.0)) {
    fail(ErrorCode::OutOfRange, "t2 must be > 0");
  }
  if (t2_s > params.t2_other_s) {
    fail(ErrorCode::OutOfRange,
         "t2 " + std::to_string(t2_s) + " s exceeds the nitrogen-independent "
         "limit t2_other; no nitrogen concentration can explain it");
  }
  return (1.0 / t2_s - 1.0 / params.t2_other_s) / params.b_rate;
}

double nitrogen_from_p1(double p1_ppm, const CoherenceParams& params) {
  validate_coherence_params(params);
  if (!(p1_ppm >= 0.0)) {
    fail(ErrorCode::InvalidArgument, "p1_ppm must be >= 0");
  }
  return p1_ppm / params.p1_fraction;
}

}  // namespace nvforge
