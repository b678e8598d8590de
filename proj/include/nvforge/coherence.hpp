#pragma once

#include <numbers>

namespace nvforge {

// Nitrogen-limited Hahn-echo coherence model:
//   1/T2([N]) = b_rate * [N] + 1/t2_other.
// b_rate is angular (s^-1 per ppm); the CLI accepts kHz/ppm and converts once
// at the boundary.
struct CoherenceParams {
  double b_rate = 2.0 * std::numbers::pi * 1000.0;  // s^-1 per ppm
  double t2_other_s = 694e-6;
  double p1_fraction = 0.75;  // [P1]/[N]
};

void validate_coherence_params(const CoherenceParams& params);

// T2 (seconds) from total nitrogen (ppm).
double t2_from_nitrogen(double n_ppm, const CoherenceParams& params = {});

// Exact inverse: nitrogen (ppm) from T2 (seconds). OutOfRange when
// t2 > t2_other (the model cannot explain a longer coherence time).
double nitrogen_from_t2(double t2_s, const CoherenceParams& params = {});

// Total nitrogen (ppm) from the P1 concentration (ppm).
double nitrogen_from_p1(double p1_ppm, const CoherenceParams& params = {});

}  // namespace nvforge
