#pragma once

#include <utility>

#include "nvforge/jsonout.hpp"

namespace nvforge {

// Relative shot-noise figure of merit: fom = C * sqrt(NV- * T2).
// Sensitivity is proportional to 1/fom; only ratios are meaningful, so no
// absolute field units are ever reported.
struct SensitivityReport {
  double fom = 0.0;
  double contrast_factor = 0.0;
  double product_ratio = 0.0;
  double sqrt_factor = 0.0;

  Json to_json() const;
};

// Relative brightness of the two charge states under green excitation;
// defaults treat them as equal, reducing the contrast factor to the
// NV- fraction itself.
struct BrightnessWeights {
  double b_minus = 1.0;
  double b_zero = 1.0;
};

double figure_of_merit(double nv_minus_ppb, double t2_s,
                       double contrast_factor);

// Photon-share contrast model: f*b- / (f*b- + (1-f)*b0), f in [0, 1].
double contrast_factor(double nv_minus_frac,
                       const BrightnessWeights& weights = {});

// (product_ratio, sqrt_factor) between a before and an after
// (nv_minus_ppb, t2) pair. Units cancel as long as both pairs use the same.
std::pair<double, double> improvement_ratio(
    std::pair<double, double> before_nv_t2,
    std::pair<double, double> after_nv_t2);

}  // namespace nvforge
