#include "nvforge/sensitivity.hpp"

#include <cmath>

#include "nvforge/errors.hpp"

namespace nvforge {

Json SensitivityReport::to_json() const {
  Json j = Json::object();
  j.set("fom", Json::number(fom));
  j.set("contrast_factor", Json::number(contrast_factor));
  j.set("product_ratio", Json::number(product_ratio));
  j.set("sqrt_factor", Json::number(sqrt_factor));
  return j;
}

double figure_of_merit(double nv_minus_ppb, double t2_s,
                       double contrast_factor) {
  require(nv_minus_ppb >= 0.0, "nv_minus_ppb must be >= 0");
  require(t2_s >= 0.0, "t2_s must be >= 0");
  require(contrast_factor >= 0.0, "contrast_factor must be >= 0");
  return contrast_factor * std::sqrt(nv_minus_ppb * t2_s);
}

double contrast_factor(double nv_minus_frac, const BrightnessWeights& weights) {
  require(nv_minus_frac >= 0.0 && nv_minus_frac <= 1.0,
          "nv_minus_frac must be in [0, 1]");
  require(weights.b_minus > 0.0 && weights.b_zero > 0.0,
          "brightness weights must be > 0");
  const double minus = nv_minus_frac * weights.b_minus;
  const double zero = (1.0 - nv_minus_frac) * weights.b_zero;
  if (minus + zero == 0.0) return 0.0;
  return minus / (minus + zero);
}

std::pair<double, double> improvement_ratio(
    std::pair<double, double> before_nv_t2,
    std::pair<double, double> after_nv_t2) {
  const double before = before_nv_t2.first * before_nv_t2.second;
  const double after = after_nv_t2.first * after_nv_t2.second;
  if (!(before > 0.0)) {
    fail(ErrorCode::ZeroDenominator,
         "improvement_ratio: before product must be > 0");
  }
  const double ratio = after / before;
  return {ratio, std::sqrt(ratio)};
}

}  // namespace nvforge
