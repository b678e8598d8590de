#include "nvforge/growth.hpp"

#include <cmath>

#include "nvforge/errors.hpp"
#include "nvforge/units.hpp"

namespace nvforge {

void validate_growth_law(const GrowthLaw& law) {
  if (!(law.coefficient_a > 0.0) || !std::isfinite(law.coefficient_a)) {
    fail(ErrorCode::InvalidArgument, "growth law: coefficient a must be > 0");
  }
  if (!(law.exponent_b > 0.0) || !(law.exponent_b < 1.0)) {
    fail(ErrorCode::InvalidArgument,
         "growth law: exponent b must lie in (0, 1)");
  }
}

double p1_from_nc(const GrowthRecipe& recipe, const GrowthLaw& law) {
  validate_growth_law(law);
  if (!(recipe.nc_ratio_ppm >= 0.0) || !std::isfinite(recipe.nc_ratio_ppm)) {
    fail(ErrorCode::InvalidArgument, "nc_ratio_ppm must be >= 0");
  }
  if (recipe.nc_ratio_ppm == 0.0) return 0.0;
  return law.coefficient_a * std::pow(recipe.nc_ratio_ppm, law.exponent_b);
}

GrowthLaw fit_growth_law(const std::vector<std::pair<double, double>>& points) {
  if (points.size() < 2) {
    fail(ErrorCode::InsufficientData,
         "growth fit needs at least 2 points, got " +
             std::to_string(points.size()));
  }
  double sx = 0, sy = 0, sxx = 0, sxy = 0;
  const double n = static_cast<double>(points.size());
  for (const auto& [nc, p1] : points) {
    if (!(nc > 0.0) || !(p1 > 0.0)) {
      fail(ErrorCode::InvalidArgument,
           "growth fit: all points need nc > 0 and p1 > 0");
    }
    const double x = std::log(nc);
    const double y = std::log(p1);
    sx += x;
    sy += y;
    sxx += x * x;
    sxy += x * y;
  }
  const double denom = n * sxx - sx * sx;
  if (std::abs(denom) <= 1e-12 * n * sxx) {
    fail(ErrorCode::DegenerateData, "growth fit: all nc values equal");
  }
  GrowthLaw law;
  law.exponent_b = (n * sxy - sx * sy) / denom;
  law.coefficient_a = std::exp((sy - law.exponent_b * sx) / n);
  return law;
}

double asgrown_nv_minus(double p1_ppm, double ratio) {
  if (!(p1_ppm >= 0.0)) {
    fail(ErrorCode::InvalidArgument, "p1_ppm must be >= 0");
  }
  if (!(ratio > 0.0) || !(ratio < 1.0)) {
    fail(ErrorCode::InvalidArgument, "as-grown NV/P1 ratio must be in (0, 1)");
  }
  return ppm_to_ppb(p1_ppm * ratio);
}

}  // namespace nvforge
