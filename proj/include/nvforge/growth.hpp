#pragma once

#include <utility>
#include <vector>

namespace nvforge {

// Empirical power law P1 = a * (N/C)^b mapping the plasma nitrogen-to-carbon
// ratio (ppm) to the as-grown P1 concentration (ppm). The literal default
// (0.09, 0.5) follows the published rough trend; a table-fitted law is
// available through fit_growth_law and is the accuracy path. The two are
// never blended.
struct GrowthLaw {
  double coefficient_a = 0.09;
  double exponent_b = 0.5;
};

struct GrowthRecipe {
  double nc_ratio_ppm = 0.0;
};

// Default as-grown NV-/P1 ratio (dimensionless).
inline constexpr double kDefaultAsGrownNvRatio = 0.0025;

void validate_growth_law(const GrowthLaw& law);

// P1 (ppm) from the plasma N/C ratio.
double p1_from_nc(const GrowthRecipe& recipe, const GrowthLaw& law);

// Ordinary least squares in log-log space over (nc_ppm, p1_ppm) points.
GrowthLaw fit_growth_law(const std::vector<std::pair<double, double>>& points);

// As-grown NV- (ppb) from as-grown P1 (ppm).
double asgrown_nv_minus(double p1_ppm, double ratio = kDefaultAsGrownNvRatio);

}  // namespace nvforge
