#pragma once

namespace nvforge {

// Carbon site density of diamond, atoms per cm^3.
inline constexpr double kDefaultCarbonDensityCm3 = 1.76e23;

// Concentration conversions between atomic parts-per-million / parts-per-billion
// and absolute defect density (cm^-3). The carbon density is configurable.
struct UnitSystem {
  double n_carbon_cm3 = kDefaultCarbonDensityCm3;

  double ppm_to_cm3(double ppm) const { return ppm * 1e-6 * n_carbon_cm3; }
  double cm3_to_ppm(double cm3) const { return cm3 / n_carbon_cm3 * 1e6; }
  double ppb_to_cm3(double ppb) const { return ppb * 1e-9 * n_carbon_cm3; }
  double cm3_to_ppb(double cm3) const { return cm3 / n_carbon_cm3 * 1e9; }
};

inline double ppm_to_ppb(double ppm) { return ppm * 1e3; }
inline double ppb_to_ppm(double ppb) { return ppb * 1e-3; }

}  // namespace nvforge
