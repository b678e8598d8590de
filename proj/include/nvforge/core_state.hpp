#pragma once

#include <string>

#include "nvforge/jsonout.hpp"

namespace nvforge {

// Processing stage of a diamond plate. Transitions only move forward:
// AsGrown -> Irradiated -> Annealed.
enum class Stage { AsGrown, Irradiated, Annealed };

const char* stage_name(Stage s);

// Defect inventory of a plate at one processing stage. Immutable value record;
// negative concentrations are rejected at construction.
class MaterialState {
 public:
  MaterialState(double p1_ppm, double nv_minus_ppb, double nv_zero_ppb,
                double vacancy_ppm, Stage stage);

  double p1_ppm() const { return p1_ppm_; }
  double nv_minus_ppb() const { return nv_minus_ppb_; }
  double nv_zero_ppb() const { return nv_zero_ppb_; }
  double vacancy_ppm() const { return vacancy_ppm_; }
  Stage stage() const { return stage_; }

  // Total NV concentration, ppb (exact sum of the two charge states).
  double nv_total_ppb() const { return nv_minus_ppb_ + nv_zero_ppb_; }

  Json to_json() const;

 private:
  double p1_ppm_;
  double nv_minus_ppb_;
  double nv_zero_ppb_;
  double vacancy_ppm_;
  Stage stage_;
};

// Electron-irradiation step: beam energy and areal fluence.
struct IrradiationPlan {
  double energy_mev = 2.0;
  double fluence_e_per_cm2 = 0.0;

  IrradiationPlan(double energy, double fluence);
};

// NV creation ratios, dimensionless fractions (not percent).
struct ConversionRatios {
  double r_re = 0.0;        // NV_total / P1_remain
  double r_con = 0.0;       // NV_total / P1_grown
  double r_con_minus = 0.0; // NV- / P1_grown

  Json to_json() const;
};

// Ratios between an as-grown state and the treated (annealed) state derived
// from it. NV concentrations are converted ppb -> ppm before dividing.
ConversionRatios conversion_ratios(const MaterialState& grown,
                                   const MaterialState& treated);

}  // namespace nvforge
