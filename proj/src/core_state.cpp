#include "nvforge/core_state.hpp"

#include <cmath>

#include "nvforge/errors.hpp"
#include "nvforge/units.hpp"

namespace nvforge {

const char* stage_name(Stage s) {
  switch (s) {
    case Stage::AsGrown: return "as_grown";
    case Stage::Irradiated: return "irradiated";
    case Stage::Annealed: return "annealed";
  }
  return "as_grown";
}

static void require_finite_nonneg(double v, const char* what) {
  if (!std::isfinite(v) || v < 0.0) {
    fail(ErrorCode::InvalidArgument,
         std::string(what) + " must be finite and >= 0");
  }
}

MaterialState::MaterialState(double p1_ppm, double nv_minus_ppb,
                             double nv_zero_ppb, double vacancy_ppm,
                             Stage stage)
    : p1_ppm_(p1_ppm),
      nv_minus_ppb_(nv_minus_ppb),
      nv_zero_ppb_(nv_zero_ppb),
      vacancy_ppm_(vacancy_ppm),
      stage_(stage) {
  require_finite_nonneg(p1_ppm, "p1_ppm");
  require_finite_nonneg(nv_minus_ppb, "nv_minus_ppb");
  require_finite_nonneg(nv_zero_ppb, "nv_zero_ppb");
  require_finite_nonneg(vacancy_ppm, "vacancy_ppm");
}

Json MaterialState::to_json() const {
  Json j = Json::object();
  j.set("p1_ppm", Json::number(p1_ppm_));
  j.set("nv_minus_ppb", Json::number(nv_minus_ppb_));
  j.set("nv_zero_ppb", Json::number(nv_zero_ppb_));
  j.set("nv_total_ppb", Json::number(nv_total_ppb()));
  j.set("vacancy_ppm", Json::number(vacancy_ppm_));
  j.set("stage", Json::string(stage_name(stage_)));
  return j;
}

IrradiationPlan::IrradiationPlan(double energy, double fluence)
    : energy_mev(energy), fluence_e_per_cm2(fluence) {
  if (!std::isfinite(energy) || energy <= 0.0) {
    fail(ErrorCode::InvalidArgument, "energy_mev must be finite and > 0");
  }
  if (!std::isfinite(fluence) || fluence < 0.0) {
    fail(ErrorCode::InvalidArgument,
         "fluence_e_per_cm2 must be finite and >= 0");
  }
}

Json ConversionRatios::to_json() const {
  Json j = Json::object();
  j.set("r_re", Json::number(r_re));
  j.set("r_con", Json::number(r_con));
  j.set("r_con_minus", Json::number(r_con_minus));
  return j;
}

ConversionRatios conversion_ratios(const MaterialState& grown,
                                   const MaterialState& treated) {
  require(grown.stage() == Stage::AsGrown,
          "conversion_ratios: grown state must be as_grown");
  require(treated.stage() == Stage::Annealed,
          "conversion_ratios: treated state must be annealed");
  if (grown.p1_ppm() == 0.0 || treated.p1_ppm() == 0.0) {
    fail(ErrorCode::ZeroDenominator,
         "conversion_ratios: P1 concentration is zero");
  }
  ConversionRatios r;
  r.r_re = ppb_to_ppm(treated.nv_total_ppb()) / treated.p1_ppm();
  r.r_con = ppb_to_ppm(treated.nv_total_ppb()) / grown.p1_ppm();
  r.r_con_minus = ppb_to_ppm(treated.nv_minus_ppb()) / grown.p1_ppm();
  return r;
}

}  // namespace nvforge
