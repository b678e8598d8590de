#include "nvforge/calibration.hpp"

#include <algorithm>
#include <cmath>

#include "nvforge/errors.hpp"
#include "nvforge/units.hpp"

namespace nvforge {

std::vector<std::pair<double, double>> implied_nv_series(
    const std::vector<DatasetRecord>& rows, double energy_mev) {
  std::vector<std::pair<double, double>> series;
  for (const auto& r : rows) {
    if (!r.energy_mev || *r.energy_mev != energy_mev) continue;
    if (!r.fluence_e_per_cm2 || !r.p1_grown_ppm || !r.r_con_minus_pct ||
        !r.nv_minus_frac_treated_pct) {
      continue;
    }
    if (!(*r.nv_minus_frac_treated_pct > 0.0)) {
      fail(ErrorCode::ZeroDenominator,
           "implied NV total needs a positive NV-/NV fraction");
    }
    const double nv_total = *r.p1_grown_ppm * (*r.r_con_minus_pct / 100.0) /
                            (*r.nv_minus_frac_treated_pct / 100.0);
    series.emplace_back(*r.fluence_e_per_cm2, nv_total);
  }
  std::sort(series.begin(), series.end());
  return series;
}

ConversionCurve conversion_curve_from_table(double energy_mev) {
  const auto rows = load_table("table1");
  const auto series = implied_nv_series(rows, energy_mev);
  if (series.empty()) {
    fail(ErrorCode::UnknownEnergy,
         "no irradiation series at " + Json::format_number(energy_mev) +
             " MeV");
  }
  return fit_conversion_curve(series, 2.2, energy_mev);
}

ChargeCurveCalibration charge_curve_from_series(
    const std::vector<DatasetRecord>& rows, double energy_mev) {
  std::vector<std::pair<double, double>> points;
  for (const auto& r : rows) {
    if (!r.energy_mev || *r.energy_mev != energy_mev) continue;
    if (!r.p1_grown_ppm || !r.r_con_minus_pct || !r.nv_minus_frac_treated_pct) {
      continue;
    }
    const double frac = *r.nv_minus_frac_treated_pct;
    const double nv_total =
        *r.p1_grown_ppm * (*r.r_con_minus_pct / 100.0) / (frac / 100.0);
    const double p1_remain = *r.p1_grown_ppm - nv_total;
    if (!(p1_remain > 0.0)) {
      fail(ErrorCode::ModelOverrun,
           "implied NV total exceeds grown P1 for sample " + r.sample_id);
    }
    points.emplace_back(nv_total / p1_remain * 100.0, frac);
  }
  if (points.empty()) {
    fail(ErrorCode::UnknownEnergy,
         "no irradiation series at " + Json::format_number(energy_mev) +
             " MeV");
  }
  // Half-neutral anchor from the published threshold statement.
  points.emplace_back(35.0, 50.0);
  return calibrate_charge_curve(std::move(points));
}

GrowthLaw growth_law_from_table() {
  const auto rows = load_table("table2");
  std::vector<std::pair<double, double>> points;
  for (const auto& r : rows) {
    if (r.series != "nitrogen_1") continue;
    if (!r.nc_ppm || !r.p1_grown_ppm) continue;
    points.emplace_back(*r.nc_ppm, *r.p1_grown_ppm);
  }
  return fit_growth_law(points);
}

ModelConfig default_model_config() {
  ModelConfig config;
  config.conversion_curves[2.0] = conversion_curve_from_table(2.0);
  config.conversion_curves[1.0] = conversion_curve_from_table(1.0);
  return config;
}

MaterialState asgrown_state(double p1_ppm, const ModelConfig& config) {
  const double nv_minus_ppb = asgrown_nv_minus(p1_ppm, config.asgrown_nv_ratio);
  // The as-grown R_re is far below the first curve knot for any physical P1,
  // so the clamped low-end fraction applies.
  const double frac0 = nv_minus_fraction(0.0, config.charge_curve) / 100.0;
  const double nv_total_ppb = frac0 > 0.0 ? nv_minus_ppb / frac0 : 0.0;
  return MaterialState(p1_ppm, nv_minus_ppb, nv_total_ppb - nv_minus_ppb, 0.0,
                       Stage::AsGrown);
}

Json Prediction::to_json() const {
  Json j = Json::object();
  j.set("as_grown", grown.to_json());
  j.set("treated", treated.to_json());
  Json p = Json::object();
  p.set("energy_mev", Json::number(plan.energy_mev));
  p.set("fluence_e_per_cm2", Json::number(plan.fluence_e_per_cm2));
  j.set("plan", std::move(p));
  j.set("ratios", ratios.to_json());
  j.set("rules", rules.to_json());
  j.set("nv_minus_frac", Json::number(nv_minus_frac_pct));
  j.set("t2_s", Json::number(t2_s));
  j.set("t2_us", Json::number(t2_s * 1e6));
  j.set("contrast_factor", Json::number(contrast));
  j.set("fom", Json::number(fom));
  return j;
}

Prediction predict_state(double p1_ppm, const IrradiationPlan& plan,
                         const ModelConfig& config) {
  auto it = config.conversion_curves.find(plan.energy_mev);
  if (it == config.conversion_curves.end()) {
    fail(ErrorCode::UncalibratedEnergy,
         "no conversion curve calibrated for " +
             Json::format_number(plan.energy_mev) + " MeV");
  }
  MaterialState grown = asgrown_state(p1_ppm, config);
  MaterialState treated = apply_treatment(grown, plan, it->second,
                                          config.charge_curve, config.yields);
  Prediction pred{grown, treated, plan, {}, {}, 0, 0, 0, 0};
  pred.ratios = conversion_ratios(grown, treated);
  pred.rules = check_rules(grown, treated, config.rules);
  pred.nv_minus_frac_pct =
      treated.nv_total_ppb() > 0.0
          ? treated.nv_minus_ppb() / treated.nv_total_ppb() * 100.0
          : 0.0;
  // T2 depends only on total nitrogen; never recomputed after treatment.
  const double n_total = nitrogen_from_p1(p1_ppm, config.coherence);
  pred.t2_s = t2_from_nitrogen(n_total, config.coherence);
  pred.contrast =
      contrast_factor(pred.nv_minus_frac_pct / 100.0, config.brightness);
  pred.fom = figure_of_merit(treated.nv_minus_ppb(), pred.t2_s, pred.contrast);
  return pred;
}

Prediction predict_from_nc(double nc_ppm, const IrradiationPlan& plan,
                           const ModelConfig& config) {
  const double p1 = p1_from_nc(GrowthRecipe{nc_ppm}, config.growth_law);
  return predict_state(p1, plan, config);
}

}  // namespace nvforge
