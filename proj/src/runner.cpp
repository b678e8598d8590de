#include "nvforge/runner.hpp"

#include <cmath>
#include <limits>
#include <set>

#include "nvforge/csv.hpp"
#include "nvforge/dataset.hpp"
#include "nvforge/errors.hpp"
#include "nvforge/optimizer.hpp"
#include "nvforge/regress.hpp"
#include "nvforge/sensitivity.hpp"
#include "nvforge/spectra.hpp"

namespace nvforge {

namespace {

void require_input(bool present, const std::string& what) {
  if (!present) fail(ErrorCode::InvalidArgument, "missing input: " + what);
}

double required_double(const Settings& s, const std::string& key) {
  const auto v = settings_opt_double(s, key);
  require_input(v.has_value(), key);
  return *v;
}

std::string required_string(const Settings& s, const std::string& key) {
  const auto v = s.find(key);
  require_input(v.has_value(), key);
  return *v;
}

Json warnings_json(const std::vector<std::pair<std::string, std::string>>&
                       tagged_warnings) {
  Json arr = Json::array();
  for (const auto& [tag, w] : tagged_warnings) {
    arr.push(Json::string(tag + ": " + w));
  }
  return arr;
}

OptimizationMode mode_from_settings(const Settings& s,
                                    const std::string& mode_key,
                                    const std::string& threshold_key) {
  OptimizationMode mode;
  if (const auto name = s.find(mode_key)) {
    mode.goal = optimization_goal_from_name(*name);
  }
  mode.threshold_pct = settings_opt_double(s, threshold_key);
  return mode;
}

std::string cmd_predict(const Settings& s) {
  const ModelConfig config = build_model_config(s);
  const auto p1 = settings_opt_double(s, "predict.p1_ppm");
  const auto nc = settings_opt_double(s, "predict.nc_ppm");
  require_input(p1.has_value() || nc.has_value(),
                "predict.p1_ppm or predict.nc_ppm");
  require(!(p1 && nc),
          "predict takes exactly one of predict.p1_ppm / predict.nc_ppm");
  const double energy = required_double(s, "predict.energy_mev");
  const double fluence = required_double(s, "predict.fluence_e_per_cm2");
  const IrradiationPlan plan(energy, fluence);
  const Prediction pred =
      p1 ? predict_state(*p1, plan, config) : predict_from_nc(*nc, plan, config);
  Json j = pred.to_json();
  if (nc) j.set("nc_ratio_ppm", Json::number(*nc));
  j.set("p1_fluence_scaling", Json::string("linear"));
  return j.dump() + "\n";
}

std::string cmd_optimize(const Settings& s) {
  const ModelConfig config = build_model_config(s);
  const double p1 = required_double(s, "optimize.p1_ppm");
  const double energy = required_double(s, "optimize.energy_mev");
  const OptimizationMode mode =
      mode_from_settings(s, "optimize.mode", "optimize.threshold_pct");
  const Recipe recipe = recipe_for_p1(p1, energy, mode, config);
  Json j = recipe.to_json();
  j.set("mode", Json::string(optimization_goal_name(mode.goal)));
  j.set("p1_fluence_scaling", Json::string("linear"));
  return j.dump() + "\n";
}

std::string cmd_design(const Settings& s) {
  const ModelConfig config = build_model_config(s);
  DesignTarget target;
  target.mode = mode_from_settings(s, "design.mode", "design.threshold_pct");
  if (const auto t2_us = settings_opt_double(s, "design.min_t2_us")) {
    target.min_t2_s = *t2_us * 1e-6;
  }
  target.min_nv_minus_ppb = settings_opt_double(s, "design.min_nv_minus_ppb");
  const Recipe recipe = design_process(target, config);
  Json j = recipe.to_json();
  j.set("mode", Json::string(optimization_goal_name(target.mode.goal)));
  j.set("p1_fluence_scaling", Json::string("linear"));
  return j.dump() + "\n";
}

std::string cmd_fit_pl(const Settings& s) {
  const std::string spectrum_path = required_string(s, "fitpl.spectrum");
  const std::string ref_minus_path = required_string(s, "fitpl.ref_minus");
  const std::string ref_zero_path = required_string(s, "fitpl.ref_zero");
  const ParsedSpectrum spectrum =
      parse_spectrum(read_text_file(spectrum_path),
                     SpectrumKind::PhotoluminescenceCounts);
  const ParsedSpectrum ref_minus =
      parse_spectrum(read_text_file(ref_minus_path),
                     SpectrumKind::PhotoluminescenceCounts);
  const ParsedSpectrum ref_zero =
      parse_spectrum(read_text_file(ref_zero_path),
                     SpectrumKind::PhotoluminescenceCounts);
  const ChargeStateFit fit =
      decompose_pl(spectrum.spectrum, ref_minus.spectrum, ref_zero.spectrum);
  std::vector<std::pair<std::string, std::string>> tagged;
  for (const auto& w : spectrum.warnings) tagged.emplace_back("spectrum", w);
  for (const auto& w : ref_minus.warnings) tagged.emplace_back("ref_minus", w);
  for (const auto& w : ref_zero.warnings) tagged.emplace_back("ref_zero", w);
  Json j = fit.to_json();
  j.set("warnings", warnings_json(tagged));
  return j.dump() + "\n";
}

std::string cmd_fit_echo(const Settings& s) {
  const std::string path = required_string(s, "echo.data");
  const auto rows = load_pair_csv(path, "time_us", "signal");
  std::vector<double> times_s;
  std::vector<double> signal;
  times_s.reserve(rows.size());
  signal.reserve(rows.size());
  for (const auto& [t_us, v] : rows) {
    times_s.push_back(t_us * 1e-6);
    signal.push_back(v);
  }
  const EchoFit fit = fit_hahn_echo(times_s, signal);
  return fit.to_json().dump() + "\n";
}

std::string cmd_absorption(const Settings& s) {
  const ModelConfig config = build_model_config(s);
  const std::string path = required_string(s, "absorption.spectrum");
  const bool as_absorbance = settings_bool(s, "absorption.absorbance", false);
  const SpectrumKind kind = as_absorbance ? SpectrumKind::Absorbance
                                          : SpectrumKind::AbsorptionCoefficient;
  const ParsedSpectrum parsed = parse_spectrum(read_text_file(path), kind);
  Spectrum mu = parsed.spectrum;
  if (as_absorbance) {
    const double thickness = required_double(s, "absorption.thickness_cm");
    mu = spectrum_absorbance_to_mu(mu, thickness);
  }
  const double nan = std::numeric_limits<double>::quiet_NaN();
  const double mu_532 = spectrum_value_at(mu, 532.0, nan);
  if (std::isnan(mu_532)) {
    fail(ErrorCode::OutOfRange, "spectrum does not cover 532 nm");
  }
  const NvAbsorptionResult result = nv_from_absorption(
      mu_532, config.sigma_532_cm2, config.sigma_532_unc_cm2, config.units);

  Json j = Json::object();
  j.set("nv", result.to_json());
  const bool band_report = settings_bool(s, "absorption.band_report", false);
  BandReport report;
  if (band_report) {
    report = detect_bands(mu, config.band_threshold_sigma);
    j.set("bands", report.to_json());
  }
  std::vector<std::pair<std::string, std::string>> tagged;
  for (const auto& w : parsed.warnings) tagged.emplace_back("spectrum", w);
  j.set("warnings", warnings_json(tagged));
  if (const auto svg_path = s.find("absorption.svg")) {
    write_text_file(*svg_path,
                    spectrum_svg(mu, band_report ? &report : nullptr));
    j.set("svg_path", Json::string(*svg_path));
  }
  return j.dump() + "\n";
}

std::string energy_token(double energy_mev) {
  return Json::format_number(energy_mev) + "mev";
}

void emit_conversion(std::string& out, const ConversionCurve& curve) {
  const std::string prefix = "conversion." + energy_token(curve.energy_mev);
  out += prefix + ".nv_max_frac = " + Json::format_number(curve.nv_max_frac) +
         "\n";
  out += prefix + ".phi0_e_cm2 = " + Json::format_number(curve.phi0) + "\n";
  out += prefix + ".reference_p1_ppm = " +
         Json::format_number(curve.reference_p1_ppm) + "\n";
}

void emit_growth(std::string& out, const GrowthLaw& law) {
  out += "growth.a = " + Json::format_number(law.coefficient_a) + "\n";
  out += "growth.b = " + Json::format_number(law.exponent_b) + "\n";
}

void emit_charge(std::string& out, const ChargeStateCurve& curve,
                 size_t dropped) {
  if (dropped > 0) {
    out += "# calibration dropped " + std::to_string(dropped) +
           " non-monotone point(s)\n";
  }
  out += "charge.points = " + format_charge_points(curve) + "\n";
}

std::string cmd_calibrate(const Settings& s) {
  const auto table = s.find("calibrate.table");
  const auto csv = s.find("calibrate.csv");
  require_input(table.has_value() || csv.has_value(),
                "calibrate.table or calibrate.csv");
  require(!(table && csv),
          "calibrate takes exactly one of calibrate.table / calibrate.csv");

  std::string out = "# calibration constants\n";
  if (table) {
    if (*table == "table2") {
      emit_growth(out, growth_law_from_table());
    } else if (*table == "table1") {
      const auto rows = load_table("table1");
      const auto energy = settings_opt_double(s, "calibrate.energy_mev");
      if (energy) {
        emit_conversion(out, conversion_curve_from_table(*energy));
        const auto cal = charge_curve_from_series(rows, *energy);
        emit_charge(out, cal.curve, cal.dropped.size());
      } else {
        emit_conversion(out, conversion_curve_from_table(1.0));
        emit_conversion(out, conversion_curve_from_table(2.0));
        emit_charge(out, ChargeStateCurve::builtin_default(), 0);
      }
    } else {
      fail(ErrorCode::UnknownTable, "unknown table '" + *table + "'");
    }
    return out;
  }

  const std::string kind = required_string(s, "calibrate.kind");
  if (kind == "growth") {
    emit_growth(out, fit_growth_law(load_pair_csv(*csv, "nc_ppm", "p1_ppm")));
  } else if (kind == "conversion") {
    const double energy = required_double(s, "calibrate.energy_mev");
    const double p1 = settings_double(s, "calibrate.p1_ppm", 2.2);
    const auto series =
        load_pair_csv(*csv, "fluence_e_per_cm2", "nv_total_ppm");
    emit_conversion(out, fit_conversion_curve(series, p1, energy));
  } else if (kind == "charge") {
    const auto points =
        load_pair_csv(*csv, "r_re_percent", "nv_minus_frac_percent");
    const auto cal = calibrate_charge_curve(points);
    emit_charge(out, cal.curve, cal.dropped.size());
  } else {
    fail(ErrorCode::InvalidArgument,
         "calibrate.kind must be growth, conversion, or charge");
  }
  return out;
}

std::string cmd_regress() {
  const auto checks = run_table_regressions();
  std::string failures;
  for (const auto& c : checks) {
    if (c.pass) continue;
    if (!failures.empty()) failures += "; ";
    failures += c.name + " (" + c.detail + ")";
  }
  if (!failures.empty()) {
    fail(ErrorCode::RegressionFailure, "failed checks: " + failures);
  }
  return regress_report(checks).dump() + "\n";
}

std::string cmd_report() {
  Json rows = Json::array();
  for (const auto& r : load_table("table2")) {
    if (!r.nv_minus_asgrown_ppb || !r.nv_minus_treated_ppb ||
        !r.t2_asgrown_us || !r.t2_treated_us) {
      continue;
    }
    const auto [product, factor] = improvement_ratio(
        {*r.nv_minus_asgrown_ppb, *r.t2_asgrown_us * 1e-6},
        {*r.nv_minus_treated_ppb, *r.t2_treated_us * 1e-6});
    Json row = Json::object();
    row.set("sample_id", Json::string(r.sample_id));
    if (r.nc_ppm) row.set("nc_ppm", Json::number(*r.nc_ppm));
    if (r.p1_grown_ppm) row.set("p1_ppm", Json::number(*r.p1_grown_ppm));
    row.set("nv_minus_asgrown_ppb", Json::number(*r.nv_minus_asgrown_ppb));
    row.set("nv_minus_treated_ppb", Json::number(*r.nv_minus_treated_ppb));
    row.set("t2_asgrown_us", Json::number(*r.t2_asgrown_us));
    row.set("t2_treated_us", Json::number(*r.t2_treated_us));
    row.set("product_ratio", Json::number(product));
    row.set("sqrt_factor", Json::number(factor));
    rows.push(std::move(row));
  }
  Json j = Json::object();
  j.set("table", Json::string("table2"));
  j.set("rows", std::move(rows));
  return j.dump() + "\n";
}

std::string cmd_dataset_dump(const Settings& s) {
  const std::string table = required_string(s, "dataset.table");
  const std::string format = s.find("dataset.format").value_or("csv");
  if (format == "csv") return dump_table_csv(table);
  if (format == "json") {
    Json rows = Json::array();
    for (const auto& r : load_table(table)) rows.push(r.to_json());
    Json j = Json::object();
    j.set("table", Json::string(table));
    j.set("rows", std::move(rows));
    return j.dump() + "\n";
  }
  fail(ErrorCode::BadConfig, "dataset.format must be csv or json");
}

}  // namespace

bool is_known_command(const std::string& command) {
  static const std::set<std::string> commands = {
      "predict",  "optimize", "design",       "fit-pl", "fit-echo",
      "absorption", "calibrate", "regress", "dataset-dump", "report",
  };
  return commands.count(command) != 0;
}

std::string run_command(const std::string& command, const Settings& settings) {
  std::string text;
  if (command == "predict") {
    text = cmd_predict(settings);
  } else if (command == "optimize") {
    text = cmd_optimize(settings);
  } else if (command == "design") {
    text = cmd_design(settings);
  } else if (command == "fit-pl") {
    text = cmd_fit_pl(settings);
  } else if (command == "fit-echo") {
    text = cmd_fit_echo(settings);
  } else if (command == "absorption") {
    text = cmd_absorption(settings);
  } else if (command == "calibrate") {
    text = cmd_calibrate(settings);
  } else if (command == "regress") {
    text = cmd_regress();
  } else if (command == "report") {
    text = cmd_report();
  } else if (command == "dataset-dump") {
    text = cmd_dataset_dump(settings);
  } else {
    fail(ErrorCode::InvalidArgument, "unknown command '" + command + "'");
  }
  if (const auto out_path = settings.find("io.out")) {
    write_text_file(*out_path, text);
  }
  return text;
}

}  // namespace nvforge
