#include "nvforge/config.hpp"

#include <cerrno>
#include <cstdlib>
#include <numbers>
#include <set>
#include <sstream>

#include "nvforge/csv.hpp"
#include "nvforge/errors.hpp"

namespace nvforge {

namespace {

std::string trim(const std::string& s) {
  size_t b = s.find_first_not_of(" \t\r\n");
  if (b == std::string::npos) return "";
  size_t e = s.find_last_not_of(" \t\r\n");
  return s.substr(b, e - b + 1);
}

bool parse_double_token(const std::string& token, double* out) {
  if (token.empty()) return false;
  const char* begin = token.c_str();
  char* end = nullptr;
  errno = 0;
  const double v = std::strtod(begin, &end);
  if (end != begin + token.size() || errno == ERANGE) return false;
  *out = v;
  return true;
}

const std::set<std::string>& exact_keys() {
  static const std::set<std::string> keys = {
      // Model constants.
      "growth.law",
      "growth.a",
      "growth.b",
      "growth.nv_ratio",
      "charge.points",
      "coherence.b_khz_ppm",
      "coherence.t2_other_us",
      "coherence.p1_fraction",
      "rules.r_con_max_pct",
      "rules.r_re_max_pct",
      "sensitivity.brightness_minus",
      "sensitivity.brightness_zero",
      "absorption.sigma_532_cm2",
      "absorption.sigma_unc_cm2",
      "units.n_carbon_cm3",
      "bands.threshold_sigma",
      "optimizer.fluence_lo",
      "optimizer.fluence_hi",
      "optimizer.saturation_headroom",
      "optimizer.bind",
      "design.nc_min_ppm",
      "design.nc_max_ppm",
      "design.nc_points",
      // Command inputs (config equivalents of the CLI flags).
      "predict.p1_ppm",
      "predict.nc_ppm",
      "predict.energy_mev",
      "predict.fluence_e_per_cm2",
      "optimize.p1_ppm",
      "optimize.energy_mev",
      "optimize.mode",
      "optimize.threshold_pct",
      "design.mode",
      "design.threshold_pct",
      "design.min_t2_us",
      "design.min_nv_minus_ppb",
      "fitpl.spectrum",
      "fitpl.ref_minus",
      "fitpl.ref_zero",
      "echo.data",
      "absorption.spectrum",
      "absorption.thickness_cm",
      "absorption.absorbance",
      "absorption.band_report",
      "absorption.svg",
      "calibrate.table",
      "calibrate.csv",
      "calibrate.kind",
      "calibrate.energy_mev",
      "calibrate.p1_ppm",
      "dataset.table",
      "dataset.format",
      "io.out",
  };
  return keys;
}

// "2mev" -> 2.0; "0.5mev" -> 0.5. Returns false when the token is not a
// positive number followed by "mev".
bool parse_energy_token(const std::string& token, double* energy) {
  if (token.size() < 4) return false;
  if (token.substr(token.size() - 3) != "mev") return false;
  double v = 0.0;
  if (!parse_double_token(token.substr(0, token.size() - 3), &v)) return false;
  if (!(v > 0.0)) return false;
  *energy = v;
  return true;
}

// yield.<E>mev_ppm_cm2
bool parse_yield_key(const std::string& key, double* energy) {
  const std::string prefix = "yield.";
  const std::string suffix = "_ppm_cm2";
  if (key.size() <= prefix.size() + suffix.size()) return false;
  if (key.compare(0, prefix.size(), prefix) != 0) return false;
  if (key.compare(key.size() - suffix.size(), suffix.size(), suffix) != 0) {
    return false;
  }
  const std::string middle =
      key.substr(prefix.size(), key.size() - prefix.size() - suffix.size());
  return parse_energy_token(middle, energy);
}

// conversion.<E>mev.<field>
bool parse_conversion_key(const std::string& key, double* energy,
                          std::string* field) {
  const std::string prefix = "conversion.";
  if (key.compare(0, prefix.size(), prefix) != 0) return false;
  const size_t dot = key.find('.', prefix.size());
  if (dot == std::string::npos) return false;
  const std::string middle = key.substr(prefix.size(), dot - prefix.size());
  const std::string f = key.substr(dot + 1);
  if (f != "nv_max_frac" && f != "phi0_e_cm2" && f != "reference_p1_ppm") {
    return false;
  }
  if (!parse_energy_token(middle, energy)) return false;
  *field = f;
  return true;
}

double parse_value(const std::string& key, const std::string& value) {
  double v = 0.0;
  if (!parse_double_token(value, &v)) {
    fail(ErrorCode::BadConfig,
         "key '" + key + "': malformed number '" + value + "'");
  }
  return v;
}

std::vector<std::pair<double, double>> parse_charge_points(
    const std::string& value) {
  std::vector<std::pair<double, double>> points;
  std::istringstream in(value);
  std::string item;
  while (std::getline(in, item, ',')) {
    const std::string t = trim(item);
    const size_t colon = t.find(':');
    if (colon == std::string::npos) {
      fail(ErrorCode::BadConfig,
           "key 'charge.points': expected 'r:f' pairs separated by commas");
    }
    double r = 0.0;
    double f = 0.0;
    if (!parse_double_token(trim(t.substr(0, colon)), &r) ||
        !parse_double_token(trim(t.substr(colon + 1)), &f)) {
      fail(ErrorCode::BadConfig,
           "key 'charge.points': malformed number in '" + t + "'");
    }
    points.emplace_back(r, f);
  }
  return points;
}

}  // namespace

bool is_known_key(const std::string& key) {
  if (exact_keys().count(key) != 0) return true;
  double energy = 0.0;
  std::string field;
  return parse_yield_key(key, &energy) ||
         parse_conversion_key(key, &energy, &field);
}

void Settings::set(const std::string& key, const std::string& value) {
  if (!is_known_key(key)) {
    fail(ErrorCode::BadConfig, "unknown config key '" + key + "'");
  }
  values_[key] = value;
}

bool Settings::has(const std::string& key) const {
  return values_.count(key) != 0;
}

const std::string& Settings::get(const std::string& key) const {
  auto it = values_.find(key);
  if (it == values_.end()) {
    fail(ErrorCode::Internal, "settings key '" + key + "' not set");
  }
  return it->second;
}

std::optional<std::string> Settings::find(const std::string& key) const {
  auto it = values_.find(key);
  if (it == values_.end()) return std::nullopt;
  return it->second;
}

const std::string* Settings::lookup(const std::string& key) const {
  auto it = values_.find(key);
  return it == values_.end() ? nullptr : &it->second;
}

std::vector<std::pair<std::string, std::string>> parse_config_text(
    const std::string& text) {
  std::vector<std::pair<std::string, std::string>> pairs;
  std::istringstream in(text);
  std::string line;
  int line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    const std::string t = trim(line);
    if (t.empty() || t[0] == '#') continue;
    const size_t eq = t.find('=');
    if (eq == std::string::npos) {
      fail(ErrorCode::BadConfig,
           "line " + std::to_string(line_no) + ": expected 'key = value'");
    }
    const std::string key = trim(t.substr(0, eq));
    const std::string value = trim(t.substr(eq + 1));
    if (key.empty()) {
      fail(ErrorCode::BadConfig,
           "line " + std::to_string(line_no) + ": empty key");
    }
    if (value.empty()) {
      fail(ErrorCode::BadConfig,
           "line " + std::to_string(line_no) + ": empty value for '" + key +
               "'");
    }
    if (!is_known_key(key)) {
      fail(ErrorCode::BadConfig,
           "line " + std::to_string(line_no) + ": unknown key '" + key + "'");
    }
    pairs.emplace_back(key, value);
  }
  return pairs;
}

void load_config_file(const std::string& path, Settings& settings) {
  const std::string text = read_text_file(path);
  for (const auto& [key, value] : parse_config_text(text)) {
    settings.set(key, value);
  }
}

double settings_double(const Settings& s, const std::string& key,
                       double fallback) {
  const auto v = s.find(key);
  if (!v) return fallback;
  return parse_value(key, *v);
}

std::optional<double> settings_opt_double(const Settings& s,
                                          const std::string& key) {
  const auto v = s.find(key);
  if (!v) return std::nullopt;
  return parse_value(key, *v);
}

int settings_int(const Settings& s, const std::string& key, int fallback) {
  const auto v = s.find(key);
  if (!v) return fallback;
  const double d = parse_value(key, *v);
  const int i = static_cast<int>(d);
  if (static_cast<double>(i) != d) {
    fail(ErrorCode::BadConfig, "key '" + key + "': expected an integer");
  }
  return i;
}

bool settings_bool(const Settings& s, const std::string& key, bool fallback) {
  const auto v = s.find(key);
  if (!v) return fallback;
  if (*v == "true" || *v == "1") return true;
  if (*v == "false" || *v == "0") return false;
  fail(ErrorCode::BadConfig,
       "key '" + key + "': expected true/false, got '" + *v + "'");
}

ModelConfig build_model_config(const Settings& s) {
  ModelConfig config = default_model_config();

  if (const auto law = s.find("growth.law")) {
    if (*law == "table") {
      config.growth_law = growth_law_from_table();
    } else if (*law == "literal") {
      config.growth_law = GrowthLaw{};
    } else {
      fail(ErrorCode::BadConfig,
           "key 'growth.law': expected 'literal' or 'table'");
    }
  }
  config.growth_law.coefficient_a =
      settings_double(s, "growth.a", config.growth_law.coefficient_a);
  config.growth_law.exponent_b =
      settings_double(s, "growth.b", config.growth_law.exponent_b);
  validate_growth_law(config.growth_law);

  config.asgrown_nv_ratio =
      settings_double(s, "growth.nv_ratio", config.asgrown_nv_ratio);
  require(config.asgrown_nv_ratio > 0.0 && config.asgrown_nv_ratio < 1.0,
          "growth.nv_ratio must lie in (0, 1)");

  for (const auto& [key, value] : s.values()) {
    double energy = 0.0;
    std::string field;
    if (parse_yield_key(key, &energy)) {
      const double rate = parse_value(key, value);
      require(rate > 0.0, "vacancy yield must be positive");
      config.yields.entries[energy] = rate;
    } else if (parse_conversion_key(key, &energy, &field)) {
      auto [it, inserted] = config.conversion_curves.try_emplace(energy);
      if (inserted) it->second.energy_mev = energy;
      if (field == "nv_max_frac") {
        it->second.nv_max_frac = parse_value(key, value);
      } else if (field == "phi0_e_cm2") {
        it->second.phi0 = parse_value(key, value);
      } else {
        it->second.reference_p1_ppm = parse_value(key, value);
      }
    }
  }
  for (const auto& [energy, curve] : config.conversion_curves) {
    (void)energy;
    validate_conversion_curve(curve);
  }

  if (const auto points = s.find("charge.points")) {
    config.charge_curve = ChargeStateCurve(parse_charge_points(*points));
  }

  if (const auto b = settings_opt_double(s, "coherence.b_khz_ppm")) {
    require(*b > 0.0, "coherence.b_khz_ppm must be positive");
    config.coherence.b_rate = 2.0 * std::numbers::pi * 1000.0 * *b;
  }
  if (const auto t2o = settings_opt_double(s, "coherence.t2_other_us")) {
    config.coherence.t2_other_s = *t2o * 1e-6;
  }
  config.coherence.p1_fraction =
      settings_double(s, "coherence.p1_fraction", config.coherence.p1_fraction);
  validate_coherence_params(config.coherence);

  config.rules.r_con_max =
      settings_double(s, "rules.r_con_max_pct", config.rules.r_con_max * 100.0) /
      100.0;
  config.rules.r_re_max =
      settings_double(s, "rules.r_re_max_pct", config.rules.r_re_max * 100.0) /
      100.0;
  require(config.rules.r_con_max > 0.0 && config.rules.r_con_max < 1.0,
          "rules.r_con_max_pct must lie in (0, 100)");
  require(config.rules.r_re_max > 0.0 && config.rules.r_re_max < 1.0,
          "rules.r_re_max_pct must lie in (0, 100)");

  config.brightness.b_minus = settings_double(s, "sensitivity.brightness_minus",
                                              config.brightness.b_minus);
  config.brightness.b_zero = settings_double(s, "sensitivity.brightness_zero",
                                             config.brightness.b_zero);
  require(config.brightness.b_minus > 0.0 && config.brightness.b_zero >= 0.0,
          "brightness weights must be positive (zero-state may be 0)");

  config.sigma_532_cm2 =
      settings_double(s, "absorption.sigma_532_cm2", config.sigma_532_cm2);
  config.sigma_532_unc_cm2 =
      settings_double(s, "absorption.sigma_unc_cm2", config.sigma_532_unc_cm2);
  require(config.sigma_532_cm2 > 0.0, "absorption cross-section must be positive");
  require(config.sigma_532_unc_cm2 >= 0.0,
          "absorption cross-section uncertainty must be non-negative");

  config.units.n_carbon_cm3 =
      settings_double(s, "units.n_carbon_cm3", config.units.n_carbon_cm3);
  require(config.units.n_carbon_cm3 > 0.0, "carbon density must be positive");

  config.band_threshold_sigma =
      settings_double(s, "bands.threshold_sigma", config.band_threshold_sigma);
  require(config.band_threshold_sigma > 0.0,
          "bands.threshold_sigma must be positive");

  config.fluence_lo =
      settings_double(s, "optimizer.fluence_lo", config.fluence_lo);
  config.fluence_hi =
      settings_double(s, "optimizer.fluence_hi", config.fluence_hi);
  require(config.fluence_lo > 0.0 && config.fluence_hi > config.fluence_lo,
          "fluence window must be positive and ordered");
  config.saturation_headroom = settings_double(s, "optimizer.saturation_headroom",
                                               config.saturation_headroom);
  require(config.saturation_headroom > 0.0 && config.saturation_headroom < 1.0,
          "optimizer.saturation_headroom must lie in (0, 1)");
  if (const auto bind = s.find("optimizer.bind")) {
    if (*bind == "r_re") {
      config.stability_binds_on_r_re = true;
    } else if (*bind == "r_con") {
      config.stability_binds_on_r_re = false;
    } else {
      fail(ErrorCode::BadConfig,
           "key 'optimizer.bind': expected 'r_con' or 'r_re'");
    }
  }

  config.design_nc_min =
      settings_double(s, "design.nc_min_ppm", config.design_nc_min);
  config.design_nc_max =
      settings_double(s, "design.nc_max_ppm", config.design_nc_max);
  config.design_nc_points =
      settings_int(s, "design.nc_points", config.design_nc_points);
  require(config.design_nc_min > 0.0 &&
              config.design_nc_max > config.design_nc_min,
          "design grid bounds must be positive and ordered");
  require(config.design_nc_points >= 2,
          "design.nc_points must be at least 2");

  return config;
}

std::string format_charge_points(const ChargeStateCurve& curve) {
  std::string out;
  for (const auto& [r, f] : curve.points()) {
    if (!out.empty()) out += ",";
    out += Json::format_number(r) + ":" + Json::format_number(f);
  }
  return out;
}

}  // namespace nvforge
