#include "nvforge/dataset.hpp"

#include <sstream>

#include "nvforge/errors.hpp"

namespace nvforge {

namespace {

DatasetRecord irradiation_row(const char* series, const char* id, double energy,
                            double fluence, double frac, double frac_unc,
                            double r_re, double r_con_minus) {
  DatasetRecord r;
  r.series = series;
  r.sample_id = id;
  r.p1_grown_ppm = 2.2;
  r.energy_mev = energy;
  r.fluence_e_per_cm2 = fluence;
  r.nv_minus_frac_treated_pct = frac;
  r.nv_minus_frac_unc_pct = frac_unc;
  r.r_re_pct = r_re;
  r.r_con_minus_pct = r_con_minus;
  return r;
}

DatasetRecord nitrogen1_row(const char* id, double nc, std::optional<double> p1,
                          double nv_asgrown, double nv_treated, double frac,
                          double frac_unc, double t2a, double t2a_unc,
                          double t2t, double t2t_unc) {
  DatasetRecord r;
  r.series = "nitrogen_1";
  r.sample_id = id;
  r.nc_ppm = nc;
  r.p1_grown_ppm = p1;
  r.nv_minus_asgrown_ppb = nv_asgrown;
  r.nv_minus_treated_ppb = nv_treated;
  r.nv_minus_frac_treated_pct = frac;
  r.nv_minus_frac_unc_pct = frac_unc;
  r.t2_asgrown_us = t2a;
  r.t2_asgrown_unc_us = t2a_unc;
  r.t2_treated_us = t2t;
  r.t2_treated_unc_us = t2t_unc;
  return r;
}

DatasetRecord nitrogen2_row(const char* id, double nc, double p1,
                          double nv_asgrown) {
  DatasetRecord r;
  r.series = "nitrogen_2";
  r.sample_id = id;
  r.nc_ppm = nc;
  r.p1_grown_ppm = p1;
  r.nv_minus_asgrown_ppb = nv_asgrown;
  return r;
}

std::vector<DatasetRecord> table1() {
  return {
      irradiation_row("irradiation_2mev", "I2-01", 2.0, 1e16, 86.2, 0.5, 1.3, 0.9),
      irradiation_row("irradiation_2mev", "I2-02", 2.0, 2e16, 86.3, 0.2, 1.9, 1.4),
      irradiation_row("irradiation_2mev", "I2-04", 2.0, 1e17, 82.4, 0.3, 8.3, 5.1),
      irradiation_row("irradiation_2mev", "I2-05", 2.0, 2e17, 65.5, 1.2, 17.6, 7.3),
      irradiation_row("irradiation_2mev", "I2-08", 2.0, 1e18, 52.5, 2.1, 33.3, 8.9),
      irradiation_row("irradiation_1mev", "I1-39", 1.0, 1e17, 87.1, 1.6, 1.7, 1.4),
      irradiation_row("irradiation_1mev", "I1-50", 1.0, 3e17, 86.4, 1.3, 2.7, 2.2),
      irradiation_row("irradiation_1mev", "I1-28", 1.0, 1e18, 85.5, 1.9, 9.5, 7.2),
      irradiation_row("irradiation_1mev", "I1-29", 1.0, 3e18, 67.9, 1.9, 15.3, 8.4),
  };
}

std::vector<DatasetRecord> table2() {
  return {
      nitrogen1_row("NDT-26", 150, 0.2, 0.03, 1, 12.8, 1.7, 497.7, 26.2, 549, 332),
      nitrogen1_row("NDT-14", 500, std::nullopt, 0.2, 10, 38.4, 3.3, 288.9, 31.3, 329.3, 101.8),
      nitrogen1_row("NDT-07", 1500, 0.5, 1.5, 36, 31.6, 1.6, 166.1, 8.7, 136.9, 3.9),
      nitrogen1_row("NDT-34", 2500, 0.8, 1.8, 35, 33.7, 3.0, 101.3, 3.3, 98.5, 7.1),
      nitrogen1_row("NDT-01", 4500, 1.4, 2.4, 67, 40.5, 3.3, 72.8, 1.5, 79.1, 3.2),
      nitrogen1_row("NDT-02", 7429, 1.9, 3.3, 95, 50.9, 2.3, 48.2, 1.0, 74.2, 3.4),
      nitrogen1_row("NDT-12", 8500, 2.6, 6.4, 168, 67.2, 1.2, 53.3, 1.4, 45.5, 1.2),
      nitrogen2_row("Cas-40", 9722, 3.2, 15.3),
      nitrogen2_row("Cas-48", 42777, 5.2, 21.3),
      nitrogen2_row("Cas-68", 77142, 7.8, 16.0),
      nitrogen2_row("Cas-44", 87499, 9.5, 25.9),
      nitrogen2_row("Cas-51", 173571, 11.2, 33.9),
      nitrogen2_row("Cas-49", 347143, 13.0, 27.1),
      nitrogen2_row("Cas-50", 694286, 19.3, 28.5),
  };
}

const char* kCsvColumns[] = {
    "series", "sample_id", "nc_ppm", "p1_grown_ppm", "nv_minus_asgrown_ppb",
    "nv_minus_treated_ppb", "nv_minus_frac_treated_pct", "nv_minus_frac_unc_pct",
    "t2_asgrown_us", "t2_asgrown_unc_us", "t2_treated_us", "t2_treated_unc_us",
    "fluence_e_per_cm2", "energy_mev", "r_re_pct", "r_con_minus_pct"};

std::string cell(const std::optional<double>& v) {
  return v ? Json::format_number(*v) : std::string();
}

}  // namespace

std::vector<DatasetRecord> load_table(const std::string& name) {
  if (name == "table1") return table1();
  if (name == "table2") return table2();
  fail(ErrorCode::UnknownTable, "unknown table: " + name);
}

Json DatasetRecord::to_json() const {
  Json j = Json::object();
  j.set("series", Json::string(series));
  j.set("sample_id", Json::string(sample_id));
  auto opt = [&](const char* key, const std::optional<double>& v) {
    if (v) j.set(key, Json::number(*v));
  };
  opt("nc_ppm", nc_ppm);
  opt("p1_grown_ppm", p1_grown_ppm);
  opt("nv_minus_asgrown_ppb", nv_minus_asgrown_ppb);
  opt("nv_minus_treated_ppb", nv_minus_treated_ppb);
  opt("nv_minus_frac_treated_pct", nv_minus_frac_treated_pct);
  opt("nv_minus_frac_unc_pct", nv_minus_frac_unc_pct);
  opt("t2_asgrown_us", t2_asgrown_us);
  opt("t2_asgrown_unc_us", t2_asgrown_unc_us);
  opt("t2_treated_us", t2_treated_us);
  opt("t2_treated_unc_us", t2_treated_unc_us);
  opt("fluence_e_per_cm2", fluence_e_per_cm2);
  opt("energy_mev", energy_mev);
  opt("r_re_pct", r_re_pct);
  opt("r_con_minus_pct", r_con_minus_pct);
  return j;
}

std::string dump_table_csv(const std::string& name) {
  auto rows = load_table(name);
  std::ostringstream out;
  for (size_t i = 0; i < std::size(kCsvColumns); ++i) {
    if (i) out << ",";
    out << kCsvColumns[i];
  }
  out << "\n";
  for (const auto& r : rows) {
    out << r.series << "," << r.sample_id << "," << cell(r.nc_ppm) << ","
        << cell(r.p1_grown_ppm) << "," << cell(r.nv_minus_asgrown_ppb) << ","
        << cell(r.nv_minus_treated_ppb) << ","
        << cell(r.nv_minus_frac_treated_pct) << ","
        << cell(r.nv_minus_frac_unc_pct) << "," << cell(r.t2_asgrown_us) << ","
        << cell(r.t2_asgrown_unc_us) << "," << cell(r.t2_treated_us) << ","
        << cell(r.t2_treated_unc_us) << "," << cell(r.fluence_e_per_cm2) << ","
        << cell(r.energy_mev) << "," << cell(r.r_re_pct) << ","
        << cell(r.r_con_minus_pct) << "\n";
  }
  return out.str();
}

uint64_t table_checksum(const std::string& name) {
  const std::string text = dump_table_csv(name);
  uint64_t h = 1469598103934665603ull;
  for (unsigned char c : text) {
    h ^= c;
    h *= 1099511628211ull;
  }
  return h;
}

}  // namespace nvforge
