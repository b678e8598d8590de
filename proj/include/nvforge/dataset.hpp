#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "nvforge/jsonout.hpp"

namespace nvforge {

// One row of the embedded characterization dataset. Values are stored exactly
// as published; optional fields are absent where the source leaves a blank
// (the second nitrogen series has no treated columns) and are never imputed.
struct DatasetRecord {
  std::string series;
  std::string sample_id;
  std::optional<double> nc_ppm;
  std::optional<double> p1_grown_ppm;
  std::optional<double> nv_minus_asgrown_ppb;
  std::optional<double> nv_minus_treated_ppb;
  std::optional<double> nv_minus_frac_treated_pct;
  std::optional<double> nv_minus_frac_unc_pct;
  std::optional<double> t2_asgrown_us;
  std::optional<double> t2_asgrown_unc_us;
  std::optional<double> t2_treated_us;
  std::optional<double> t2_treated_unc_us;
  std::optional<double> fluence_e_per_cm2;
  std::optional<double> energy_mev;
  std::optional<double> r_re_pct;
  std::optional<double> r_con_minus_pct;

  Json to_json() const;
};

// Returns the embedded table by name ("table1": nine irradiation-series rows;
// "table2": fourteen nitrogen-series rows). Throws UnknownTable otherwise.
std::vector<DatasetRecord> load_table(const std::string& name);

// FNV-1a 64-bit checksum over the canonical serialization of a table.
// Guards the embedded values against accidental edits.
uint64_t table_checksum(const std::string& name);

// CSV dump with a fixed column set; absent fields render as empty cells.
std::string dump_table_csv(const std::string& name);

}  // namespace nvforge
