// nvforge command-line tool. Thin shell over the C API: every flag maps to a
// dotted settings key, `--config` files load the same keys, and the merged
// settings drive one library command. Exit codes: 0 success, 1 usage,
// 2 input/validation failure, 3 model failure.

#include <cstdio>
#include <cstring>
#include <map>
#include <memory>
#include <string>
#include <utility>
#include <vector>

#include <CLI11.hpp>

#include "nvforge.h"

namespace {

struct BoundOption {
  CLI::Option* option = nullptr;
  std::string key;
  std::string* value = nullptr;  // owned by `storage` below
};

struct BoundFlag {
  CLI::Option* option = nullptr;
  std::string key;
};

struct RequiredGroup {
  std::string label;              // e.g. "--p1 or --nc"
  std::vector<std::string> keys;  // satisfied when any key is set
};

struct CommandInfo {
  std::string runner_name;
  std::vector<BoundOption> options;
  std::vector<BoundFlag> flags;
  std::vector<RequiredGroup> required;
  std::vector<std::string> config_paths;
  std::string out_path;
};

int fail_status(nvf_session* session, nvf_status rc) {
  std::fprintf(stderr, "%s: %s\n", nvf_status_name(rc),
               nvf_session_last_error(session));
  return nvf_status_is_validation(rc) != 0 ? 2 : 3;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"NV-center process design and spectral analysis toolkit"};
  app.name("nvforge");
  app.require_subcommand(1);
  app.set_version_flag("--version", std::string(nvf_version()));

  std::vector<std::unique_ptr<std::string>> storage;
  std::map<const CLI::App*, CommandInfo> commands;

  const auto add_cmd = [&](CLI::App* parent, const std::string& name,
                           const std::string& description,
                           const std::string& runner_name) -> CLI::App* {
    CLI::App* cmd = parent->add_subcommand(name, description);
    CommandInfo& info = commands[cmd];
    info.runner_name = runner_name;
    cmd->add_option("--config", info.config_paths,
                    "config file(s) with `key = value` lines, applied before "
                    "flags");
    cmd->add_option("--out", info.out_path,
                    "write the output to this file instead of stdout");
    return cmd;
  };
  const auto add_opt = [&](CLI::App* cmd, const std::string& flag,
                           const std::string& key, const std::string& help) {
    storage.push_back(std::make_unique<std::string>());
    std::string* slot = storage.back().get();
    commands[cmd].options.push_back(
        {cmd->add_option(flag, *slot, help), key, slot});
  };
  const auto add_flag = [&](CLI::App* cmd, const std::string& flag,
                            const std::string& key, const std::string& help) {
    commands[cmd].flags.push_back({cmd->add_flag(flag, help), key});
  };

  CLI::App* predict = add_cmd(
      &app, "predict",
      "Predict the as-grown and treated defect inventory, NV-/NV fraction, "
      "T2, and figure of merit for one plate and irradiation plan",
      "predict");
  add_opt(predict, "--p1", "predict.p1_ppm", "as-grown P1 concentration, ppm");
  add_opt(predict, "--nc", "predict.nc_ppm",
          "plasma N/C ratio, ppm (resolved through the growth law)");
  add_opt(predict, "--energy", "predict.energy_mev", "electron energy, MeV");
  add_opt(predict, "--fluence", "predict.fluence_e_per_cm2",
          "irradiation fluence, e/cm2");
  commands[predict].required = {
      {"--p1 or --nc", {"predict.p1_ppm", "predict.nc_ppm"}},
      {"--energy", {"predict.energy_mev"}},
      {"--fluence", {"predict.fluence_e_per_cm2"}},
  };

  CLI::App* optimize = add_cmd(
      &app, "optimize",
      "Largest fluence satisfying the chosen design rule at a given P1 and "
      "energy, with the predicted outcome",
      "optimize");
  add_opt(optimize, "--p1", "optimize.p1_ppm",
          "as-grown P1 concentration, ppm");
  add_opt(optimize, "--energy", "optimize.energy_mev",
          "electron energy, MeV");
  add_opt(optimize, "--mode", "optimize.mode",
          "charge-stability (NV/P1 < 10%) or max-nv (NV/P1_remain < 35%)");
  add_opt(optimize, "--threshold-pct", "optimize.threshold_pct",
          "override the mode's percent bound");
  commands[optimize].required = {
      {"--p1", {"optimize.p1_ppm"}},
      {"--energy", {"optimize.energy_mev"}},
  };

  CLI::App* design = add_cmd(
      &app, "design",
      "Search the N/C grid and calibrated energies for the feasible recipe "
      "with the highest figure of merit",
      "design");
  add_opt(design, "--mode", "design.mode",
          "charge-stability or max-nv (default charge-stability)");
  add_opt(design, "--min-t2-us", "design.min_t2_us",
          "require predicted T2 of at least this many microseconds");
  add_opt(design, "--min-nv-ppb", "design.min_nv_minus_ppb",
          "require predicted NV- of at least this many ppb");
  add_opt(design, "--threshold-pct", "design.threshold_pct",
          "override the mode's percent bound");
  add_opt(design, "--nc-min", "design.nc_min_ppm", "N/C grid lower bound");
  add_opt(design, "--nc-max", "design.nc_max_ppm", "N/C grid upper bound");
  add_opt(design, "--nc-points", "design.nc_points", "N/C grid size");

  CLI::App* fitpl = add_cmd(
      &app, "fit-pl",
      "Split a PL spectrum into the NV-/NV0 reference spectra and report the "
      "decay-rate-corrected charge-state fraction",
      "fit-pl");
  add_opt(fitpl, "--spectrum", "fitpl.spectrum",
          "measured PL spectrum CSV (wavelength_nm,value)");
  add_opt(fitpl, "--ref-minus", "fitpl.ref_minus",
          "NV- reference spectrum CSV");
  add_opt(fitpl, "--ref-zero", "fitpl.ref_zero", "NV0 reference spectrum CSV");
  commands[fitpl].required = {
      {"--spectrum", {"fitpl.spectrum"}},
      {"--ref-minus", {"fitpl.ref_minus"}},
      {"--ref-zero", {"fitpl.ref_zero"}},
  };

  CLI::App* fitecho = add_cmd(&app, "fit-echo",
                              "Fit a * exp(-t/T2) + c to Hahn-echo decay data",
                              "fit-echo");
  add_opt(fitecho, "--data", "echo.data", "echo decay CSV (time_us,signal)");
  commands[fitecho].required = {{"--data", {"echo.data"}}};

  CLI::App* absorption = add_cmd(
      &app, "absorption",
      "NV concentration from the 532 nm absorption coefficient, with "
      "optional diagnostic band detection and SVG rendering",
      "absorption");
  add_opt(absorption, "--spectrum", "absorption.spectrum",
          "spectrum CSV (wavelength_nm,value)");
  add_opt(absorption, "--thickness-cm", "absorption.thickness_cm",
          "optical path length, cm (required with --absorbance)");
  add_flag(absorption, "--absorbance", "absorption.absorbance",
           "input is decadic absorbance; convert to absorption coefficient");
  add_flag(absorption, "--band-report", "absorption.band_report",
           "scan the standard diagnostic bands and report the "
           "over-irradiation warning");
  add_opt(absorption, "--svg", "absorption.svg",
          "also render the spectrum to this SVG file");
  commands[absorption].required = {{"--spectrum", {"absorption.spectrum"}}};

  CLI::App* calibrate = add_cmd(
      &app, "calibrate",
      "Fit model constants from the embedded tables or a CSV and emit them "
      "as config lines",
      "calibrate");
  add_opt(calibrate, "--table", "calibrate.table",
          "table1 (conversion + charge curves) or table2 (growth law)");
  add_opt(calibrate, "--csv", "calibrate.csv", "input CSV (see --kind)");
  add_opt(calibrate, "--kind", "calibrate.kind",
          "growth (nc_ppm,p1_ppm), conversion (fluence_e_per_cm2,"
          "nv_total_ppm), or charge (r_re_percent,nv_minus_frac_percent)");
  add_opt(calibrate, "--energy", "calibrate.energy_mev",
          "restrict table1 to one energy / tag a conversion fit, MeV");
  add_opt(calibrate, "--p1", "calibrate.p1_ppm",
          "P1 of the conversion series, ppm (default 2.2)");
  commands[calibrate].required = {
      {"--table or --csv", {"calibrate.table", "calibrate.csv"}},
  };

  add_cmd(&app, "regress",
          "Check the model against the embedded dataset; exit 0 only when "
          "every check passes",
          "regress");

  add_cmd(&app, "report",
          "Per-sample before/after sensitivity comparison for the embedded "
          "nitrogen series: measured NV-, T2, and improvement factors",
          "report");

  CLI::App* dataset =
      app.add_subcommand("dataset", "embedded dataset utilities");
  dataset->require_subcommand(1);
  CLI::App* dump = add_cmd(dataset, "dump", "print an embedded table",
                           "dataset-dump");
  add_opt(dump, "--table", "dataset.table", "table1 or table2");
  add_opt(dump, "--format", "dataset.format", "csv (default) or json");
  commands[dump].required = {{"--table", {"dataset.table"}}};

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForVersion& e) {
    return app.exit(e);
  } catch (const CLI::Success& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return 1;
  }

  // Resolve the active leaf subcommand.
  CLI::App* active = nullptr;
  for (CLI::App* sub : app.get_subcommands()) {
    active = sub;
    if (sub == dataset) {
      const auto nested = sub->get_subcommands();
      if (!nested.empty()) active = nested.front();
    }
  }
  const CommandInfo& info = commands.at(active);

  nvf_session* session = nvf_session_new();
  if (session == nullptr) {
    std::fprintf(stderr, "Internal: out of memory\n");
    return 3;
  }
  const std::unique_ptr<nvf_session, void (*)(nvf_session*)> session_guard(
      session, &nvf_session_free);

  for (const std::string& path : info.config_paths) {
    const nvf_status rc = nvf_config_load(session, path.c_str());
    if (rc != NVF_OK) return fail_status(session, rc);
  }
  for (const BoundOption& opt : info.options) {
    if (opt.option->count() == 0) continue;
    const nvf_status rc =
        nvf_config_set(session, opt.key.c_str(), opt.value->c_str());
    if (rc != NVF_OK) return fail_status(session, rc);
  }
  for (const BoundFlag& flag : info.flags) {
    if (flag.option->count() == 0) continue;
    const nvf_status rc = nvf_config_set(session, flag.key.c_str(), "true");
    if (rc != NVF_OK) return fail_status(session, rc);
  }
  if (!info.out_path.empty()) {
    const nvf_status rc =
        nvf_config_set(session, "io.out", info.out_path.c_str());
    if (rc != NVF_OK) return fail_status(session, rc);
  }

  // Usage check: every required input must arrive via a flag or a config key.
  for (const RequiredGroup& group : info.required) {
    bool satisfied = false;
    for (const std::string& key : group.keys) {
      satisfied = satisfied || nvf_config_get(session, key.c_str()) != nullptr;
    }
    if (!satisfied) {
      std::fprintf(stderr, "%s: missing required input %s\n\n%s",
                   active->get_name().c_str(), group.label.c_str(),
                   active->help().c_str());
      return 1;
    }
  }

  char* out = nullptr;
  const nvf_status rc = nvf_run(session, info.runner_name.c_str(), &out);
  if (rc != NVF_OK) return fail_status(session, rc);
  if (info.out_path.empty()) {
    std::fwrite(out, 1, std::strlen(out), stdout);
  }
  nvf_string_free(out);
  return 0;
}
