#pragma once

#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "nvforge/calibration.hpp"

namespace nvforge {

// Flat key/value settings store. Keys are dotted (e.g.
// `coherence.t2_other_us`); the registry of known keys is fixed and unknown
// keys are rejected at set time. Later sets overwrite earlier ones, so a
// config file applies in line order and command-line flags, applied last,
// win.
class Settings {
 public:
  // Throws BadConfig for unknown keys.
  void set(const std::string& key, const std::string& value);
  bool has(const std::string& key) const;
  const std::string& get(const std::string& key) const;  // throws if absent

  std::optional<std::string> find(const std::string& key) const;
  // Pointer into the store (stable until the key is next modified), or
  // nullptr when unset.
  const std::string* lookup(const std::string& key) const;
  const std::map<std::string, std::string>& values() const { return values_; }

 private:
  std::map<std::string, std::string> values_;
};

// True when `key` belongs to the registry (exact match or one of the
// energy-parameterized families `yield.<E>mev_ppm_cm2` /
// `conversion.<E>mev.<field>`).
bool is_known_key(const std::string& key);

// Parses `key = value` lines (blank lines and lines starting with `#`
// skipped) into (key, value) pairs in file order. Throws BadConfig with a
// `line N:` prefix on malformed lines; keys are validated against the
// registry.
std::vector<std::pair<std::string, std::string>> parse_config_text(
    const std::string& text);

// Reads a config file and applies it onto `settings` in line order.
void load_config_file(const std::string& path, Settings& settings);

// Typed readers; all throw BadConfig naming the key on malformed values.
double settings_double(const Settings& s, const std::string& key,
                       double fallback);
std::optional<double> settings_opt_double(const Settings& s,
                                          const std::string& key);
int settings_int(const Settings& s, const std::string& key, int fallback);
bool settings_bool(const Settings& s, const std::string& key, bool fallback);

// Materializes the model constants from defaults plus overrides. Model-level
// invariants are enforced by the owning modules' validators.
ModelConfig build_model_config(const Settings& settings);

// Renders the points of a charge-state curve in the `charge.points` value
// grammar `r:f,r:f,...`.
std::string format_charge_points(const ChargeStateCurve& curve);

}  // namespace nvforge
