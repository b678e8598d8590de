#pragma once

#include <optional>
#include <string>
#include <vector>

#include "nvforge/calibration.hpp"

namespace nvforge {

// Which design rule an optimization binds on.
enum class OptimizationGoal { ChargeStability, MaxNv };

const char* optimization_goal_name(OptimizationGoal goal);
OptimizationGoal optimization_goal_from_name(const std::string& name);

struct OptimizationMode {
  OptimizationGoal goal = OptimizationGoal::ChargeStability;
  // Percent override of the bound; when absent the configured rule threshold
  // applies (10% for ChargeStability, 35% for MaxNv). Must lie in (0, 100).
  std::optional<double> threshold_pct;
};

// Effective bound as a dimensionless fraction.
double mode_threshold_fraction(const OptimizationMode& mode,
                               const ModelConfig& config);

// Largest fluence keeping the mode's ratio strictly under its bound, never
// beyond the diminishing-returns cap phi0_eff * ln(1/saturation_headroom)
// past which NV creation is essentially saturated. Bisection on log-fluence
// over [fluence_lo, fluence_hi] to 1% relative resolution, after asserting
// that bound violation is monotone in fluence.
double optimal_fluence(double p1_grown_ppm, double energy_mev,
                       const OptimizationMode& mode, const ModelConfig& config);

// Convenience predictor only: rescales a known-good fluence by the P1 ratio
// (assumes the positive correlation is linear). Distinct from the
// model-driven optimum above.
double scaled_fluence_hint(double reference_fluence, double reference_p1_ppm,
                           double p1_ppm);

// A full process recipe with its predicted outcome.
struct Recipe {
  double nc_ratio_ppm = 0.0;
  double energy_mev = 0.0;
  double fluence_e_per_cm2 = 0.0;
  MaterialState predicted{0.0, 0.0, 0.0, 0.0, Stage::Annealed};
  double predicted_t2_s = 0.0;
  double fom = 0.0;

  Json to_json() const;
};

struct DesignTarget {
  OptimizationMode mode;
  std::optional<double> min_t2_s;
  std::optional<double> min_nv_minus_ppb;
};

// The N/C grid the designer scans: design_nc_points log-spaced values over
// [design_nc_min, design_nc_max], endpoints included.
std::vector<double> design_grid(const ModelConfig& config);

// Exhaustive scan of the N/C grid x calibrated energies, taking the optimal
// fluence at every point; returns the feasible recipe with the highest
// figure of merit (ties: lowest N/C, then lowest fluence).
Recipe design_process(const DesignTarget& target, const ModelConfig& config);

// Recipe at a fixed P1 and energy; the N/C ratio is backed out through the
// growth law.
Recipe recipe_for_p1(double p1_ppm, double energy_mev,
                     const OptimizationMode& mode, const ModelConfig& config);

}  // namespace nvforge
