#include "nvforge/optimizer.hpp"

#include <cmath>

#include "nvforge/errors.hpp"

namespace nvforge {

namespace {

double mode_ratio(const Prediction& pred, OptimizationGoal goal,
                  bool stability_binds_on_r_re) {
  if (goal == OptimizationGoal::MaxNv) return pred.ratios.r_re;
  return stability_binds_on_r_re ? pred.ratios.r_re : pred.ratios.r_con;
}

}  // namespace

const char* optimization_goal_name(OptimizationGoal goal) {
  return goal == OptimizationGoal::MaxNv ? "max_nv" : "charge_stability";
}

OptimizationGoal optimization_goal_from_name(const std::string& name) {
  if (name == "charge-stability" || name == "charge_stability") {
    return OptimizationGoal::ChargeStability;
  }
  if (name == "max-nv" || name == "max_nv") return OptimizationGoal::MaxNv;
  fail(ErrorCode::InvalidArgument, "unknown optimization mode: " + name);
}

double mode_threshold_fraction(const OptimizationMode& mode,
                               const ModelConfig& config) {
  if (mode.threshold_pct) {
    require(*mode.threshold_pct > 0.0 && *mode.threshold_pct < 100.0,
            "mode threshold must lie in (0, 100) percent");
    return *mode.threshold_pct / 100.0;
  }
  return mode.goal == OptimizationGoal::MaxNv ? config.rules.r_re_max
                                              : config.rules.r_con_max;
}

double optimal_fluence(double p1_grown_ppm, double energy_mev,
                       const OptimizationMode& mode,
                       const ModelConfig& config) {
  require(p1_grown_ppm > 0.0, "p1 must be positive");
  const auto it = config.conversion_curves.find(energy_mev);
  if (it == config.conversion_curves.end()) {
    fail(ErrorCode::UncalibratedEnergy,
         "no conversion curve calibrated for " +
             Json::format_number(energy_mev) + " MeV");
  }
  const double threshold = mode_threshold_fraction(mode, config);
  const double lo0 = config.fluence_lo;
  const double hi0 = config.fluence_hi;
  require(lo0 > 0.0 && hi0 > lo0,
          "fluence window must be positive and ordered");

  const auto violated = [&](double fluence) {
    const Prediction pred =
        predict_state(p1_grown_ppm, IrradiationPlan(energy_mev, fluence),
                      config);
    return mode_ratio(pred, mode.goal, config.stability_binds_on_r_re) >=
           threshold;
  };

  if (violated(lo0)) {
    fail(ErrorCode::NoFeasibleFluence,
         "constraint violated even at the lower fluence bound");
  }

  const ConversionCurve& curve = it->second;
  const double phi0_eff =
      curve.phi0 * p1_grown_ppm / curve.reference_p1_ppm;
  require(config.saturation_headroom > 0.0 && config.saturation_headroom < 1.0,
          "saturation headroom must lie in (0, 1)");
  const double cap = phi0_eff * std::log(1.0 / config.saturation_headroom);

  if (!violated(hi0)) return std::min(hi0, cap);

  // The bound crossing must be a single transition over the window.
  bool seen_violation = false;
  constexpr int kProbes = 25;
  for (int i = 0; i <= kProbes; ++i) {
    const double fluence =
        lo0 * std::pow(hi0 / lo0, static_cast<double>(i) / kProbes);
    const bool v = violated(fluence);
    if (seen_violation && !v) {
      fail(ErrorCode::Internal,
           "constraint violation is not monotone in fluence");
    }
    seen_violation = seen_violation || v;
  }

  double lo = lo0;
  double hi = hi0;
  while (hi > lo * 1.01) {
    const double mid = std::sqrt(lo * hi);
    if (violated(mid)) {
      hi = mid;
    } else {
      lo = mid;
    }
  }
  return std::min(lo, cap);
}

double scaled_fluence_hint(double reference_fluence, double reference_p1_ppm,
                           double p1_ppm) {
  require(reference_fluence > 0.0, "reference fluence must be positive");
  require(reference_p1_ppm > 0.0, "reference p1 must be positive");
  require(p1_ppm > 0.0, "p1 must be positive");
  return reference_fluence * p1_ppm / reference_p1_ppm;
}

Json Recipe::to_json() const {
  Json j = Json::object();
  j.set("nc_ratio_ppm", Json::number(nc_ratio_ppm));
  j.set("energy_mev", Json::number(energy_mev));
  j.set("fluence_e_per_cm2", Json::number(fluence_e_per_cm2));
  j.set("predicted", predicted.to_json());
  j.set("predicted_t2_s", Json::number(predicted_t2_s));
  j.set("predicted_t2_us", Json::number(predicted_t2_s * 1e6));
  j.set("fom", Json::number(fom));
  return j;
}

std::vector<double> design_grid(const ModelConfig& config) {
  require(config.design_nc_points >= 2,
          "design grid needs at least two points");
  require(config.design_nc_min > 0.0 &&
              config.design_nc_max > config.design_nc_min,
          "design grid bounds must be positive and ordered");
  std::vector<double> grid;
  grid.reserve(static_cast<size_t>(config.design_nc_points));
  const double la = std::log(config.design_nc_min);
  const double lb = std::log(config.design_nc_max);
  for (int i = 0; i < config.design_nc_points; ++i) {
    grid.push_back(std::exp(
        la + (lb - la) * static_cast<double>(i) /
                 static_cast<double>(config.design_nc_points - 1)));
  }
  return grid;
}

Recipe design_process(const DesignTarget& target, const ModelConfig& config) {
  if (config.conversion_curves.empty()) {
    fail(ErrorCode::NoFeasibleRecipe, "no calibrated energies to search");
  }
  const std::vector<double> grid = design_grid(config);

  bool found = false;
  Recipe best;
  for (const double nc : grid) {
    const double p1 = p1_from_nc(GrowthRecipe{nc}, config.growth_law);
    for (const auto& [energy, curve] : config.conversion_curves) {
      (void)curve;
      double fluence = 0.0;
      try {
        fluence = optimal_fluence(p1, energy, target.mode, config);
      } catch (const Error& e) {
        if (e.code() == ErrorCode::NoFeasibleFluence) continue;
        throw;
      }
      const Prediction pred =
          predict_state(p1, IrradiationPlan(energy, fluence), config);
      if (target.min_t2_s && !(pred.t2_s >= *target.min_t2_s)) continue;
      if (target.min_nv_minus_ppb &&
          !(pred.treated.nv_minus_ppb() >= *target.min_nv_minus_ppb)) {
        continue;
      }
      const bool better =
          !found || pred.fom > best.fom ||
          (pred.fom == best.fom &&
           (nc < best.nc_ratio_ppm ||
            (nc == best.nc_ratio_ppm && fluence < best.fluence_e_per_cm2)));
      if (better) {
        best = Recipe{nc, energy, fluence, pred.treated, pred.t2_s, pred.fom};
        found = true;
      }
    }
  }
  if (!found) {
    fail(ErrorCode::NoFeasibleRecipe,
         "no grid point satisfies the design constraints");
  }
  return best;
}

Recipe recipe_for_p1(double p1_ppm, double energy_mev,
                     const OptimizationMode& mode, const ModelConfig& config) {
  require(p1_ppm > 0.0, "p1 must be positive");
  validate_growth_law(config.growth_law);
  const double fluence = optimal_fluence(p1_ppm, energy_mev, mode, config);
  const Prediction pred =
      predict_state(p1_ppm, IrradiationPlan(energy_mev, fluence), config);
  const double nc = std::pow(p1_ppm / config.growth_law.coefficient_a,
                             1.0 / config.growth_law.exponent_b);
  return Recipe{nc, energy_mev, fluence, pred.treated, pred.t2_s, pred.fom};
}

}  // namespace nvforge
