#pragma once

#include <utility>
#include <vector>

#include "nvforge/core_state.hpp"
#include "nvforge/irradiation.hpp"

namespace nvforge {

// Charge-state partition curve: NV-/NV fraction (percent) as a function of
// the re-conversion ratio R_re = NV_total/P1_remain (percent). Piecewise
// linear between points, clamped to the end values outside the domain.
class ChargeStateCurve {
 public:
  // Points must be strictly increasing in r_re with fractions in [0, 100].
  explicit ChargeStateCurve(std::vector<std::pair<double, double>> points);

  const std::vector<std::pair<double, double>>& points() const {
    return points_;
  }

  // Default curve: the nine published (R_re, NV-/NV) pairs plus the
  // (35, 50) half-neutral anchor, run through calibration.
  static ChargeStateCurve builtin_default();

 private:
  std::vector<std::pair<double, double>> points_;
};

struct ChargeCurveCalibration {
  ChargeStateCurve curve;
  // Input points discarded to restore monotonicity, in r_re order.
  std::vector<std::pair<double, double>> dropped;
};

// Builds a monotone non-increasing curve from measured points: keeps the
// maximum number of points forming a non-increasing chain anchored at the
// first and last inputs (ties resolved toward the larger-r_re predecessor).
// Throws NonMonotonicData when no chain connects the anchors.
ChargeCurveCalibration calibrate_charge_curve(
    std::vector<std::pair<double, double>> points);

// NV-/NV (percent) at a given R_re (percent).
double nv_minus_fraction(double r_re_percent, const ChargeStateCurve& curve);

// Design-rule thresholds, dimensionless fractions.
struct RuleThresholds {
  double r_con_max = 0.10;  // charge stability bound on NV/P1_grown
  double r_re_max = 0.35;   // NV- dominance bound on NV/P1_remain
};

struct RuleReport {
  bool charge_stable = false;
  bool nv_minus_dominant = false;
  ConversionRatios r_values;

  Json to_json() const;
};

// Full irradiation + annealing step. Created NV consume one P1 each and are
// added to the as-grown NV inventory; the charge split of the created NV
// follows the curve at the created-NV R_re. Residual vacancies are those not
// consumed by NV formation.
MaterialState apply_treatment(const MaterialState& grown,
                              const IrradiationPlan& plan,
                              const ConversionCurve& curve,
                              const ChargeStateCurve& cs,
                              const VacancyYieldTable& yields = {});

RuleReport check_rules(const MaterialState& grown, const MaterialState& treated,
                       const RuleThresholds& thresholds = {});

}  // namespace nvforge
