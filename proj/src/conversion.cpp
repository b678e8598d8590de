#include "nvforge/conversion.hpp"

#include <algorithm>
#include <cmath>

#include "nvforge/errors.hpp"
#include "nvforge/units.hpp"

namespace nvforge {

ChargeStateCurve::ChargeStateCurve(
    std::vector<std::pair<double, double>> points)
    : points_(std::move(points)) {
  if (points_.size() < 2) {
    fail(ErrorCode::InvalidArgument, "charge curve needs at least 2 points");
  }
  for (size_t i = 0; i < points_.size(); ++i) {
    const auto& [r, f] = points_[i];
    if (!std::isfinite(r) || r < 0.0) {
      fail(ErrorCode::InvalidArgument, "charge curve: r_re must be >= 0");
    }
    if (!(f >= 0.0) || !(f <= 100.0)) {
      fail(ErrorCode::InvalidArgument,
           "charge curve: fraction must be in [0, 100]");
    }
    if (i > 0 && !(points_[i - 1].first < r)) {
      fail(ErrorCode::InvalidArgument,
           "charge curve: r_re values must be strictly increasing");
    }
  }
}

ChargeCurveCalibration calibrate_charge_curve(
    std::vector<std::pair<double, double>> points) {
  if (points.size() < 2) {
    fail(ErrorCode::InvalidArgument,
         "charge calibration needs at least 2 points");
  }
  std::sort(points.begin(), points.end());
  for (size_t i = 1; i < points.size(); ++i) {
    if (points[i].first == points[i - 1].first) {
      fail(ErrorCode::InvalidArgument,
           "charge calibration: duplicate r_re value " +
               Json::format_number(points[i].first));
    }
  }
  // Longest non-increasing chain from the first point to the last; on equal
  // length the larger-r_re predecessor wins.
  const size_t n = points.size();
  std::vector<int> best(n, 0);
  std::vector<int> pred(n, -1);
  best[0] = 1;
  for (size_t i = 1; i < n; ++i) {
    for (size_t j = i; j-- > 0;) {
      if (best[j] > 0 && points[j].second >= points[i].second &&
          best[j] + 1 > best[i]) {
        best[i] = best[j] + 1;
        pred[i] = static_cast<int>(j);
      }
    }
  }
  if (best[n - 1] == 0) {
    fail(ErrorCode::NonMonotonicData,
         "charge calibration: no non-increasing chain connects the first and "
         "last points");
  }
  std::vector<bool> keep(n, false);
  for (int i = static_cast<int>(n) - 1; i >= 0; i = pred[i]) {
    keep[static_cast<size_t>(i)] = true;
    if (pred[i] < 0) break;
  }
  std::vector<std::pair<double, double>> kept, dropped;
  for (size_t i = 0; i < n; ++i) {
    (keep[i] ? kept : dropped).push_back(points[i]);
  }
  return ChargeCurveCalibration{ChargeStateCurve(std::move(kept)),
                                std::move(dropped)};
}

ChargeStateCurve ChargeStateCurve::builtin_default() {
  // Nine published (R_re, NV-/NV) percent pairs plus the (35, 50) anchor.
  static const std::vector<std::pair<double, double>> raw = {
      {1.3, 86.2}, {1.9, 86.3}, {8.3, 82.4},  {17.6, 65.5}, {33.3, 52.5},
      {1.7, 87.1}, {2.7, 86.4}, {9.5, 85.5},  {15.3, 67.9}, {35.0, 50.0},
  };
  return calibrate_charge_curve(raw).curve;
}

double nv_minus_fraction(double r_re_percent, const ChargeStateCurve& curve) {
  if (!(r_re_percent >= 0.0)) {
    fail(ErrorCode::InvalidArgument, "r_re must be >= 0");
  }
  const auto& pts = curve.points();
  if (r_re_percent <= pts.front().first) return pts.front().second;
  if (r_re_percent >= pts.back().first) return pts.back().second;
  auto it = std::upper_bound(
      pts.begin(), pts.end(), r_re_percent,
      [](double x, const std::pair<double, double>& p) { return x < p.first; });
  const auto& [x1, y1] = *it;
  const auto& [x0, y0] = *(it - 1);
  const double t = (r_re_percent - x0) / (x1 - x0);
  return y0 + t * (y1 - y0);
}

Json RuleReport::to_json() const {
  Json j = Json::object();
  j.set("charge_stable", Json::boolean(charge_stable));
  j.set("nv_minus_dominant", Json::boolean(nv_minus_dominant));
  j.set("ratios", r_values.to_json());
  return j;
}

MaterialState apply_treatment(const MaterialState& grown,
                              const IrradiationPlan& plan,
                              const ConversionCurve& curve,
                              const ChargeStateCurve& cs,
                              const VacancyYieldTable& yields) {
  require(grown.stage() == Stage::AsGrown,
          "apply_treatment: input state must be as_grown");
  const double p1_grown = grown.p1_ppm();
  const double created_ppm = nv_total_after_anneal(p1_grown, plan, curve);
  if (created_ppm > 0.0 && created_ppm >= p1_grown) {
    fail(ErrorCode::ModelOverrun,
         "created NV total " + Json::format_number(created_ppm) +
             " ppm reaches the grown P1 " + Json::format_number(p1_grown) +
             " ppm; conversion curve is miscalibrated");
  }
  const double p1_remain = p1_grown - created_ppm;
  double frac = 0.0;
  if (created_ppm > 0.0) {
    const double r_re_created = created_ppm / p1_remain * 100.0;
    frac = nv_minus_fraction(r_re_created, cs) / 100.0;
  }
  const double created_minus_ppb = ppm_to_ppb(created_ppm) * frac;
  const double created_zero_ppb = ppm_to_ppb(created_ppm) - created_minus_ppb;
  const double vacancies = vacancy_concentration(plan, yields);
  const double residual_vac = std::max(0.0, vacancies - created_ppm);
  return MaterialState(p1_remain, grown.nv_minus_ppb() + created_minus_ppb,
                       grown.nv_zero_ppb() + created_zero_ppb, residual_vac,
                       Stage::Annealed);
}

RuleReport check_rules(const MaterialState& grown,
                       const MaterialState& treated,
                       const RuleThresholds& thresholds) {
  RuleReport report;
  report.r_values = conversion_ratios(grown, treated);
  report.charge_stable = report.r_values.r_con < thresholds.r_con_max;
  report.nv_minus_dominant = report.r_values.r_re < thresholds.r_re_max;
  return report;
}

}  // namespace nvforge
