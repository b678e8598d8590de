#include "nvforge/irradiation.hpp"

#include <algorithm>
#include <cmath>

#include "nvforge/errors.hpp"

namespace nvforge {

double VacancyYieldTable::rate_for(double energy_mev) const {
  auto it = entries.find(energy_mev);
  if (it == entries.end()) {
    fail(ErrorCode::UnknownEnergy,
         "no vacancy yield calibrated for " + Json::format_number(energy_mev) +
             " MeV");
  }
  if (!(it->second > 0.0)) {
    fail(ErrorCode::InvalidArgument, "vacancy yield rates must be > 0");
  }
  return it->second;
}

void validate_conversion_curve(const ConversionCurve& curve) {
  if (!(curve.nv_max_frac > 0.0) || !(curve.nv_max_frac <= 1.0)) {
    fail(ErrorCode::InvalidArgument,
         "conversion curve: nv_max_frac must be in (0, 1]");
  }
  if (!(curve.phi0 > 0.0)) {
    fail(ErrorCode::InvalidArgument, "conversion curve: phi0 must be > 0");
  }
  if (!(curve.reference_p1_ppm > 0.0)) {
    fail(ErrorCode::InvalidArgument,
         "conversion curve: reference_p1_ppm must be > 0");
  }
}

double vacancy_concentration(const IrradiationPlan& plan,
                             const VacancyYieldTable& table) {
  return table.rate_for(plan.energy_mev) * plan.fluence_e_per_cm2;
}

double nv_total_after_anneal(double p1_grown_ppm, const IrradiationPlan& plan,
                             const ConversionCurve& curve) {
  validate_conversion_curve(curve);
  if (plan.energy_mev != curve.energy_mev) {
    fail(ErrorCode::EnergyMismatch,
         "plan energy " + Json::format_number(plan.energy_mev) +
             " MeV does not match curve energy " +
             Json::format_number(curve.energy_mev) + " MeV");
  }
  if (!(p1_grown_ppm >= 0.0)) {
    fail(ErrorCode::InvalidArgument, "p1_grown_ppm must be >= 0");
  }
  if (p1_grown_ppm == 0.0) return 0.0;
  const double phi0_eff = curve.phi0 * p1_grown_ppm / curve.reference_p1_ppm;
  return p1_grown_ppm * curve.nv_max_frac *
         (1.0 - std::exp(-plan.fluence_e_per_cm2 / phi0_eff));
}

namespace {

double series_sse(const std::vector<std::pair<double, double>>& series,
                  double p1, double a, double b) {
  double s = 0.0;
  for (const auto& [phi, y] : series) {
    const double r = p1 * a * (1.0 - std::exp(-phi / b)) - y;
    s += r * r;
  }
  return s;
}

}  // namespace

ConversionCurve fit_conversion_curve(
    const std::vector<std::pair<double, double>>& series, double p1_grown_ppm,
    double energy_mev) {
  if (series.size() < 3) {
    fail(ErrorCode::InsufficientData,
         "conversion fit needs at least 3 points, got " +
             std::to_string(series.size()));
  }
  if (!(p1_grown_ppm > 0.0)) {
    fail(ErrorCode::InvalidArgument, "p1_grown_ppm must be > 0");
  }
  std::vector<double> phis;
  for (const auto& [phi, y] : series) {
    if (!(phi > 0.0)) {
      fail(ErrorCode::InvalidArgument, "fluences must be > 0");
    }
    if (!(y >= 0.0)) {
      fail(ErrorCode::InvalidArgument, "nv_total values must be >= 0");
    }
    phis.push_back(phi);
  }
  std::sort(phis.begin(), phis.end());
  if (std::adjacent_find(phis.begin(), phis.end()) != phis.end()) {
    fail(ErrorCode::InvalidArgument, "fluences must be distinct");
  }

  // Initialization: amplitude from the largest observed ratio with 20%
  // headroom (capped at the physical bound), scale from the median fluence.
  double max_ratio = 0.0;
  for (const auto& [phi, y] : series) {
    max_ratio = std::max(max_ratio, y / p1_grown_ppm);
  }
  double a = std::min(1.0, max_ratio * 1.2);
  a = std::max(a, 1e-12);
  double b = (phis.size() % 2 == 1)
                 ? phis[phis.size() / 2]
                 : 0.5 * (phis[phis.size() / 2 - 1] + phis[phis.size() / 2]);

  double lam = 1e-3;
  double cur = series_sse(series, p1_grown_ppm, a, b);
  bool converged = false;
  const int max_iter = 200;
  for (int it = 0; it < max_iter; ++it) {
    // Gauss-Newton normal equations for residuals r = model - y.
    double h00 = 0, h01 = 0, h11 = 0, g0 = 0, g1 = 0;
    for (const auto& [phi, y] : series) {
      const double e = std::exp(-phi / b);
      const double r = p1_grown_ppm * a * (1.0 - e) - y;
      const double j0 = p1_grown_ppm * (1.0 - e);
      const double j1 = -p1_grown_ppm * a * phi / (b * b) * e;
      h00 += j0 * j0;
      h01 += j0 * j1;
      h11 += j1 * j1;
      g0 += j0 * r;
      g1 += j1 * r;
    }
    bool stepped = false;
    double rel = 0.0;
    for (int inner = 0; inner < 60; ++inner) {
      const double m00 = h00 + lam * h00;
      const double m11 = h11 + lam * h11;
      const double det = m00 * m11 - h01 * h01;
      if (!(std::abs(det) > 1e-300)) {
        lam *= 10.0;
        continue;
      }
      const double d0 = (-g0 * m11 + g1 * h01) / det;
      const double d1 = (-g1 * m00 + g0 * h01) / det;
      const double an = std::min(1.0, std::max(1e-12, a + d0));
      const double bn = std::max(1e-6, b + d1);
      const double next = series_sse(series, p1_grown_ppm, an, bn);
      if (next <= cur) {
        rel = std::max(std::abs(an - a) / std::max(std::abs(a), 1e-300),
                       std::abs(bn - b) / std::max(std::abs(b), 1e-300));
        a = an;
        b = bn;
        cur = next;
        lam = std::max(lam * 0.1, 1e-15);
        stepped = true;
        break;
      }
      lam *= 10.0;
    }
    if (!stepped) {
      // No downhill step exists even under heavy damping: at a minimum to
      // machine precision.
      converged = true;
      break;
    }
    if (rel < 1e-10) {
      converged = true;
      break;
    }
  }
  if (!converged) {
    fail(ErrorCode::NonConvergence,
         "conversion fit did not converge within 200 iterations");
  }
  ConversionCurve curve;
  curve.energy_mev = energy_mev;
  curve.nv_max_frac = a;
  curve.phi0 = b;
  curve.reference_p1_ppm = p1_grown_ppm;
  return curve;
}

}  // namespace nvforge
