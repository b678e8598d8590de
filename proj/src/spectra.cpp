#include "nvforge/spectra.hpp"

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <limits>
#include <numbers>
#include <numeric>
#include <sstream>

#include "nvforge/errors.hpp"

namespace nvforge {

const char* spectrum_kind_name(SpectrumKind k) {
  switch (k) {
    case SpectrumKind::AbsorptionCoefficient: return "absorption_coefficient";
    case SpectrumKind::Absorbance: return "absorbance";
    case SpectrumKind::PhotoluminescenceCounts: return "pl_counts";
  }
  return "absorption_coefficient";
}

void validate_spectrum(const Spectrum& s) {
  if (s.wavelengths_nm.size() != s.values.size()) {
    fail(ErrorCode::InvalidArgument,
         "spectrum: wavelength and value lengths differ");
  }
  if (s.wavelengths_nm.size() < 2) {
    fail(ErrorCode::TooShort, "spectrum needs at least 2 points");
  }
  for (size_t i = 0; i < s.wavelengths_nm.size(); ++i) {
    if (!std::isfinite(s.wavelengths_nm[i]) || !std::isfinite(s.values[i])) {
      fail(ErrorCode::InvalidArgument, "spectrum: values must be finite");
    }
    if (i > 0 && !(s.wavelengths_nm[i - 1] < s.wavelengths_nm[i])) {
      fail(ErrorCode::InvalidArgument,
           "spectrum: wavelengths must be strictly increasing");
    }
  }
}

namespace {

bool parse_double(const std::string& field, double& out) {
  const char* begin = field.c_str();
  char* end = nullptr;
  out = std::strtod(begin, &end);
  if (end == begin) return false;
  while (*end == ' ' || *end == '\t') ++end;
  return *end == '\0' && std::isfinite(out);
}

std::string trim(const std::string& s) {
  size_t a = s.find_first_not_of(" \t\r");
  if (a == std::string::npos) return "";
  size_t b = s.find_last_not_of(" \t\r");
  return s.substr(a, b - a + 1);
}

}  // namespace

ParsedSpectrum parse_spectrum(const std::string& text, SpectrumKind kind) {
  std::vector<std::pair<double, double>> rows;
  std::vector<std::string> warnings;
  std::istringstream in(text);
  std::string line;
  int lineno = 0;
  bool first_content = true;
  while (std::getline(in, line)) {
    ++lineno;
    const std::string t = trim(line);
    if (t.empty()) continue;
    std::vector<std::string> fields;
    std::string cur;
    for (char c : t) {
      if (c == ',') {
        fields.push_back(trim(cur));
        cur.clear();
      } else {
        cur.push_back(c);
      }
    }
    fields.push_back(trim(cur));
    if (fields.size() != 2) {
      fail(ErrorCode::ParseError,
           "line " + std::to_string(lineno) + ": expected 2 columns, got " +
               std::to_string(fields.size()));
    }
    double w = 0.0, v = 0.0;
    const bool ok = parse_double(fields[0], w) && parse_double(fields[1], v);
    if (!ok) {
      if (first_content) {
        first_content = false;  // header row
        continue;
      }
      fail(ErrorCode::ParseError,
           "line " + std::to_string(lineno) + ": non-numeric row");
    }
    first_content = false;
    rows.emplace_back(w, v);
  }
  if (rows.size() < 2) {
    fail(ErrorCode::TooShort, "spectrum needs at least 2 rows, got " +
                                  std::to_string(rows.size()));
  }
  bool sorted = true;
  for (size_t i = 1; i < rows.size(); ++i) {
    if (!(rows[i - 1].first < rows[i].first)) {
      sorted = false;
      break;
    }
  }
  if (!sorted) {
    std::stable_sort(rows.begin(), rows.end(),
                     [](const auto& a, const auto& b) { return a.first < b.first; });
    warnings.push_back("wavelengths were not ascending; input re-sorted");
  }
  for (size_t i = 1; i < rows.size(); ++i) {
    if (rows[i].first == rows[i - 1].first) {
      fail(ErrorCode::DuplicateWavelength,
           "duplicate wavelength " + Json::format_number(rows[i].first) +
               " nm");
    }
  }
  ParsedSpectrum out;
  out.spectrum.kind = kind;
  out.spectrum.wavelengths_nm.reserve(rows.size());
  out.spectrum.values.reserve(rows.size());
  for (const auto& [w, v] : rows) {
    out.spectrum.wavelengths_nm.push_back(w);
    out.spectrum.values.push_back(v);
  }
  out.warnings = std::move(warnings);
  validate_spectrum(out.spectrum);
  return out;
}

double spectrum_value_at(const Spectrum& s, double x, double outside) {
  const auto& w = s.wavelengths_nm;
  if (x < w.front() || x > w.back()) return outside;
  auto it = std::upper_bound(w.begin(), w.end(), x);
  if (it == w.end()) return s.values.back();
  if (it == w.begin()) return s.values.front();
  const size_t k = static_cast<size_t>(it - w.begin());
  const double t = (x - w[k - 1]) / (w[k] - w[k - 1]);
  return s.values[k - 1] + t * (s.values[k] - s.values[k - 1]);
}

double absorbance_to_mu(double absorbance, double thickness_cm) {
  if (!(thickness_cm > 0.0)) {
    fail(ErrorCode::NonPositiveThickness,
         "thickness must be > 0 cm, got " + Json::format_number(thickness_cm));
  }
  return absorbance * std::log(10.0) / thickness_cm;
}

Spectrum spectrum_absorbance_to_mu(const Spectrum& s, double thickness_cm) {
  validate_spectrum(s);
  if (s.kind != SpectrumKind::Absorbance) {
    fail(ErrorCode::KindMismatch, "expected an absorbance spectrum");
  }
  Spectrum out = s;
  out.kind = SpectrumKind::AbsorptionCoefficient;
  for (double& v : out.values) v = absorbance_to_mu(v, thickness_cm);
  return out;
}

Json NvAbsorptionResult::to_json() const {
  Json j = Json::object();
  j.set("mu_532_cm", Json::number(mu_532_cm));
  j.set("nv_cm3", Json::number(conc_cm3));
  j.set("nv_ppb", Json::number(conc_ppb));
  j.set("nv_ppb_unc", Json::number(conc_ppb_unc));
  j.set("rel_uncertainty", Json::number(rel_uncertainty));
  return j;
}

NvAbsorptionResult nv_from_absorption(double mu_532_cm, double sigma_cm2,
                                      double sigma_unc_cm2,
                                      const UnitSystem& units) {
  require(mu_532_cm >= 0.0, "mu_532 must be >= 0");
  require(sigma_cm2 > 0.0, "sigma_532 must be > 0");
  require(sigma_unc_cm2 >= 0.0, "sigma_532 uncertainty must be >= 0");
  NvAbsorptionResult r;
  r.mu_532_cm = mu_532_cm;
  r.conc_cm3 = mu_532_cm / sigma_cm2;
  r.conc_ppb = units.cm3_to_ppb(r.conc_cm3);
  r.rel_uncertainty = sigma_unc_cm2 / sigma_cm2;
  r.conc_ppb_unc = r.conc_ppb * r.rel_uncertainty;
  return r;
}

Json ChargeStateFit::to_json() const {
  Json j = Json::object();
  j.set("w_minus", Json::number(w_minus));
  j.set("w_zero", Json::number(w_zero));
  j.set("photon_ratio", Json::number(photon_ratio));
  j.set("conc_ratio", Json::number(conc_ratio));
  j.set("nv_minus_frac", Json::number(nv_minus_frac));
  j.set("nv_minus_frac_pct", Json::number(nv_minus_frac * 100.0));
  j.set("overlap_minus", Json::number(overlap_minus));
  j.set("overlap_zero", Json::number(overlap_zero));
  j.set("residual_rms", Json::number(residual_rms));
  return j;
}

namespace {

double trapezoid(const std::vector<double>& xs, const std::vector<double>& ys) {
  double area = 0.0;
  for (size_t i = 1; i < xs.size(); ++i) {
    area += 0.5 * (ys[i] + ys[i - 1]) * (xs[i] - xs[i - 1]);
  }
  return area;
}

}  // namespace

ChargeStateFit decompose_pl(const Spectrum& spectrum, const Spectrum& ref_minus,
                            const Spectrum& ref_zero, const DecayRates& rates) {
  validate_spectrum(spectrum);
  validate_spectrum(ref_minus);
  validate_spectrum(ref_zero);
  require(rates.gamma_minus > 0.0 && rates.gamma_zero > 0.0,
          "decay rates must be > 0");
  for (const Spectrum* ref : {&ref_minus, &ref_zero}) {
    bool any_positive = false;
    for (double v : ref->values) {
      if (v < 0.0) {
        fail(ErrorCode::InvalidArgument,
             "reference spectra must be non-negative");
      }
      if (v > 0.0) any_positive = true;
    }
    if (!any_positive) {
      fail(ErrorCode::InvalidArgument,
           "reference spectra must not be identically zero");
    }
  }

  const auto& grid = spectrum.wavelengths_nm;
  const size_t n = grid.size();
  std::vector<double> rm(n), rz(n);
  size_t in_minus = 0, in_zero = 0;
  for (size_t i = 0; i < n; ++i) {
    const double x = grid[i];
    if (x >= ref_minus.wavelengths_nm.front() &&
        x <= ref_minus.wavelengths_nm.back()) {
      ++in_minus;
    }
    if (x >= ref_zero.wavelengths_nm.front() &&
        x <= ref_zero.wavelengths_nm.back()) {
      ++in_zero;
    }
    rm[i] = spectrum_value_at(ref_minus, x, 0.0);
    rz[i] = spectrum_value_at(ref_zero, x, 0.0);
  }
  if (in_minus == 0 || in_zero == 0) {
    fail(ErrorCode::EmptyOverlap,
         "reference spectra do not overlap the measurement grid");
  }

  double g00 = 0, g01 = 0, g11 = 0, b0 = 0, b1 = 0;
  for (size_t i = 0; i < n; ++i) {
    g00 += rm[i] * rm[i];
    g01 += rm[i] * rz[i];
    g11 += rz[i] * rz[i];
    b0 += rm[i] * spectrum.values[i];
    b1 += rz[i] * spectrum.values[i];
  }
  if (g00 == 0.0 || g11 == 0.0 ||
      g00 * g11 - g01 * g01 <= 1e-10 * g00 * g11) {
    fail(ErrorCode::DegenerateReferences,
         "reference spectra are collinear on the measurement grid");
  }

  // Two-variable NNLS: unconstrained solve, then deterministic active-set
  // fallback (candidates ordered with the lower-index variable kept free
  // first; strict improvement required to move past an earlier candidate).
  const double det = g00 * g11 - g01 * g01;
  double w0 = (b0 * g11 - b1 * g01) / det;
  double w1 = (b1 * g00 - b0 * g01) / det;
  if (w0 < 0.0 || w1 < 0.0) {
    struct Candidate {
      double w0, w1;
    };
    const Candidate cands[] = {
        {std::max(0.0, b0 / g00), 0.0},
        {0.0, std::max(0.0, b1 / g11)},
    };
    double best_sse = 0.0;
    int best = -1;
    for (int c = 0; c < 2; ++c) {
      double sse = 0.0;
      for (size_t i = 0; i < n; ++i) {
        const double r =
            cands[c].w0 * rm[i] + cands[c].w1 * rz[i] - spectrum.values[i];
        sse += r * r;
      }
      if (best < 0 || sse < best_sse) {
        best = c;
        best_sse = sse;
      }
    }
    w0 = cands[best].w0;
    w1 = cands[best].w1;
  }

  ChargeStateFit fit;
  fit.w_minus = w0;
  fit.w_zero = w1;
  fit.overlap_minus = static_cast<double>(in_minus) / static_cast<double>(n);
  fit.overlap_zero = static_cast<double>(in_zero) / static_cast<double>(n);
  double sse = 0.0;
  for (size_t i = 0; i < n; ++i) {
    const double r = w0 * rm[i] + w1 * rz[i] - spectrum.values[i];
    sse += r * r;
  }
  fit.residual_rms = std::sqrt(sse / static_cast<double>(n));

  const double photons_minus = w0 * trapezoid(grid, rm);
  const double photons_zero = w1 * trapezoid(grid, rz);
  if (photons_zero == 0.0) {
    fit.photon_ratio = photons_minus == 0.0
                           ? 0.0
                           : std::numeric_limits<double>::infinity();
  } else {
    fit.photon_ratio = photons_minus / photons_zero;
  }
  const double rate_ratio = rates.gamma_minus / rates.gamma_zero;
  fit.conc_ratio = fit.photon_ratio * rate_ratio;
  if (std::isinf(fit.conc_ratio)) {
    fit.nv_minus_frac = 1.0;
  } else {
    fit.nv_minus_frac = fit.conc_ratio / (1.0 + fit.conc_ratio);
  }
  return fit;
}

Json EchoFit::to_json() const {
  Json j = Json::object();
  j.set("amplitude_a", Json::number(amplitude_a));
  j.set("t2_s", Json::number(t2_s));
  j.set("t2_us", Json::number(t2_s * 1e6));
  j.set("offset_c", Json::number(offset_c));
  j.set("residual_rms", Json::number(residual_rms));
  return j;
}

namespace {

// Gaussian elimination with partial pivoting for a 3x3 system.
bool solve3(double m[3][3], double rhs[3], double out[3]) {
  int idx[3] = {0, 1, 2};
  for (int col = 0; col < 3; ++col) {
    int piv = col;
    for (int r = col + 1; r < 3; ++r) {
      if (std::abs(m[idx[r]][col]) > std::abs(m[idx[piv]][col])) piv = r;
    }
    std::swap(idx[col], idx[piv]);
    const double p = m[idx[col]][col];
    if (!(std::abs(p) > 1e-300)) return false;
    for (int r = col + 1; r < 3; ++r) {
      const double f = m[idx[r]][col] / p;
      for (int c = col; c < 3; ++c) m[idx[r]][c] -= f * m[idx[col]][c];
      rhs[idx[r]] -= f * rhs[idx[col]];
    }
  }
  for (int col = 2; col >= 0; --col) {
    double v = rhs[idx[col]];
    for (int c = col + 1; c < 3; ++c) v -= m[idx[col]][c] * out[c];
    out[col] = v / m[idx[col]][col];
  }
  return true;
}

double echo_sse(const std::vector<double>& t, const std::vector<double>& s,
                double a, double t2, double c) {
  double sum = 0.0;
  for (size_t i = 0; i < t.size(); ++i) {
    const double r = a * std::exp(-t[i] / t2) + c - s[i];
    sum += r * r;
  }
  return sum;
}

}  // namespace

EchoFit fit_hahn_echo(const std::vector<double>& times_s,
                      const std::vector<double>& signal) {
  if (times_s.size() != signal.size()) {
    fail(ErrorCode::InvalidArgument, "echo fit: length mismatch");
  }
  if (times_s.size() < 4) {
    fail(ErrorCode::InsufficientData,
         "echo fit needs at least 4 points, got " +
             std::to_string(times_s.size()));
  }
  for (size_t i = 0; i < times_s.size(); ++i) {
    if (!std::isfinite(times_s[i]) || !std::isfinite(signal[i])) {
      fail(ErrorCode::InvalidArgument, "echo fit: values must be finite");
    }
    if (!(times_s[i] >= 0.0)) {
      fail(ErrorCode::InvalidArgument, "echo fit: times must be >= 0");
    }
    if (i > 0 && !(times_s[i - 1] < times_s[i])) {
      fail(ErrorCode::InvalidArgument,
           "echo fit: times must be strictly increasing");
    }
  }
  double smax = signal[0], smin = signal[0], sabs = std::abs(signal[0]);
  for (double v : signal) {
    smax = std::max(smax, v);
    smin = std::min(smin, v);
    sabs = std::max(sabs, std::abs(v));
  }
  if (smax - smin <= 4.0 * std::numeric_limits<double>::epsilon() *
                         std::max(1.0, sabs)) {
    fail(ErrorCode::DegenerateSignal,
         "signal is flat within machine epsilon; T2 is undefined (a = 0)");
  }

  const size_t n = times_s.size();
  double c = signal.back();
  double a = signal.front() - signal.back();
  // T2 start: time where the normalized decay crosses 1/e, else the median.
  double t2 = 0.0;
  bool found = false;
  if (a != 0.0) {
    const double target = 1.0 / std::numbers::e;
    double prev = (signal[0] - c) / a;
    for (size_t i = 1; i < n; ++i) {
      const double curu = (signal[i] - c) / a;
      if ((prev - target) * (curu - target) <= 0.0 && prev != curu) {
        const double f = (prev - target) / (prev - curu);
        t2 = times_s[i - 1] + f * (times_s[i] - times_s[i - 1]);
        found = t2 > 0.0;
        break;
      }
      prev = curu;
    }
  }
  if (!found) {
    t2 = (n % 2 == 1) ? times_s[n / 2]
                      : 0.5 * (times_s[n / 2 - 1] + times_s[n / 2]);
    if (!(t2 > 0.0)) t2 = times_s.back() > 0.0 ? times_s.back() : 1.0;
  }

  double lam = 1e-3;
  double cur = echo_sse(times_s, signal, a, t2, c);
  bool converged = false;
  const int max_iter = 500;
  for (int it = 0; it < max_iter; ++it) {
    double h[3][3] = {{0, 0, 0}, {0, 0, 0}, {0, 0, 0}};
    double g[3] = {0, 0, 0};
    for (size_t i = 0; i < n; ++i) {
      const double e = std::exp(-times_s[i] / t2);
      const double r = a * e + c - signal[i];
      const double j0 = e;
      const double j1 = a * times_s[i] / (t2 * t2) * e;
      const double j2 = 1.0;
      const double J[3] = {j0, j1, j2};
      for (int p = 0; p < 3; ++p) {
        for (int q = 0; q < 3; ++q) h[p][q] += J[p] * J[q];
        g[p] += J[p] * r;
      }
    }
    bool stepped = false;
    double rel = 0.0;
    for (int inner = 0; inner < 60; ++inner) {
      double m[3][3];
      double rhs[3];
      for (int p = 0; p < 3; ++p) {
        for (int q = 0; q < 3; ++q) m[p][q] = h[p][q];
        m[p][p] += lam * h[p][p];
        rhs[p] = -g[p];
      }
      double d[3];
      if (!solve3(m, rhs, d)) {
        lam *= 10.0;
        continue;
      }
      const double an = a + d[0];
      const double t2n = std::max(1e-12, t2 + d[1]);
      const double cn = c + d[2];
      const double next = echo_sse(times_s, signal, an, t2n, cn);
      if (next <= cur) {
        rel = std::max({std::abs(an - a) / std::max(std::abs(a), 1e-300),
                        std::abs(t2n - t2) / std::max(std::abs(t2), 1e-300),
                        std::abs(cn - c) / std::max(std::abs(c), 1e-300)});
        a = an;
        t2 = t2n;
        c = cn;
        cur = next;
        lam = std::max(lam * 0.1, 1e-15);
        stepped = true;
        break;
      }
      lam *= 10.0;
    }
    if (!stepped) {
      converged = true;  // no downhill step exists under heavy damping
      break;
    }
    if (rel < 1e-10) {
      converged = true;
      break;
    }
  }
  if (!converged) {
    fail(ErrorCode::NonConvergence,
         "echo fit did not converge within 500 iterations");
  }
  EchoFit fit;
  fit.amplitude_a = a;
  fit.t2_s = t2;
  fit.offset_c = c;
  fit.residual_rms = std::sqrt(cur / static_cast<double>(n));
  return fit;
}

BaselineResult subtract_baseline(const Spectrum& s, double window_lo,
                                 double window_hi) {
  validate_spectrum(s);
  if (!(window_lo < window_hi)) {
    fail(ErrorCode::InvalidArgument, "band window: lo must be < hi");
  }
  const auto& w = s.wavelengths_nm;
  size_t below = 0, above = 0, inside = 0;
  for (double x : w) {
    if (x < window_lo) ++below;
    else if (x > window_hi) ++above;
    else ++inside;
  }
  if (below < 5 || above < 5 || inside < 2) {
    fail(ErrorCode::WindowOutOfRange,
         "window [" + Json::format_number(window_lo) + ", " +
             Json::format_number(window_hi) +
             "] nm needs >= 5 margin points on each side and >= 2 points "
             "inside the spectrum range");
  }

  const double width = window_hi - window_lo;
  const double margin = 0.1 * width;
  // Margin points: within 10% of the window width outside each edge, widened
  // to the nearest points until each side has at least 3.
  std::vector<size_t> margin_idx;
  auto gather_side = [&](bool left) {
    std::vector<size_t> side;
    if (left) {
      for (size_t i = 0; i < w.size(); ++i) {
        if (w[i] < window_lo && w[i] >= window_lo - margin) side.push_back(i);
      }
      if (side.size() < 3) {
        side.clear();
        for (size_t i = w.size(); i-- > 0;) {
          if (w[i] < window_lo) {
            side.push_back(i);
            if (side.size() == 3) break;
          }
        }
        std::reverse(side.begin(), side.end());
      }
    } else {
      for (size_t i = 0; i < w.size(); ++i) {
        if (w[i] > window_hi && w[i] <= window_hi + margin) side.push_back(i);
      }
      if (side.size() < 3) {
        side.clear();
        for (size_t i = 0; i < w.size(); ++i) {
          if (w[i] > window_hi) {
            side.push_back(i);
            if (side.size() == 3) break;
          }
        }
      }
    }
    return side;
  };
  for (size_t i : gather_side(true)) margin_idx.push_back(i);
  for (size_t i : gather_side(false)) margin_idx.push_back(i);

  double sx = 0, sy = 0, sxx = 0, sxy = 0;
  const double m = static_cast<double>(margin_idx.size());
  for (size_t i : margin_idx) {
    sx += w[i];
    sy += s.values[i];
    sxx += w[i] * w[i];
    sxy += w[i] * s.values[i];
  }
  const double denom = m * sxx - sx * sx;
  double slope = 0.0, intercept = 0.0;
  if (std::abs(denom) > 1e-300) {
    slope = (m * sxy - sx * sy) / denom;
    intercept = (sy - slope * sx) / m;
  } else {
    intercept = sy / m;
  }
  double rss = 0.0;
  for (size_t i : margin_idx) {
    const double r = s.values[i] - (slope * w[i] + intercept);
    rss += r * r;
  }

  BaselineResult out;
  out.slope = slope;
  out.intercept = intercept;
  out.margin_rms = std::sqrt(rss / m);
  out.window_lo = window_lo;
  out.window_hi = window_hi;
  for (size_t i = 0; i < w.size(); ++i) {
    if (w[i] >= window_lo && w[i] <= window_hi) {
      out.wavelengths_nm.push_back(w[i]);
      out.corrected.push_back(s.values[i] - (slope * w[i] + intercept));
    }
  }
  return out;
}

double clamped_band_area(const BaselineResult& b) {
  std::vector<double> clamped(b.corrected.size());
  for (size_t i = 0; i < clamped.size(); ++i) {
    clamped[i] = std::max(0.0, b.corrected[i]);
  }
  return trapezoid(b.wavelengths_nm, clamped);
}

double signed_band_area(const BaselineResult& b) {
  return trapezoid(b.wavelengths_nm, b.corrected);
}

Json BandRecord::to_json() const {
  Json j = Json::object();
  j.set("name", Json::string(name));
  Json z = Json::array();
  for (double v : zpl_nm) z.push(Json::number(v));
  j.set("zpl_nm", std::move(z));
  Json win = Json::array();
  win.push(Json::number(window_lo));
  win.push(Json::number(window_hi));
  j.set("window_nm", std::move(win));
  j.set("integrated_strength", Json::number(integrated_strength));
  j.set("present", Json::boolean(present));
  j.set("covered", Json::boolean(covered));
  return j;
}

Json BandReport::to_json() const {
  Json j = Json::object();
  Json arr = Json::array();
  for (const auto& b : bands) arr.push(b.to_json());
  j.set("bands", std::move(arr));
  j.set("gr1_broad_present", Json::boolean(gr1_broad_present));
  j.set("gr1_broad_covered", Json::boolean(gr1_broad_covered));
  j.set("over_irradiation_warning", Json::boolean(over_irradiation_warning));
  return j;
}

namespace {

struct BandDef {
  const char* name;
  std::vector<double> zpl;
  double lo;
  double hi;
};

const std::vector<BandDef>& band_definitions() {
  static const std::vector<BandDef> defs = {
      {"P1_270", {270.0}, 255.0, 285.0},
      {"ND1_ZPL", {393.0, 375.0, 384.0}, 360.0, 400.0},
      {"C489", {489.0}, 450.0, 500.0},
      {"NV_zero_575", {575.0}, 565.0, 585.0},
      {"NV_minus_637", {637.0}, 625.0, 650.0},
      {"GR1", {741.0}, 720.0, 760.0},
  };
  return defs;
}

// Presence test: the signed band area must exceed threshold_sigma times the
// standard deviation of integrated margin noise, sigma * sqrt(width * mean
// spacing), plus a small relative floor that keeps noise-free flat spectra
// absent under floating-point rounding.
bool band_presence(const Spectrum& s, const BaselineResult& b,
                   double threshold_sigma) {
  const double width = b.window_hi - b.window_lo;
  const double spacing =
      (b.wavelengths_nm.back() - b.wavelengths_nm.front()) /
      static_cast<double>(b.wavelengths_nm.size() - 1);
  double vscale = 0.0;
  for (size_t i = 0; i < s.wavelengths_nm.size(); ++i) {
    if (s.wavelengths_nm[i] >= b.window_lo &&
        s.wavelengths_nm[i] <= b.window_hi) {
      vscale = std::max(vscale, std::abs(s.values[i]));
    }
  }
  const double noise_floor =
      threshold_sigma * b.margin_rms * std::sqrt(width * spacing);
  const double rounding_floor = 1e-9 * width * std::max(vscale, 1e-300);
  return signed_band_area(b) > std::max(noise_floor, rounding_floor);
}

}  // namespace

BandReport detect_bands(const Spectrum& s, double threshold_sigma) {
  validate_spectrum(s);
  require(threshold_sigma > 0.0, "threshold_sigma must be > 0");
  BandReport report;
  for (const auto& def : band_definitions()) {
    BandRecord rec;
    rec.name = def.name;
    rec.zpl_nm = def.zpl;
    rec.window_lo = def.lo;
    rec.window_hi = def.hi;
    try {
      const BaselineResult b = subtract_baseline(s, def.lo, def.hi);
      rec.covered = true;
      rec.integrated_strength = clamped_band_area(b);
      rec.present = band_presence(s, b, threshold_sigma);
    } catch (const Error& e) {
      if (e.code() != ErrorCode::WindowOutOfRange) throw;
      rec.covered = false;
    }
    if (rec.name == "GR1") {
      report.over_irradiation_warning = rec.present;
      try {
        const BaselineResult broad = subtract_baseline(s, 500.0, 750.0);
        report.gr1_broad_covered = true;
        report.gr1_broad_present = band_presence(s, broad, threshold_sigma);
      } catch (const Error& e) {
        if (e.code() != ErrorCode::WindowOutOfRange) throw;
      }
    }
    report.bands.push_back(std::move(rec));
  }
  return report;
}

Spectrum difference_spectrum(const Spectrum& after, const Spectrum& before) {
  validate_spectrum(after);
  validate_spectrum(before);
  if (after.kind != before.kind) {
    fail(ErrorCode::KindMismatch, "spectra kinds differ");
  }
  const double lo =
      std::max(after.wavelengths_nm.front(), before.wavelengths_nm.front());
  const double hi =
      std::min(after.wavelengths_nm.back(), before.wavelengths_nm.back());
  Spectrum out;
  out.kind = after.kind;
  for (size_t i = 0; i < after.wavelengths_nm.size(); ++i) {
    const double x = after.wavelengths_nm[i];
    if (x < lo || x > hi) continue;
    out.wavelengths_nm.push_back(x);
    out.values.push_back(after.values[i] - spectrum_value_at(before, x, 0.0));
  }
  if (out.wavelengths_nm.size() < 2) {
    fail(ErrorCode::EmptyOverlap, "spectra share no usable wavelength range");
  }
  return out;
}

double p1_from_270_band(const Spectrum& s, double reference_strength,
                        double reference_p1_ppm) {
  if (!(reference_strength > 0.0)) {
    fail(ErrorCode::BadCalibration, "reference strength must be > 0");
  }
  if (!(reference_p1_ppm >= 0.0)) {
    fail(ErrorCode::BadCalibration, "reference P1 must be >= 0");
  }
  const BaselineResult b = subtract_baseline(s, 255.0, 285.0);
  return reference_p1_ppm * clamped_band_area(b) / reference_strength;
}

std::string spectrum_svg(const Spectrum& s, const BandReport* report) {
  validate_spectrum(s);
  const double wlo = s.wavelengths_nm.front();
  const double whi = s.wavelengths_nm.back();
  double vlo = s.values.front(), vhi = s.values.front();
  for (double v : s.values) {
    vlo = std::min(vlo, v);
    vhi = std::max(vhi, v);
  }
  if (vhi == vlo) vhi = vlo + 1.0;
  const double W = 800.0, H = 400.0, pad = 40.0;
  auto px = [&](double x) {
    return pad + (x - wlo) / (whi - wlo) * (W - 2 * pad);
  };
  auto py = [&](double v) {
    return H - pad - (v - vlo) / (vhi - vlo) * (H - 2 * pad);
  };
  std::ostringstream out;
  out << "<svg xmlns=\"http://www.w3.org/2000/svg\" viewBox=\"0 0 " << W
      << " " << H << "\">\n";
  out << "<rect width=\"" << W << "\" height=\"" << H
      << "\" fill=\"white\"/>\n";
  if (report) {
    for (const auto& band : report->bands) {
      if (!band.covered) continue;
      out << "<rect x=\"" << px(band.window_lo) << "\" y=\"" << pad
          << "\" width=\"" << px(band.window_hi) - px(band.window_lo)
          << "\" height=\"" << H - 2 * pad << "\" fill=\""
          << (band.present ? "#fdd" : "#eee") << "\"/>\n";
      out << "<text x=\"" << px(band.window_lo) + 2 << "\" y=\"" << pad + 12
          << "\" font-size=\"10\">" << band.name << "</text>\n";
    }
  }
  out << "<polyline fill=\"none\" stroke=\"black\" stroke-width=\"1\" "
         "points=\"";
  for (size_t i = 0; i < s.wavelengths_nm.size(); ++i) {
    if (i) out << " ";
    out << px(s.wavelengths_nm[i]) << "," << py(s.values[i]);
  }
  out << "\"/>\n";
  out << "<line x1=\"" << pad << "\" y1=\"" << H - pad << "\" x2=\"" << W - pad
      << "\" y2=\"" << H - pad << "\" stroke=\"black\"/>\n";
  out << "<line x1=\"" << pad << "\" y1=\"" << pad << "\" x2=\"" << pad
      << "\" y2=\"" << H - pad << "\" stroke=\"black\"/>\n";
  out << "<text x=\"" << W / 2 << "\" y=\"" << H - 8
      << "\" font-size=\"12\" text-anchor=\"middle\">wavelength (nm)</text>\n";
  out << "</svg>\n";
  return out.str();
}

}  // namespace nvforge
