#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <functional>
#include <string>
#include <vector>

#include "nvforge/errors.hpp"
#include "nvforge/spectra.hpp"
#include "test_util.hpp"

using namespace nvforge;
using testutil::error_code_of;

namespace {

Spectrum make_spectrum(double lo, double hi, double step,
                       const std::function<double(double)>& f,
                       SpectrumKind kind) {
  Spectrum s;
  s.kind = kind;
  for (double x = lo; x <= hi + 1e-9; x += step) {
    s.wavelengths_nm.push_back(x);
    s.values.push_back(f(x));
  }
  return s;
}

double triangle(double x, double center, double halfwidth) {
  return std::max(0.0, 1.0 - std::fabs(x - center) / halfwidth);
}

double gaussian(double x, double center, double width) {
  const double z = (x - center) / width;
  return std::exp(-0.5 * z * z);
}

const SpectrumKind kPl = SpectrumKind::PhotoluminescenceCounts;
const SpectrumKind kMu = SpectrumKind::AbsorptionCoefficient;

}  // namespace

TEST_CASE("spectrum parsing accepts an optional header") {
  const auto with_header =
      parse_spectrum("wavelength_nm,value\n500,1\n501,2\n", kMu);
  const auto without_header = parse_spectrum("500,1\n501,2\n", kMu);
  REQUIRE(with_header.spectrum.wavelengths_nm.size() == 2);
  CHECK(with_header.spectrum.wavelengths_nm ==
        without_header.spectrum.wavelengths_nm);
  CHECK(with_header.spectrum.values == without_header.spectrum.values);
  CHECK(with_header.warnings.empty());
  CHECK(with_header.spectrum.kind == kMu);
}

TEST_CASE("unsorted spectra are re-sorted with a warning") {
  const auto parsed = parse_spectrum("502,3\n500,1\n501,2\n", kMu);
  CHECK(parsed.spectrum.wavelengths_nm ==
        std::vector<double>{500.0, 501.0, 502.0});
  CHECK(parsed.spectrum.values == std::vector<double>{1.0, 2.0, 3.0});
  CHECK_FALSE(parsed.warnings.empty());
}

TEST_CASE("spectrum parsing error cases") {
  CHECK(error_code_of([] { parse_spectrum("500,1\n500,2\n", kMu); }) ==
        ErrorCode::DuplicateWavelength);
  CHECK(error_code_of([] { parse_spectrum("500,1\n", kMu); }) ==
        ErrorCode::TooShort);
  CHECK(error_code_of([] { parse_spectrum("", kMu); }) == ErrorCode::TooShort);
  try {
    parse_spectrum("500,1\nfoo,bar\n", kMu);
    CHECK(false);
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::ParseError);
    CHECK(std::string(e.what()).find("line 2") != std::string::npos);
  }
}

TEST_CASE("spectrum validation") {
  Spectrum s;
  s.wavelengths_nm = {500.0};
  s.values = {1.0};
  CHECK(error_code_of([&] { validate_spectrum(s); }) == ErrorCode::TooShort);
  s.wavelengths_nm = {500.0, 500.0};
  s.values = {1.0, 2.0};
  CHECK(error_code_of([&] { validate_spectrum(s); }) ==
        ErrorCode::InvalidArgument);
  s.wavelengths_nm = {500.0, 501.0};
  s.values = {1.0, std::nan("")};
  CHECK(error_code_of([&] { validate_spectrum(s); }) ==
        ErrorCode::InvalidArgument);
  s.values = {1.0, 2.0};
  CHECK(error_code_of([&] { validate_spectrum(s); }) == ErrorCode::Ok);
}

TEST_CASE("linear interpolation with an outside sentinel") {
  Spectrum s;
  s.wavelengths_nm = {500.0, 502.0};
  s.values = {1.0, 3.0};
  CHECK(spectrum_value_at(s, 501.0, -1.0) == doctest::Approx(2.0));
  CHECK(spectrum_value_at(s, 500.0, -1.0) == 1.0);
  CHECK(spectrum_value_at(s, 502.0, -1.0) == 3.0);
  CHECK(spectrum_value_at(s, 499.9, -1.0) == -1.0);
  CHECK(spectrum_value_at(s, 502.1, -1.0) == -1.0);
}

TEST_CASE("absorbance converts to an exponential absorption coefficient") {
  CHECK(absorbance_to_mu(1.0, 0.5) ==
        doctest::Approx(std::log(10.0) / 0.5).epsilon(1e-12));
  CHECK(absorbance_to_mu(0.0, 1.0) == 0.0);
  CHECK(error_code_of([] { absorbance_to_mu(1.0, 0.0); }) ==
        ErrorCode::NonPositiveThickness);
  CHECK(error_code_of([] { absorbance_to_mu(1.0, -1.0); }) ==
        ErrorCode::NonPositiveThickness);

  const Spectrum a = make_spectrum(
      500, 560, 2, [](double) { return 1.0; }, SpectrumKind::Absorbance);
  const Spectrum mu = spectrum_absorbance_to_mu(a, 0.05);
  CHECK(mu.kind == SpectrumKind::AbsorptionCoefficient);
  CHECK(mu.values.front() ==
        doctest::Approx(std::log(10.0) / 0.05).epsilon(1e-12));
  const Spectrum wrong_kind =
      make_spectrum(500, 560, 2, [](double) { return 1.0; }, kMu);
  CHECK(error_code_of([&] { spectrum_absorbance_to_mu(wrong_kind, 0.05); }) ==
        ErrorCode::KindMismatch);
}

TEST_CASE("NV concentration from the 532 nm absorption coefficient") {
  // mu = 1.672e-2 cm^-1 with the default cross-section gives 1.00 ppb with a
  // 26.3% relative uncertainty (oracle: mu/sigma/n_C).
  const NvAbsorptionResult r = nv_from_absorption(1.672e-2);
  CHECK(r.conc_ppb == doctest::Approx(1.0).epsilon(1e-12));
  CHECK(r.conc_cm3 == doctest::Approx(1.76e14).epsilon(1e-12));
  CHECK(r.rel_uncertainty == doctest::Approx(0.263157895).epsilon(1e-9));
  CHECK(r.conc_ppb_unc ==
        doctest::Approx(r.conc_ppb * r.rel_uncertainty).epsilon(1e-12));
  CHECK(Json::format_number(r.conc_ppb) == "1");

  // Halving the crystal site density doubles the ppb reading.
  UnitSystem sparse;
  sparse.n_carbon_cm3 /= 2.0;
  const NvAbsorptionResult r2 = nv_from_absorption(
      1.672e-2, kDefaultSigma532Cm2, kDefaultSigma532UncCm2, sparse);
  CHECK(r2.conc_ppb == doctest::Approx(2.0).epsilon(1e-12));

  CHECK(error_code_of([] { nv_from_absorption(-1.0); }) ==
        ErrorCode::InvalidArgument);
  CHECK(error_code_of([] { nv_from_absorption(1.0, 0.0); }) ==
        ErrorCode::InvalidArgument);

  const std::string text = r.to_json().dump();
  CHECK(text.find("\"mu_532_cm\"") != std::string::npos);
  CHECK(text.find("\"nv_ppb\": 1") != std::string::npos);
  CHECK(text.find("\"rel_uncertainty\"") != std::string::npos);
}

TEST_CASE("PL decomposition recovers exact mixing weights") {
  const Spectrum ref_minus = make_spectrum(
      550, 800, 1, [](double x) { return triangle(x, 680, 30); }, kPl);
  const Spectrum ref_zero = make_spectrum(
      550, 800, 1, [](double x) { return triangle(x, 600, 30); }, kPl);
  const Spectrum mix = make_spectrum(
      550, 800, 1,
      [](double x) {
        return 0.7 * triangle(x, 680, 30) + 0.3 * triangle(x, 600, 30);
      },
      kPl);

  const ChargeStateFit fit = decompose_pl(mix, ref_minus, ref_zero);
  CHECK(fit.w_minus == doctest::Approx(0.7).epsilon(1e-9));
  CHECK(fit.w_zero == doctest::Approx(0.3).epsilon(1e-9));
  CHECK(fit.residual_rms <= 1e-12);
  CHECK(fit.overlap_minus == 1.0);
  CHECK(fit.overlap_zero == 1.0);
  // Equal reference areas: photon ratio is the weight ratio.
  CHECK(fit.photon_ratio == doctest::Approx(7.0 / 3.0).epsilon(1e-9));
  // Decay-rate correction: NV- emits faster, so equal photons mean more NV-.
  const double rate_ratio = (1.0 / 12.0) / (1.0 / 20.0);
  CHECK(fit.conc_ratio ==
        doctest::Approx(fit.photon_ratio * rate_ratio).epsilon(1e-12));
  CHECK(fit.nv_minus_frac ==
        doctest::Approx(fit.conc_ratio / (1.0 + fit.conc_ratio))
            .epsilon(1e-12));
}

TEST_CASE("equal photon counts give the fixed decay-corrected fraction") {
  const Spectrum ref_minus = make_spectrum(
      550, 800, 1, [](double x) { return triangle(x, 680, 30); }, kPl);
  const Spectrum ref_zero = make_spectrum(
      550, 800, 1, [](double x) { return triangle(x, 600, 30); }, kPl);
  const Spectrum mix = make_spectrum(
      550, 800, 1,
      [](double x) {
        return 0.5 * triangle(x, 680, 30) + 0.5 * triangle(x, 600, 30);
      },
      kPl);
  const ChargeStateFit fit = decompose_pl(mix, ref_minus, ref_zero);
  CHECK(fit.photon_ratio == doctest::Approx(1.0).epsilon(1e-12));
  // (1/12) / ((1/12) + (1/20)) = 62.5% exactly.
  CHECK(fit.nv_minus_frac == doctest::Approx(0.625).epsilon(1e-12));
}

TEST_CASE("non-negative least squares clamps instead of going negative") {
  const Spectrum ref_minus = make_spectrum(
      550, 800, 1, [](double x) { return triangle(x, 650, 30); }, kPl);
  const Spectrum ref_zero = make_spectrum(
      550, 800, 1, [](double x) { return triangle(x, 655, 30); }, kPl);
  // Pure NV0 shape minus a slice of NV- shape: the unconstrained solution
  // would take w_minus < 0.
  const Spectrum mix = make_spectrum(
      550, 800, 1,
      [](double x) {
        return triangle(x, 655, 30) - 0.2 * triangle(x, 650, 30);
      },
      kPl);
  const ChargeStateFit fit = decompose_pl(mix, ref_minus, ref_zero);
  CHECK(fit.w_minus == 0.0);
  CHECK(fit.w_zero > 0.0);
}

TEST_CASE("PL decomposition error cases") {
  const Spectrum spectrum = make_spectrum(
      550, 800, 1, [](double x) { return triangle(x, 650, 30); }, kPl);
  const Spectrum far = make_spectrum(
      900, 1000, 1, [](double x) { return triangle(x, 950, 30); }, kPl);
  const Spectrum ref = make_spectrum(
      550, 800, 1, [](double x) { return triangle(x, 650, 30); }, kPl);
  CHECK(error_code_of([&] { decompose_pl(spectrum, far, ref); }) ==
        ErrorCode::EmptyOverlap);
  CHECK(error_code_of([&] { decompose_pl(spectrum, ref, ref); }) ==
        ErrorCode::DegenerateReferences);

  const Spectrum negative = make_spectrum(
      550, 800, 1, [](double x) { return triangle(x, 650, 30) - 0.5; }, kPl);
  CHECK(error_code_of([&] { decompose_pl(spectrum, negative, ref); }) ==
        ErrorCode::InvalidArgument);
  const Spectrum zero = make_spectrum(
      550, 800, 1, [](double) { return 0.0; }, kPl);
  CHECK(error_code_of([&] { decompose_pl(spectrum, zero, ref); }) ==
        ErrorCode::InvalidArgument);
}

TEST_CASE("echo fit recovers a noise-free decay") {
  std::vector<double> t, y;
  for (int i = 0; i < 50; ++i) {
    const double ti = 500e-6 * static_cast<double>(i) / 49.0;
    t.push_back(ti);
    y.push_back(std::exp(-ti / 100e-6) + 0.5);
  }
  const EchoFit fit = fit_hahn_echo(t, y);
  CHECK(fit.amplitude_a == doctest::Approx(1.0).epsilon(1e-6));
  CHECK(fit.t2_s == doctest::Approx(100e-6).epsilon(1e-6));
  CHECK(fit.offset_c == doctest::Approx(0.5).epsilon(1e-6));
  CHECK(fit.residual_rms <= 1e-9);

  const std::string text = fit.to_json().dump();
  CHECK(text.find("\"t2_us\"") != std::string::npos);
  CHECK(text.find("\"amplitude_a\"") != std::string::npos);
  CHECK(text.find("\"offset_c\"") != std::string::npos);
}

TEST_CASE("echo fit error cases") {
  CHECK(error_code_of([] {
          fit_hahn_echo({0.0, 1e-6, 2e-6}, {3.0, 2.0, 1.0});
        }) == ErrorCode::InsufficientData);
  CHECK(error_code_of([] {
          fit_hahn_echo({0.0, 2e-6, 1e-6, 3e-6}, {3.0, 2.0, 1.5, 1.0});
        }) == ErrorCode::InvalidArgument);
  CHECK(error_code_of([] {
          fit_hahn_echo({-1e-6, 0.0, 1e-6, 2e-6}, {3.0, 2.0, 1.5, 1.0});
        }) == ErrorCode::InvalidArgument);
  CHECK(error_code_of([] {
          fit_hahn_echo({0.0, 1e-6, 2e-6, 3e-6}, {1.0, 1.0, 1.0, 1.0});
        }) == ErrorCode::DegenerateSignal);
  CHECK(error_code_of([] {
          fit_hahn_echo({0.0, 1e-6, 2e-6, 3e-6}, {1.0, 1.0, 1.0});
        }) == ErrorCode::InvalidArgument);
}

TEST_CASE("baseline subtraction removes a linear background") {
  // Line 2 + 0.01 x plus a triangular bump confined to [490, 510].
  const Spectrum s = make_spectrum(
      400, 600, 1,
      [](double x) { return 2.0 + 0.01 * x + 0.8 * triangle(x, 500, 10); },
      kMu);
  const BaselineResult b = subtract_baseline(s, 480.0, 520.0);
  CHECK(b.slope == doctest::Approx(0.01).epsilon(1e-9));
  CHECK(b.intercept == doctest::Approx(2.0).epsilon(1e-6));
  CHECK(b.margin_rms <= 1e-9);
  // Triangle area = base * height / 2 = 20 * 0.8 / 2 = 8 value*nm.
  CHECK(clamped_band_area(b) == doctest::Approx(8.0).epsilon(1e-6));
  CHECK(signed_band_area(b) == doctest::Approx(8.0).epsilon(1e-6));

  CHECK(error_code_of([&] { subtract_baseline(s, 390.0, 420.0); }) ==
        ErrorCode::WindowOutOfRange);
  CHECK(error_code_of([&] { subtract_baseline(s, 560.0, 640.0); }) ==
        ErrorCode::WindowOutOfRange);
  CHECK(error_code_of([&] { subtract_baseline(s, 520.0, 480.0); }) ==
        ErrorCode::InvalidArgument);
}

TEST_CASE("flat spectra report every band absent") {
  const Spectrum flat =
      make_spectrum(240, 820, 1, [](double) { return 0.2; }, kMu);
  const BandReport report = detect_bands(flat);
  REQUIRE(report.bands.size() == 6);
  for (const auto& band : report.bands) {
    CHECK(band.covered);
    CHECK_FALSE(band.present);
    CHECK(band.integrated_strength >= 0.0);
  }
  CHECK(report.gr1_broad_covered);
  CHECK_FALSE(report.gr1_broad_present);
  CHECK_FALSE(report.over_irradiation_warning);
}

TEST_CASE("an isolated GR1 line raises the over-irradiation warning") {
  const Spectrum s = make_spectrum(
      460, 800, 1,
      [](double x) { return 0.1 + 0.5 * gaussian(x, 741, 6); }, kMu);
  const BandReport report = detect_bands(s);
  bool gr1_present = false;
  for (const auto& band : report.bands) {
    if (band.name == "GR1") {
      gr1_present = band.present;
      CHECK(band.covered);
      CHECK(band.integrated_strength > 0.1);
    }
    if (band.name == "NV_zero_575" || band.name == "NV_minus_637") {
      CHECK(band.covered);
      CHECK_FALSE(band.present);
    }
    if (band.name == "P1_270" || band.name == "ND1_ZPL") {
      CHECK_FALSE(band.covered);
      CHECK_FALSE(band.present);
    }
  }
  CHECK(gr1_present);
  CHECK(report.over_irradiation_warning);
}

TEST_CASE("an isolated ND1 line does not raise the warning") {
  const Spectrum s = make_spectrum(
      250, 800, 1,
      [](double x) { return 0.1 + 0.5 * gaussian(x, 393, 5); }, kMu);
  const BandReport report = detect_bands(s);
  bool nd1_present = false;
  bool gr1_present = true;
  for (const auto& band : report.bands) {
    if (band.name == "ND1_ZPL") nd1_present = band.present;
    if (band.name == "GR1") gr1_present = band.present;
  }
  CHECK(nd1_present);
  CHECK_FALSE(gr1_present);
  CHECK_FALSE(report.over_irradiation_warning);

  const std::string text = report.to_json().dump();
  CHECK(text.find("\"over_irradiation_warning\": false") != std::string::npos);
  CHECK(text.find("\"gr1_broad_present\"") != std::string::npos);
  CHECK(text.find("\"zpl_nm\"") != std::string::npos);
  CHECK(text.find("\"window_nm\"") != std::string::npos);
}

TEST_CASE("difference spectrum works on the overlap grid") {
  const Spectrum before =
      make_spectrum(500, 700, 1, [](double) { return 1.0; }, kMu);
  const Spectrum after = make_spectrum(
      550, 750, 1, [](double x) { return 1.0 + 0.01 * (x - 550); }, kMu);
  const Spectrum diff = difference_spectrum(after, before);
  CHECK(diff.wavelengths_nm.front() >= 550.0);
  CHECK(diff.wavelengths_nm.back() <= 700.0);
  CHECK(diff.values.front() == doctest::Approx(0.0).epsilon(1e-12));
  CHECK(spectrum_value_at(diff, 650.0, -1.0) == doctest::Approx(1.0));

  const Spectrum far =
      make_spectrum(900, 950, 1, [](double) { return 1.0; }, kMu);
  CHECK(error_code_of([&] { difference_spectrum(far, before); }) ==
        ErrorCode::EmptyOverlap);
  Spectrum pl = before;
  pl.kind = kPl;
  CHECK(error_code_of([&] { difference_spectrum(after, pl); }) ==
        ErrorCode::KindMismatch);
}

TEST_CASE("P1 estimate scales from a calibrated band strength") {
  const Spectrum s = make_spectrum(
      240, 320, 1,
      [](double x) { return 0.05 + 0.6 * triangle(x, 270, 8); }, kMu);
  const BaselineResult b = subtract_baseline(s, 255.0, 285.0);
  const double strength = clamped_band_area(b);
  REQUIRE(strength > 0.0);
  // A sample with half the reference strength carries half the P1.
  CHECK(p1_from_270_band(s, 2.0 * strength, 10.0) ==
        doctest::Approx(5.0).epsilon(1e-9));
  CHECK(error_code_of([&] { p1_from_270_band(s, 0.0, 10.0); }) ==
        ErrorCode::BadCalibration);
  CHECK(error_code_of([&] { p1_from_270_band(s, 1.0, -1.0); }) ==
        ErrorCode::BadCalibration);
}

TEST_CASE("svg rendering emits a document with band annotations") {
  const Spectrum s = make_spectrum(
      460, 800, 1,
      [](double x) { return 0.1 + 0.5 * gaussian(x, 741, 6); }, kMu);
  const BandReport report = detect_bands(s);
  const std::string svg = spectrum_svg(s, &report);
  CHECK(svg.find("<svg") != std::string::npos);
  CHECK(svg.find("</svg>") != std::string::npos);
  CHECK(spectrum_svg(s, nullptr).find("<svg") != std::string::npos);
}
