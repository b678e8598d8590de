#pragma once

#include <optional>
#include <string>
#include <vector>

#include "nvforge/jsonout.hpp"
#include "nvforge/units.hpp"

namespace nvforge {

enum class SpectrumKind { AbsorptionCoefficient, Absorbance, PhotoluminescenceCounts };

const char* spectrum_kind_name(SpectrumKind k);

// Sampled spectrum: strictly increasing wavelengths (nm) with one value per
// point (absorption coefficient cm^-1, absorbance, or PL counts).
struct Spectrum {
  std::vector<double> wavelengths_nm;
  std::vector<double> values;
  SpectrumKind kind = SpectrumKind::AbsorptionCoefficient;
};

// Throws unless the spectrum satisfies its invariants (length >= 2, strictly
// increasing wavelengths, finite values).
void validate_spectrum(const Spectrum& s);

struct ParsedSpectrum {
  Spectrum spectrum;
  std::vector<std::string> warnings;
};

// Parses two-column CSV `wavelength_nm,value` with an optional header.
// Unsorted input is re-sorted and flagged in warnings.
ParsedSpectrum parse_spectrum(const std::string& text, SpectrumKind kind);

// Linear interpolation of the spectrum at x; returns `outside` beyond the
// sampled range.
double spectrum_value_at(const Spectrum& s, double x, double outside);

// Decadic absorbance to exponential absorption coefficient (cm^-1).
double absorbance_to_mu(double absorbance, double thickness_cm);

// Applies absorbance_to_mu pointwise; kind becomes AbsorptionCoefficient.
Spectrum spectrum_absorbance_to_mu(const Spectrum& s, double thickness_cm);

// Default one-phonon-band absorption cross-section at 532 nm, cm^2.
inline constexpr double kDefaultSigma532Cm2 = 0.95e-16;
inline constexpr double kDefaultSigma532UncCm2 = 0.25e-16;

struct NvAbsorptionResult {
  double mu_532_cm = 0.0;
  double conc_cm3 = 0.0;
  double conc_ppb = 0.0;
  double rel_uncertainty = 0.0;  // propagated from the cross-section
  double conc_ppb_unc = 0.0;

  Json to_json() const;
};

// NV concentration from the 532 nm absorption coefficient.
NvAbsorptionResult nv_from_absorption(double mu_532_cm,
                                      double sigma_cm2 = kDefaultSigma532Cm2,
                                      double sigma_unc_cm2 = kDefaultSigma532UncCm2,
                                      const UnitSystem& units = {});

// Radiative decay rates (1/ns) used to convert photon ratios into
// concentration ratios.
struct DecayRates {
  double gamma_minus = 1.0 / 12.0;
  double gamma_zero = 1.0 / 20.0;
};

struct ChargeStateFit {
  double w_minus = 0.0;
  double w_zero = 0.0;
  double photon_ratio = 0.0;   // Np- / Np0
  double conc_ratio = 0.0;     // [NV-] / [NV0]
  double nv_minus_frac = 0.0;  // [NV-] / NV_total, fraction in [0, 1]
  double overlap_minus = 0.0;  // fraction of grid points covered by ref-
  double overlap_zero = 0.0;
  double residual_rms = 0.0;

  Json to_json() const;
};

// Non-negative least-squares split of a PL spectrum into the two reference
// charge-state spectra, with the decay-rate correction applied to the photon
// ratio. References are resampled onto the measurement grid (zero outside
// their range).
ChargeStateFit decompose_pl(const Spectrum& spectrum, const Spectrum& ref_minus,
                            const Spectrum& ref_zero,
                            const DecayRates& rates = {});

struct EchoFit {
  double amplitude_a = 0.0;
  double t2_s = 0.0;
  double offset_c = 0.0;
  double residual_rms = 0.0;

  Json to_json() const;
};

// Damped iterative least-squares fit of a * exp(-t/T2) + c.
EchoFit fit_hahn_echo(const std::vector<double>& times_s,
                      const std::vector<double>& signal);

struct BaselineResult {
  std::vector<double> wavelengths_nm;  // points inside the window
  std::vector<double> corrected;       // value minus fitted line (unclamped)
  double slope = 0.0;
  double intercept = 0.0;
  double margin_rms = 0.0;  // RMS of line-fit residuals in the side margins
  double window_lo = 0.0;
  double window_hi = 0.0;
};

// Fits a straight line through the side margins of a band window (each margin
// 10% of the window width, at least 3 points, expanded outward as needed) and
// subtracts it across the window.
BaselineResult subtract_baseline(const Spectrum& s, double window_lo,
                                 double window_hi);

// Trapezoidal area of max(corrected, 0) over the window (value * nm).
double clamped_band_area(const BaselineResult& b);

// Trapezoidal area of the corrected values without clamping.
double signed_band_area(const BaselineResult& b);

struct BandRecord {
  std::string name;
  std::vector<double> zpl_nm;
  double window_lo = 0.0;
  double window_hi = 0.0;
  double integrated_strength = 0.0;  // clamped, value * nm
  bool present = false;
  bool covered = false;  // window plus margins inside the spectrum

  Json to_json() const;
};

struct BandReport {
  std::vector<BandRecord> bands;
  // Secondary broad-feature check attached to GR1 (500-750 nm).
  bool gr1_broad_present = false;
  bool gr1_broad_covered = false;
  bool over_irradiation_warning = false;

  Json to_json() const;
};

// Scans the standard diagnostic bands. Presence compares the signed band area
// against threshold_sigma times the standard deviation of an integrated
// noise floor estimated from the margin residuals; the reported strength is
// the clamped area. Windows that do not fit in the spectrum are marked
// uncovered, never guessed.
BandReport detect_bands(const Spectrum& s, double threshold_sigma = 3.0);

// after - before on the intersection grid of `after`; `before` is linearly
// interpolated. Kinds must match.
Spectrum difference_spectrum(const Spectrum& after, const Spectrum& before);

// P1 concentration from the 270 nm band strength against a calibrated
// reference strength.
double p1_from_270_band(const Spectrum& s, double reference_strength,
                        double reference_p1_ppm);

// Simple SVG rendering of a spectrum with band annotations (convenience
// output; not bit-exact across platforms).
std::string spectrum_svg(const Spectrum& s, const BandReport* report);

}  // namespace nvforge
