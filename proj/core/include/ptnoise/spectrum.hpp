#pragma once

#include <span>
#include <string>
#include <vector>

#include "ptnoise/models.hpp"
#include "ptnoise/qnoise.hpp"

namespace ptnoise {

// Spectra flag a sample as a gap once the interface condition number
// passes this.
inline constexpr double kSpectrumConditionCap = 1e10;

struct SpectrumSample {
  double energy = 0.0;
  double i_left = 0.0;
  double i_right = 0.0;
  double i_total = 0.0;
  double delta_i = 0.0;  // i_right - i_left
  bool gap = false;      // intensities are NaN when set
};

struct EmissionSpectrum {
  std::vector<SpectrumSample> samples;
  double gamma = 0.0;
  std::string model;
};

struct SpectrumOptions {
  int jobs = 1;
  double condition_cap = kSpectrumConditionCap;
  NoiseOptions noise{};
};

// Evaluates build_noise_system + emitted_intensities at each grid energy.
// Grid must be strictly increasing. Work is split into contiguous chunks
// across jobs; the result does not depend on the job count.
EmissionSpectrum emission_spectrum(const RegionModel& model, const RegionModel& partner,
                                   double gamma, std::span<const double> grid,
                                   const SpectrumOptions& options = {});

struct InterfaceSample {
  double energy = 0.0;
  double a0_left = 0.0;
  double a0_right = 0.0;
  bool gap = false;
};

std::vector<InterfaceSample> interface_spectrum(const RegionModel& model,
                                                const RegionModel& partner, double gamma,
                                                std::span<const double> grid,
                                                const SpectrumOptions& options = {});

// Trapezoidal integral of a0_left + a0_right over the grid (gaps skipped):
// the interface occupation carried by the lines inside the grid.
double integrated_interface_occupation(std::span<const InterfaceSample> samples);

struct LorentzianFit {
  double e0 = 0.0;
  double fwhm = 0.0;
  double peak = 0.0;      // baseline + height at e0
  double baseline = 0.0;
  double max_residual = 0.0;
  std::size_t window_samples = 0;
  std::size_t samples_in_fwhm = 0;
};

// Least-squares fit of i_total to a + p / ((E - e0)^2 + (fwhm/2)^2) on
// +/- 5 estimated widths around the local maximum nearest e0_hint. Throws
// FitFailed if the window is too small or the max residual exceeds 5% of
// the peak.
LorentzianFit lorentzian_fit(const EmissionSpectrum& spectrum, double e0_hint);

// Trapezoidal integral of i_total, skipping intervals that touch a gap.
// A spectrum carrying emission must resolve its strongest line with at
// least 20 samples per FWHM and no gaps inside the fitted window, otherwise
// UnderResolved.
double total_intensity(const EmissionSpectrum& spectrum);

std::vector<double> uniform_grid(double e_min, double e_max, std::size_t n_points);

}  // namespace ptnoise
