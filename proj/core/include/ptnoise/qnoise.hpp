#pragma once

#include "ptnoise/compose.hpp"
#include "ptnoise/models.hpp"
#include "ptnoise/smatrix.hpp"

namespace ptnoise {

// An absorbing half couples to noise annihilation operators b with
// Q Q^dagger = 1 - S S^dagger; an amplifying half couples to creation
// operators b^dagger with Q Q^dagger = S S^dagger - 1.
enum class Medium { absorbing, amplifying };

struct NoiseOptions {
  double condition_cap = kDefaultConditionCap;
  // Test hook for mutation checks: negates the amplifier correlator after
  // the positivity check has run. Never set in production code.
  bool flip_amplifier_noise_sign = false;
};

/// Two mirror-attached halves joined at a single interface, with the
/// operator-valued noise sources kept explicit:
///
///     a_out = s_total a_in + m_left (Q_L b_L) + m_right (Q_R b_R^dagger)
///     (a0_left, a0_right) = w_in a_in + w_left (Q_L b_L) + w_right (Q_R b_R^dagger)
///
/// (b and b^dagger swap roles for a half whose medium is amplifying on the
/// left.) Only the products qq = Q Q^dagger are stored.
struct NoiseSystem {
  ScatteringMatrix s_left;
  ScatteringMatrix s_right;
  Medium left_medium = Medium::absorbing;
  Medium right_medium = Medium::amplifying;
  CMatrix qq_left;
  CMatrix qq_right;
  ScatteringMatrix s_total;
  CMatrix m_left, m_right;
  CMatrix w_in, w_left, w_right;
  double gamma = 0.0;
  double condition_number = 0.0;
};

Medium medium_of(const RegionModel& model);

// Left half: mirror | region_left. Right half: region_right | mirror.
NoiseSystem build_noise_system(const ScatteringMatrix& region_left, Medium left_medium,
                               const ScatteringMatrix& region_right, Medium right_medium,
                               double gamma, const NoiseOptions& options = {});

// Usual call: model absorbing on the left, its partner amplifying on the
// right. Other orientations are accepted and take their medium from
// gamma_sign.
NoiseSystem build_noise_system(const RegionModel& left, const RegionModel& right,
                               double gamma, double energy,
                               const NoiseOptions& options = {});

struct IntensityPair {
  double left = 0.0;
  double right = 0.0;
};

// Emission per unit energy for vacuum input, ground-state absorbers and
// fully inverted amplifiers: (1/2pi) diag(m qq m^dagger) over the
// amplifying halves, summed over the left and right output blocks.
IntensityPair emitted_intensities(const NoiseSystem& ns);

// Same contraction with the interface maps: <a0_left^dagger a0_left> and
// <a0_right^dagger a0_right> per unit energy.
IntensityPair internal_intensities(const NoiseSystem& ns);

// Single-mode backscattering approximation for small leakage (gamma <=
// 1e-2), built from the blocks of the mirror-attached left half. Throws
// RegimeViolation outside that regime or for N != 1.
double backscatter_peak_intensity(const NoiseSystem& ns);

// 2 Im[(1/t) dt/dE] by central difference, step 1e-6 max(1, e0). For N > 1
// the mean over modes of 2 Im eig(t^{-1} dt/dE).
double delay_time(const RegionModel& model, double e0);
std::vector<double> delay_times(const RegionModel& model, double e0);

}  // namespace ptnoise
