#pragma once

#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

#include "ptnoise/smatrix.hpp"

namespace ptnoise {

enum class RegionKind { ballistic, slab_scatterer, multimode };

// +1: absorbing (|t| < 1), -1: amplifying.
enum class GainSign : int { absorbing = 1, amplifying = -1 };

std::string_view to_string(RegionKind k);
RegionKind region_kind_from_string(std::string_view s);

/// Energy-parameterized scattering region. Units hbar = c = 1, wavenumber
/// k = E; the complex index is n_re + i * gamma_sign * kappa.
///
/// ballistic and slab_scatterer take a single (n_re, kappa) shared by all
/// modes. multimode takes either one value (broadcast) or one per mode.
struct RegionModel {
  RegionKind kind = RegionKind::ballistic;
  int n_modes = 1;
  std::vector<double> n_re{1.0};
  std::vector<double> kappa{0.0};
  double length = 1.0;
  double rho = 0.0;  // slab_scatterer: reflection probability of the centre scatterer
  std::uint64_t mixing_seed = 0;
  GainSign gamma_sign = GainSign::absorbing;

  static RegionModel ballistic(double n_re, double kappa, double length,
                               GainSign sign = GainSign::absorbing);
  static RegionModel slab(double n_re, double kappa, double length, double rho,
                          GainSign sign = GainSign::absorbing);
  static RegionModel multimode(std::vector<double> n_re, std::vector<double> kappa,
                               double length, std::uint64_t seed,
                               GainSign sign = GainSign::absorbing);

  void validate() const;
  double mode_n_re(int j) const;
  double mode_kappa(int j) const;
  std::string descriptor() const;

  bool operator==(const RegionModel&) const = default;
};

ScatteringMatrix evaluate(const RegionModel& model, double energy);

// Transmission block t (bottom-left) only; cheaper than evaluate for the
// kinds where r = 0.
CMatrix transmission(const RegionModel& model, double energy);

RegionModel pt_partner(const RegionModel& model);

// pt_partner with every kappa scaled by (1 + epsilon), epsilon > -1.
RegionModel detuned_partner(const RegionModel& model, double epsilon);

// Seeded real orthogonal N x N matrix. Gaussian entries from a 64-bit
// Mersenne Twister through Box-Muller, then Householder QR with the R
// diagonal made positive. Identical on every platform for a given seed.
RMatrix mixing_matrix(int n_modes, std::uint64_t seed);

double microreversibility_residual(const RegionModel& model, double energy);

}  // namespace ptnoise
