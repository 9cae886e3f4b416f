#pragma once

#include "ptnoise/smatrix.hpp"

// Analytic results for the single-mode ballistic resonator: an absorbing
// region with transmission t1 joined to its PT mirror image, both closed
// off by mirrors of transmission gamma.
namespace ptnoise::reference {

struct BallisticPoint {
  double i_left = 0.0;
  double i_right = 0.0;
  double delta_i = 0.0;
  double i_total = 0.0;
};

BallisticPoint ballistic_emission(cdouble t1, double gamma);

// Total 2 x 2 scattering matrix of the closed-off resonator.
CMatrix ballistic_total_s(cdouble t1, double gamma);

// Lorentzian line near a root e0 with |t(e0)| = t0_abs and delay time tau.
double ballistic_lorentzian(double t0_abs, double tau, double gamma, double de);

// Energy-integrated output of one line.
double ballistic_integrated_output(double t0_abs, double tau);

// Mirror-attached block matrix for a single left mirror, written in closed
// form (requires I + sqrt(1-gamma) r1 invertible).
CMatrix mirror_attached_left(const CMatrix& r1, const CMatrix& tp1, const CMatrix& t1,
                             const CMatrix& rp1, double gamma);

}  // namespace ptnoise::reference
