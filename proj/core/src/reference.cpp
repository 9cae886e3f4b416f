#include "ptnoise/reference.hpp"

#include <cmath>
#include <numbers>

namespace ptnoise::reference {

namespace {

// |(t1/t1*)^2 - 1 + gamma|^2
double resonance_denominator(cdouble t1, double gamma) {
  const cdouble ratio = t1 / std::conj(t1);
  return std::norm(ratio * ratio - 1.0 + gamma);
}

}  // namespace

BallisticPoint ballistic_emission(cdouble t1, double gamma) {
  const double a = std::norm(t1);
  const double den = 2.0 * std::numbers::pi * resonance_denominator(t1, gamma);
  BallisticPoint p;
  p.i_left = gamma * (1.0 / a - 1.0) * (1.0 - gamma + a) / den;
  p.i_right = gamma * (1.0 - a) * (1.0 - gamma + 1.0 / a) / den;
  const double x = 1.0 / std::abs(t1) - std::abs(t1);
  p.delta_i = gamma * gamma * x * x / den;
  p.i_total = gamma * (2.0 - gamma) * (1.0 / a - a) / den;
  return p;
}

CMatrix ballistic_total_s(cdouble t1, double gamma) {
  const cdouble t2 = t1 * t1;
  const cdouble tc2 = std::conj(t1) * std::conj(t1);
  const cdouble den = t2 * (1.0 - gamma) - tc2;
  const cdouble refl = std::sqrt(1.0 - gamma) * (tc2 - t2) / den;
  const cdouble trans = std::norm(t1) * gamma / den;
  CMatrix s(2, 2);
  s << refl, trans, trans, refl;
  return s;
}

double ballistic_lorentzian(double t0_abs, double tau, double gamma, double de) {
  const double a = t0_abs * t0_abs;
  return gamma * (1.0 / a - a) /
         (2.0 * std::numbers::pi * std::norm(cdouble(gamma, 2.0 * tau * de)));
}

double ballistic_integrated_output(double t0_abs, double tau) {
  const double a = t0_abs * t0_abs;
  return (1.0 / a - a) / (2.0 * tau);
}

CMatrix mirror_attached_left(const CMatrix& r1, const CMatrix& tp1, const CMatrix& t1,
                             const CMatrix& rp1, double gamma) {
  const auto n = r1.rows();
  const CMatrix id = CMatrix::Identity(n, n);
  const double c = std::sqrt(1.0 - gamma);
  const cdouble is(0.0, std::sqrt(gamma));
  const CMatrix inv = (id + c * r1).inverse();
  CMatrix s(2 * n, 2 * n);
  s << -(r1 + c * id) * inv, -is * inv * tp1, -is * t1 * inv, -(c * t1 * inv * tp1 - rp1);
  return s;
}

}  // namespace ptnoise::reference
