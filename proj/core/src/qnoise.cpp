#include "ptnoise/qnoise.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "ptnoise/errors.hpp"

namespace ptnoise {

namespace {

constexpr double kPassivityTolerance = 1e-9;
constexpr double kInvTwoPi = 0.5 * std::numbers::inv_pi;

CMatrix noise_correlator(const ScatteringMatrix& s, Medium medium) {
  const auto dim = s.data().rows();
  const CMatrix sst = s.data() * s.data().adjoint();
  const CMatrix id = CMatrix::Identity(dim, dim);
  CMatrix qq = medium == Medium::absorbing ? CMatrix(id - sst) : CMatrix(sst - id);
  // Hermitian by construction; remove rounding asymmetry.
  return 0.5 * (qq + qq.adjoint());
}

void require_positive(const CMatrix& qq, const char* which) {
  const double lo = min_hermitian_eigenvalue(qq);
  if (lo < -kPassivityTolerance) {
    throw NotPassive(std::string(which) + " noise correlator has eigenvalue " +
                     std::to_string(lo) + "; region medium does not match its gain sign");
  }
}

// (1/2pi) Re diag(m qq m^dagger), summed over the first and second half of
// the rows.
IntensityPair contract(const CMatrix& m, const CMatrix& qq, int n) {
  const CMatrix c = m * qq * m.adjoint();
  IntensityPair out;
  for (int i = 0; i < n; ++i) out.left += c(i, i).real();
  for (int i = n; i < 2 * n; ++i) out.right += c(i, i).real();
  out.left *= kInvTwoPi;
  out.right *= kInvTwoPi;
  return out;
}

IntensityPair sum_amplifying(const NoiseSystem& ns, const CMatrix& map_left,
                             const CMatrix& map_right) {
  const int n = ns.s_total.n_modes();
  IntensityPair total;
  if (ns.left_medium == Medium::amplifying) {
    const IntensityPair p = contract(map_left, ns.qq_left, n);
    total.left += p.left;
    total.right += p.right;
  }
  if (ns.right_medium == Medium::amplifying) {
    const IntensityPair p = contract(map_right, ns.qq_right, n);
    total.left += p.left;
    total.right += p.right;
  }
  return total;
}

}  // namespace

Medium medium_of(const RegionModel& model) {
  return model.gamma_sign == GainSign::absorbing ? Medium::absorbing : Medium::amplifying;
}

NoiseSystem build_noise_system(const ScatteringMatrix& region_left, Medium left_medium,
                               const ScatteringMatrix& region_right, Medium right_medium,
                               double gamma, const NoiseOptions& options) {
  const MirrorSpec mirror{gamma};
  mirror.validate();

  ScatteringMatrix s_left = attach_mirror(region_left, mirror, Side::left);
  ScatteringMatrix s_right = attach_mirror(region_right, mirror, Side::right);
  CMatrix qq_left = noise_correlator(s_left, left_medium);
  CMatrix qq_right = noise_correlator(s_right, right_medium);
  require_positive(qq_left, "left");
  require_positive(qq_right, "right");
  if (options.flip_amplifier_noise_sign) {
    if (left_medium == Medium::amplifying) qq_left = -qq_left;
    if (right_medium == Medium::amplifying) qq_right = -qq_right;
  }

  JunctionMaps j = join_regions(s_left, s_right, options.condition_cap);
  return NoiseSystem{
      std::move(s_left),      std::move(s_right), left_medium,
      right_medium,           std::move(qq_left), std::move(qq_right),
      std::move(j.s_total),   std::move(j.m_a),   std::move(j.m_b),
      std::move(j.w_in),      std::move(j.w_a),   std::move(j.w_b),
      gamma,                  j.condition_number,
  };
}

NoiseSystem build_noise_system(const RegionModel& left, const RegionModel& right,
                               double gamma, double energy, const NoiseOptions& options) {
  if (left.n_modes != right.n_modes) {
    throw InvalidParam("model and partner must have the same number of modes");
  }
  return build_noise_system(evaluate(left, energy), medium_of(left), evaluate(right, energy),
                            medium_of(right), gamma, options);
}

IntensityPair emitted_intensities(const NoiseSystem& ns) {
  return sum_amplifying(ns, ns.m_left, ns.m_right);
}

IntensityPair internal_intensities(const NoiseSystem& ns) {
  return sum_amplifying(ns, ns.w_left, ns.w_right);
}

double backscatter_peak_intensity(const NoiseSystem& ns) {
  if (ns.s_left.n_modes() != 1) {
    throw RegimeViolation("backscattering formula is single-mode only");
  }
  if (ns.gamma > 1e-2) {
    throw RegimeViolation("backscattering formula needs gamma <= 1e-2, got " +
                          std::to_string(ns.gamma));
  }
  if (ns.left_medium != Medium::absorbing) {
    throw RegimeViolation("backscattering formula expects the absorbing half on the left");
  }
  const cdouble t_l = ns.s_left(1, 0);
  const cdouble tp_l = ns.s_left(0, 1);
  const cdouble rp_l = ns.s_left(1, 1);
  // Absorbed fraction of a wave hitting the left half from the interface;
  // equals 1 - |r'_L|^2 to leading order in gamma and vanishes identically
  // for a lossless half.
  const double absorbed = 1.0 - std::norm(rp_l) - std::norm(tp_l);
  const cdouble denom = 2.0 * rp_l.imag() - cdouble(0.0, 1.0) * t_l * tp_l;
  return kInvTwoPi * absorbed * std::norm(tp_l) / std::norm(denom);
}

std::vector<double> delay_times(const RegionModel& model, double e0) {
  const double h = 1e-6 * std::max(1.0, e0);
  const CMatrix t0 = transmission(model, e0);
  const CMatrix dt = (transmission(model, e0 + h) - transmission(model, e0 - h)) / (2.0 * h);
  const CMatrix g = t0.fullPivLu().solve(dt);
  Eigen::ComplexEigenSolver<CMatrix> es(g, false);
  std::vector<double> taus;
  for (Eigen::Index i = 0; i < es.eigenvalues().size(); ++i) {
    taus.push_back(2.0 * es.eigenvalues()(i).imag());
  }
  std::sort(taus.begin(), taus.end());
  return taus;
}

double delay_time(const RegionModel& model, double e0) {
  if (model.n_modes == 1) {
    const double h = 1e-6 * std::max(1.0, e0);
    const cdouble t0 = transmission(model, e0)(0, 0);
    const cdouble dt =
        (transmission(model, e0 + h)(0, 0) - transmission(model, e0 - h)(0, 0)) / (2.0 * h);
    return 2.0 * (dt / t0).imag();
  }
  const auto taus = delay_times(model, e0);
  double sum = 0.0;
  for (double t : taus) sum += t;
  return sum / static_cast<double>(taus.size());
}

}  // namespace ptnoise
