#include "ptnoise/spectrum.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <optional>

#include <unsupported/Eigen/LevenbergMarquardt>

#include "parallel.hpp"
#include "ptnoise/errors.hpp"

namespace ptnoise {

namespace {

constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();

void require_increasing(std::span<const double> grid) {
  if (grid.empty()) throw InvalidParam("energy grid is empty");
  for (std::size_t i = 1; i < grid.size(); ++i) {
    if (!(grid[i] > grid[i - 1])) throw InvalidParam("energy grid must be strictly increasing");
  }
}

// y = a + h (f/2)^2 / ((x - x0)^2 + (f/2)^2), parameters (a, h, x0, f).
struct LorentzResidual : Eigen::DenseFunctor<double> {
  LorentzResidual(const Eigen::VectorXd& x, const Eigen::VectorXd& y)
      : Eigen::DenseFunctor<double>(4, static_cast<int>(x.size())), x_(x), y_(y) {}

  int operator()(const Eigen::VectorXd& p, Eigen::VectorXd& fvec) const {
    const double w2 = 0.25 * p(3) * p(3);
    for (Eigen::Index i = 0; i < x_.size(); ++i) {
      const double d = x_(i) - p(2);
      fvec(i) = p(0) + p(1) * w2 / (d * d + w2) - y_(i);
    }
    return 0;
  }

  int df(const Eigen::VectorXd& p, Eigen::MatrixXd& jac) const {
    const double w2 = 0.25 * p(3) * p(3);
    for (Eigen::Index i = 0; i < x_.size(); ++i) {
      const double d = x_(i) - p(2);
      const double den = d * d + w2;
      jac(i, 0) = 1.0;
      jac(i, 1) = w2 / den;
      jac(i, 2) = p(1) * w2 * 2.0 * d / (den * den);
      jac(i, 3) = p(1) * 0.5 * p(3) * d * d / (den * den);
    }
    return 0;
  }

  Eigen::VectorXd x_, y_;
};

// Linear crossing of `level` walking from `from` in direction `step`.
std::optional<double> half_crossing(const std::vector<SpectrumSample>& s, std::size_t from,
                                    int step, double level) {
  std::size_t i = from;
  while (true) {
    if ((step < 0 && i == 0) || (step > 0 && i + 1 >= s.size())) return std::nullopt;
    const std::size_t j = step < 0 ? i - 1 : i + 1;
    if (s[j].gap) return std::nullopt;
    if (s[j].i_total <= level) {
      const double f = (s[i].i_total - level) / (s[i].i_total - s[j].i_total);
      return s[i].energy + f * (s[j].energy - s[i].energy);
    }
    i = j;
  }
}

struct WindowedFit {
  LorentzianFit fit;
  double lo = 0.0, hi = 0.0;
};

WindowedFit fit_impl(const EmissionSpectrum& spectrum, double e0_hint) {
  const auto& s = spectrum.samples;
  std::size_t best = s.size();
  double best_dist = std::numeric_limits<double>::infinity();
  for (std::size_t i = 0; i < s.size(); ++i) {
    if (s[i].gap) continue;
    const double d = std::abs(s[i].energy - e0_hint);
    if (d < best_dist) {
      best_dist = d;
      best = i;
    }
  }
  if (best == s.size()) throw FitFailed("spectrum has no valid samples");

  // Climb to the nearest local maximum.
  for (;;) {
    const bool up_l = best > 0 && !s[best - 1].gap && s[best - 1].i_total > s[best].i_total;
    const bool up_r =
        best + 1 < s.size() && !s[best + 1].gap && s[best + 1].i_total > s[best].i_total;
    if (up_l && (!up_r || s[best - 1].i_total >= s[best + 1].i_total)) {
      --best;
    } else if (up_r) {
      ++best;
    } else {
      break;
    }
  }
  const double peak_value = s[best].i_total;
  if (!(peak_value > 0.0)) throw FitFailed("no emission peak near hint");

  const auto left = half_crossing(s, best, -1, 0.5 * peak_value);
  const auto right = half_crossing(s, best, +1, 0.5 * peak_value);
  if (!left || !right) throw FitFailed("peak half-maximum not inside the spectrum");
  const double width_est = *right - *left;
  const double centre = s[best].energy;
  const double lo = centre - 5.0 * width_est;
  const double hi = centre + 5.0 * width_est;

  std::vector<double> xs, ys;
  for (const auto& sample : s) {
    if (sample.gap || sample.energy < lo || sample.energy > hi) continue;
    xs.push_back((sample.energy - centre) / width_est);
    ys.push_back(sample.i_total / peak_value);
  }
  if (xs.size() < 6) throw FitFailed("too few samples in the fit window");

  const Eigen::VectorXd x = Eigen::Map<const Eigen::VectorXd>(xs.data(), xs.size());
  const Eigen::VectorXd y = Eigen::Map<const Eigen::VectorXd>(ys.data(), ys.size());
  LorentzResidual functor(x, y);
  Eigen::VectorXd p(4);
  p << y.minCoeff(), 1.0 - y.minCoeff(), 0.0, 1.0;
  Eigen::LevenbergMarquardt<LorentzResidual> lm(functor);
  lm.setXtol(1e-14);
  lm.setFtol(1e-14);
  lm.setMaxfev(2000);
  lm.minimize(p);

  Eigen::VectorXd resid(x.size());
  functor(p, resid);
  LorentzianFit fit;
  fit.e0 = centre + p(2) * width_est;
  fit.fwhm = std::abs(p(3)) * width_est;
  fit.baseline = p(0) * peak_value;
  fit.peak = (p(0) + p(1)) * peak_value;
  fit.max_residual = resid.cwiseAbs().maxCoeff() * peak_value;
  fit.window_samples = xs.size();
  for (const auto& sample : s) {
    if (!sample.gap && std::abs(sample.energy - fit.e0) <= 0.5 * fit.fwhm) ++fit.samples_in_fwhm;
  }
  if (!std::isfinite(fit.e0) || !std::isfinite(fit.fwhm) || !(fit.fwhm > 0.0)) {
    throw FitFailed("Lorentzian fit did not converge");
  }
  if (fit.max_residual > 0.05 * std::abs(fit.peak)) {
    throw FitFailed("Lorentzian fit residual exceeds 5% of the peak");
  }
  return {fit, lo, hi};
}

}  // namespace

std::vector<double> uniform_grid(double e_min, double e_max, std::size_t n_points) {
  if (n_points < 2) throw InvalidParam("grid needs n_points >= 2");
  if (!(e_min < e_max)) throw InvalidParam("grid needs e_min < e_max");
  std::vector<double> g(n_points);
  const double step = (e_max - e_min) / static_cast<double>(n_points - 1);
  for (std::size_t i = 0; i < n_points; ++i) g[i] = e_min + static_cast<double>(i) * step;
  g.back() = e_max;
  return g;
}

EmissionSpectrum emission_spectrum(const RegionModel& model, const RegionModel& partner,
                                   double gamma, std::span<const double> grid,
                                   const SpectrumOptions& options) {
  require_increasing(grid);
  MirrorSpec{gamma}.validate();
  model.validate();
  partner.validate();

  NoiseOptions noise = options.noise;
  noise.condition_cap = options.condition_cap;

  EmissionSpectrum out;
  out.gamma = gamma;
  out.model = model.descriptor() + " | " + partner.descriptor();
  out.samples.resize(grid.size());
  detail::parallel_for(grid.size(), options.jobs, [&](std::size_t i) {
    SpectrumSample& smp = out.samples[i];
    smp.energy = grid[i];
    try {
      const NoiseSystem ns = build_noise_system(model, partner, gamma, grid[i], noise);
      const IntensityPair p = emitted_intensities(ns);
      smp.i_left = p.left;
      smp.i_right = p.right;
      smp.i_total = p.left + p.right;
      smp.delta_i = p.right - p.left;
    } catch (const NearResonance&) {
      smp.gap = true;
      smp.i_left = smp.i_right = smp.i_total = smp.delta_i = kNaN;
    }
  });
  return out;
}

std::vector<InterfaceSample> interface_spectrum(const RegionModel& model,
                                                const RegionModel& partner, double gamma,
                                                std::span<const double> grid,
                                                const SpectrumOptions& options) {
  require_increasing(grid);
  MirrorSpec{gamma}.validate();
  NoiseOptions noise = options.noise;
  noise.condition_cap = options.condition_cap;

  std::vector<InterfaceSample> out(grid.size());
  detail::parallel_for(grid.size(), options.jobs, [&](std::size_t i) {
    InterfaceSample& smp = out[i];
    smp.energy = grid[i];
    try {
      const IntensityPair p =
          internal_intensities(build_noise_system(model, partner, gamma, grid[i], noise));
      smp.a0_left = p.left;
      smp.a0_right = p.right;
    } catch (const NearResonance&) {
      smp.gap = true;
      smp.a0_left = smp.a0_right = kNaN;
    }
  });
  return out;
}

double integrated_interface_occupation(std::span<const InterfaceSample> samples) {
  double sum = 0.0;
  for (std::size_t i = 1; i < samples.size(); ++i) {
    const auto& a = samples[i - 1];
    const auto& b = samples[i];
    if (a.gap || b.gap) continue;
    sum += 0.5 * (b.energy - a.energy) * (a.a0_left + a.a0_right + b.a0_left + b.a0_right);
  }
  return sum;
}

LorentzianFit lorentzian_fit(const EmissionSpectrum& spectrum, double e0_hint) {
  return fit_impl(spectrum, e0_hint).fit;
}

double total_intensity(const EmissionSpectrum& spectrum) {
  const auto& s = spectrum.samples;
  if (s.size() < 2) throw UnderResolved("spectrum needs at least two samples");

  double peak = 0.0;
  double peak_energy = 0.0;
  bool any_ok = false;
  for (const auto& smp : s) {
    if (smp.gap) continue;
    any_ok = true;
    if (smp.i_total > peak) {
      peak = smp.i_total;
      peak_energy = smp.energy;
    }
  }
  if (!any_ok) throw UnderResolved("spectrum has no valid samples");

  // Below this there is no line to resolve (lossless limit).
  constexpr double kEmissionFloor = 1e-12;
  if (peak > kEmissionFloor) {
    WindowedFit wf;
    try {
      wf = fit_impl(spectrum, peak_energy);
    } catch (const FitFailed& e) {
      throw UnderResolved(std::string("cannot resolve the emission line: ") + e.what());
    }
    if (wf.fit.samples_in_fwhm < 20) {
      throw UnderResolved("emission line has " + std::to_string(wf.fit.samples_in_fwhm) +
                          " samples per FWHM, need >= 20");
    }
    for (const auto& smp : s) {
      if (smp.gap && smp.energy >= wf.lo && smp.energy <= wf.hi) {
        throw UnderResolved("spectrum has gaps inside the emission line");
      }
    }
  }

  double sum = 0.0;
  for (std::size_t i = 1; i < s.size(); ++i) {
    if (s[i - 1].gap || s[i].gap) continue;
    sum += 0.5 * (s[i].energy - s[i - 1].energy) * (s[i - 1].i_total + s[i].i_total);
  }
  return sum;
}

}  // namespace ptnoise
