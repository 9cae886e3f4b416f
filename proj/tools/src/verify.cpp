#include <algorithm>
#include <cmath>
#include <functional>
#include <numbers>
#include <random>

#include "ptnoise/compose.hpp"
#include "ptnoise/errors.hpp"
#include "ptnoise/quantize.hpp"
#include "ptnoise/reference.hpp"
#include "ptnoise/symmetry.hpp"
#include "ptnoise_cli/commands.hpp"

namespace ptnoise::cli {

namespace {

constexpr double pi = std::numbers::pi;

const RegionModel kBallistic = RegionModel::ballistic(1.0, 0.05, 1.0);
const RegionModel kSlab = RegionModel::slab(1.0, 0.05, 1.0, 0.3);
const RegionModel kMultimode = RegionModel::multimode({1.0, 1.2, 0.9}, {0.05, 0.02, 0.08}, 1.0, 7);

double rel(double a, double b) { return std::abs(a - b) / std::max(std::abs(b), 1e-300); }

CheckResult below(std::string name, double residual, double tol, std::string detail = {}) {
  return {std::move(name), residual < tol, residual, tol, std::move(detail)};
}

CMatrix random_unitary(int n, std::mt19937_64& gen) {
  std::normal_distribution<double> g;
  CMatrix z(n, n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) z(i, j) = cdouble(g(gen), g(gen));
  Eigen::HouseholderQR<CMatrix> qr(z);
  CMatrix q = qr.householderQ();
  const CMatrix r = qr.matrixQR();
  for (int j = 0; j < n; ++j) q.col(j) *= std::polar(1.0, std::arg(r(j, j)));
  return q;
}

// U diag(s) V with singular values in [lo, hi].
CMatrix random_matrix(int n, double lo, double hi, std::mt19937_64& gen) {
  std::uniform_real_distribution<double> u(lo, hi);
  Eigen::VectorXd s(n);
  for (int i = 0; i < n; ++i) s(i) = u(gen);
  return random_unitary(n, gen) * s.cast<cdouble>().asDiagonal() * random_unitary(n, gen);
}

EmissionSpectrum ballistic_spectrum(double gamma, double lo, double hi, std::size_t n,
                                    const SpectrumOptions& opts) {
  const auto grid = uniform_grid(lo, hi, n);
  return emission_spectrum(kBallistic, pt_partner(kBallistic), gamma, grid, opts);
}

CheckResult involutions() {
  std::mt19937_64 gen(101);
  double parity = 0.0, pt = 0.0, blockwise = 0.0;
  for (int k = 0; k < 50; ++k) {
    const ScatteringMatrix s(random_matrix(2 + 2 * (k % 3), 0.5, 2.0, gen));
    parity = std::max(parity, max_abs_diff(parity_transform(parity_transform(s)), s));
    pt = std::max(pt, max_abs_diff(pt_transform(pt_transform(s)), s));
    blockwise = std::max(blockwise, max_abs_diff(pt_transform_blockwise(s).s, pt_transform(s)));
  }
  CheckResult r = below("symmetry_involutions", std::max({parity, pt, blockwise}), 1e-12);
  r.detail = "parity=" + format_number(parity) + " pt=" + format_number(pt) +
             " blockwise=" + format_number(blockwise);
  return r;
}

CheckResult mirror_closed_form() {
  double worst = 0.0;
  for (double e : {0.7, 1.3, 2.9})
    for (double g : {0.05, 0.4, 1.0}) {
      const auto s = evaluate(kSlab, e);
      const auto numeric = attach_mirror(s, MirrorSpec{g}, Side::left);
      const CMatrix closed = reference::mirror_attached_left(s.r(), s.tp(), s.t(), s.rp(), g);
      worst = std::max(worst, max_abs_diff(numeric, ScatteringMatrix(closed)));
    }
  return below("mirror_closed_form", worst, 1e-12);
}

CheckResult total_s_regression() {
  std::mt19937_64 gen(202);
  std::uniform_real_distribution<double> ue(0.2, 5.0), ug(1e-3, 1.0);
  double worst = 0.0;
  for (int k = 0; k < 100; ++k) {
    const double e = ue(gen), g = ug(gen);
    const auto ns = build_noise_system(kBallistic, pt_partner(kBallistic), g, e);
    const auto closed = reference::ballistic_total_s(evaluate(kBallistic, e).t()(0, 0), g);
    worst = std::max(worst, max_abs_diff(ns.s_total, ScatteringMatrix(closed)));
  }
  return below("total_s_regression", worst, 1e-10);
}

std::vector<CheckResult> emission_regressions(const SpectrumOptions& opts) {
  double intensities = 0.0, difference = 0.0, most_negative = 0.0;
  for (double g : {0.5, 0.1, 0.01}) {
    for (const auto& s : ballistic_spectrum(g, 1.0, 2.2, 600, opts).samples) {
      if (s.gap) {
        intensities = std::numeric_limits<double>::infinity();
        continue;
      }
      const auto ref = reference::ballistic_emission(evaluate(kBallistic, s.energy).t()(0, 0), g);
      intensities = std::max({intensities, rel(s.i_left, ref.i_left), rel(s.i_right, ref.i_right)});
      difference = std::max(difference, rel(s.delta_i, ref.delta_i));
      most_negative = std::min(most_negative, s.delta_i);
    }
  }
  CheckResult asym = below("asymmetry_identity", difference, 1e-8);
  asym.passed = asym.passed && most_negative >= -1e-12;
  asym.detail = "min_delta_i=" + format_number(most_negative);
  return {below("eq20_regression", intensities, 1e-8), asym};
}

CheckResult quantization_roots(int jobs) {
  RootSearchOptions opts;
  opts.jobs = jobs;
  const auto roots = find_bound_states(kBallistic, 0.1, 5.0, 4.9e-4, opts);
  const std::vector<double> expected{pi / 2, pi, 3 * pi / 2};
  if (roots.size() != expected.size())
    return {"quantization_roots", false, std::numeric_limits<double>::infinity(), 1e-9,
            "found " + std::to_string(roots.size()) + " roots"};
  double worst = 0.0;
  for (std::size_t i = 0; i < roots.size(); ++i)
    worst = std::max(worst, std::abs(roots[i].energy - expected[i]));
  return below("quantization_roots", worst, 1e-9);
}

CheckResult microreversibility_all() {
  double worst = 0.0;
  for (const auto* m : {&kBallistic, &kSlab, &kMultimode})
    for (double e : {0.4, 1.1, 2.7}) worst = std::max(worst, microreversibility_residual(*m, e));
  return below("microreversibility", worst, 1e-10);
}

CheckResult pt_total() {
  double worst = 0.0;
  for (const auto* m : {&kBallistic, &kSlab, &kMultimode})
    for (double e : {0.4, 1.1, 2.7}) {
      const auto ns = build_noise_system(*m, pt_partner(*m), 0.2, e);
      worst = std::max(worst, pt_residual(ns.s_total));
    }
  return below("pt_total_scattering", worst, 1e-10);
}

CheckResult positivity(const std::vector<RegionModel>& models, const std::string& name) {
  std::mt19937_64 gen(303);
  std::uniform_real_distribution<double> ue(0.1, 5.0), ug(1e-3, 1.0);
  double worst = std::numeric_limits<double>::infinity();
  for (int k = 0; k < 300; ++k) {
    const auto& m = models[k % models.size()];
    try {
      const auto ns = build_noise_system(m, pt_partner(m), ug(gen), ue(gen));
      worst = std::min({worst, min_hermitian_eigenvalue(ns.qq_left),
                        min_hermitian_eigenvalue(ns.qq_right)});
    } catch (const NearResonance&) {
    }
  }
  return {name, worst >= -1e-12, worst, -1e-12, "min eigenvalue"};
}

CheckResult hermitian_null(const SpectrumOptions& opts) {
  const auto m = RegionModel::ballistic(1.0, 0.0, 1.0);
  const auto grid = uniform_grid(1.0, 2.2, 600);
  double worst = 0.0;
  for (const auto& s : emission_spectrum(m, pt_partner(m), 0.1, grid, opts).samples)
    worst = std::max({worst, std::abs(s.i_left), std::abs(s.i_right), std::abs(s.i_total)});
  return below("hermitian_null", worst, 1e-12);
}

CheckResult linewidth(const SpectrumOptions& opts) {
  const double g = 1e-3, w = g / 2.0;
  const auto fit = lorentzian_fit(ballistic_spectrum(g, pi / 2 - 20 * w, pi / 2 + 20 * w, 4001, opts),
                                  pi / 2);
  const double width_err = rel(fit.fwhm, w);
  CheckResult r = below("lorentzian_linewidth", width_err, 1e-2);
  r.passed = r.passed && std::abs(fit.e0 - pi / 2) < 1e-6;
  r.detail = "fwhm=" + format_number(fit.fwhm) + " e0-pi/2=" + format_number(fit.e0 - pi / 2);
  return r;
}

CheckResult integrated_output(const SpectrumOptions& opts) {
  const double expected = reference::ballistic_integrated_output(std::exp(-0.05 * pi / 2), 2.0);
  double worst = 0.0;
  std::string detail;
  for (double g : {1e-2, 1e-3}) {
    const double v = total_intensity(ballistic_spectrum(g, pi / 4, 3 * pi / 4, 100001, opts));
    worst = std::max(worst, rel(v, expected));
    detail += "I(" + format_number(g) + ")=" + format_number(v) + " ";
  }
  return below("integrated_output", worst, 2e-2, detail + "expected=" + format_number(expected));
}

CheckResult gamma_scaling(const SpectrumOptions& opts) {
  auto occupation = [&](double g) {
    const auto grid = uniform_grid(pi / 4, 3 * pi / 4, 50001);
    return integrated_interface_occupation(
        interface_spectrum(kBallistic, pt_partner(kBallistic), g, grid, opts));
  };
  const double ratio = occupation(1e-3) / occupation(1e-2);
  return {"internal_gamma_scaling", ratio >= 9.5 && ratio <= 10.5, std::abs(ratio - 10.0), 0.5,
          "ratio=" + format_number(ratio)};
}

CheckResult backscatter(const NoiseOptions& noise) {
  const auto roots = find_bound_states(kSlab, 0.2, 4.0, 3.8e-4);
  double worst = roots.empty() ? std::numeric_limits<double>::infinity() : 0.0;
  for (const auto& b : roots) {
    const auto ns = build_noise_system(kSlab, pt_partner(kSlab), 1e-3, b.energy, noise);
    const auto p = emitted_intensities(ns);
    worst = std::max(worst, std::abs(backscatter_peak_intensity(ns) / (0.5 * (p.left + p.right)) - 1.0));
  }
  return below("backscatter_formula", worst, 5e-2);
}

CheckResult detuning(const SpectrumOptions& opts) {
  const auto grid = uniform_grid(pi / 2 - 0.05, pi / 2 + 0.05, 20001);
  auto asymmetry_at_peak = [&](const RegionModel& partner) {
    const auto s = emission_spectrum(kBallistic, partner, 1e-3, grid, opts);
    const auto it = std::max_element(s.samples.begin(), s.samples.end(), [](const auto& a, const auto& b) {
      return a.i_total < b.i_total;
    });
    return std::abs(it->delta_i) / it->i_total;
  };
  const double ratio =
      asymmetry_at_peak(detuned_partner(kBallistic, 0.1)) / asymmetry_at_peak(pt_partner(kBallistic));
  return {"detuning_asymmetry", ratio >= 10.0, ratio, 10.0, "normalized |dI|/I ratio"};
}

std::vector<CheckResult> config_checks(const RunConfig& c, const NoiseOptions& noise) {
  const double e = 0.5 * (c.grid.e_min + c.grid.e_max);
  const auto partner = c.partner_model();
  std::vector<CheckResult> out;
  out.push_back(below("config_microreversibility", microreversibility_residual(c.model, e), 1e-10));
  try {
    const auto ns = build_noise_system(c.model, partner, c.gamma, e, noise);
    const double q = std::min(min_hermitian_eigenvalue(ns.qq_left), min_hermitian_eigenvalue(ns.qq_right));
    out.push_back({"config_positivity", q >= -1e-12, q, -1e-12, "min eigenvalue"});
    if (c.partner.kind == PartnerSpec::Kind::pt)
      out.push_back(below("config_pt_total", pt_residual(ns.s_total), 1e-10));
  } catch (const Error& err) {
    out.push_back({"config_noise_system", false, std::numeric_limits<double>::infinity(), 0.0, err.what()});
  }
  return out;
}

}  // namespace

std::vector<CheckResult> run_checks(const RunConfig* config, int jobs, bool inject_fault) {
  SpectrumOptions opts;
  opts.jobs = jobs;
  opts.noise.flip_amplifier_noise_sign = inject_fault;

  using Check = std::pair<std::string, std::function<std::vector<CheckResult>()>>;
  std::vector<Check> table = {
      {"symmetry_involutions", [] { return std::vector{involutions()}; }},
      {"mirror_closed_form", [] { return std::vector{mirror_closed_form()}; }},
      {"total_s_regression", [] { return std::vector{total_s_regression()}; }},
      {"eq20_regression", [&] { return emission_regressions(opts); }},
      {"quantization_roots", [&] { return std::vector{quantization_roots(jobs)}; }},
      {"microreversibility", [] { return std::vector{microreversibility_all()}; }},
      {"pt_total_scattering", [] { return std::vector{pt_total()}; }},
      {"fluctuation_positivity",
       [] { return std::vector{positivity({kBallistic, kSlab, kMultimode}, "fluctuation_positivity")}; }},
      {"hermitian_null", [&] { return std::vector{hermitian_null(opts)}; }},
      {"lorentzian_linewidth", [&] { return std::vector{linewidth(opts)}; }},
      {"integrated_output", [&] { return std::vector{integrated_output(opts)}; }},
      {"internal_gamma_scaling", [&] { return std::vector{gamma_scaling(opts)}; }},
      {"backscatter_formula", [&] { return std::vector{backscatter(opts.noise)}; }},
      {"detuning_asymmetry", [&] { return std::vector{detuning(opts)}; }},
  };
  if (config) table.emplace_back("config_checks", [&] { return config_checks(*config, opts.noise); });

  std::vector<CheckResult> results;
  for (auto& [name, check] : table) {
    try {
      for (auto& r : check()) results.push_back(std::move(r));
    } catch (const std::exception& e) {
      results.push_back({name, false, std::numeric_limits<double>::infinity(), 0.0, e.what()});
    }
  }
  return results;
}

}  // namespace ptnoise::cli
