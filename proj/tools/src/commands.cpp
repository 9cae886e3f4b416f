#include "ptnoise_cli/commands.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <limits>

#include "ptnoise/errors.hpp"
#include "ptnoise/quantize.hpp"

namespace ptnoise::cli {

using nlohmann::json;

namespace {

json number_or_null(double v) { return std::isfinite(v) ? json(v) : json(nullptr); }

std::ofstream open_output(const std::string& path) {
  std::ofstream f(path, std::ios::binary);
  if (!f) throw ConfigError("outputs: cannot write " + path);
  return f;
}

void write_json_file(const std::string& path, const json& j) {
  auto f = open_output(path);
  f << j.dump(2) << '\n';
}

std::string sidecar_path(const std::string& csv_path, const RunConfig& config) {
  if (!config.outputs.json.empty()) return config.outputs.json;
  if (csv_path.empty()) return {};
  return std::filesystem::path(csv_path).replace_extension(".json").string();
}

const SpectrumSample* strongest_sample(const EmissionSpectrum& s) {
  const SpectrumSample* best = nullptr;
  for (const auto& x : s.samples)
    if (!x.gap && (!best || x.i_total > best->i_total)) best = &x;
  return best;
}

std::size_t gap_count(const EmissionSpectrum& s) {
  return static_cast<std::size_t>(
      std::count_if(s.samples.begin(), s.samples.end(), [](const auto& x) { return x.gap; }));
}

// Peak, linewidth and integrated output of a spectrum. under_resolved is
// set instead of throwing so the caller can still write its outputs.
struct SpectrumSummary {
  json results;
  bool under_resolved = false;
};

SpectrumSummary summarize(const EmissionSpectrum& spectrum, std::ostream& err) {
  SpectrumSummary s;
  json& r = s.results;
  json warnings = json::array();
  r["gamma"] = spectrum.gamma;
  r["model"] = spectrum.model;
  r["rows"] = spectrum.samples.size();
  r["gaps"] = gap_count(spectrum);
  r["peak"] = nullptr;
  r["e0"] = nullptr;
  r["fwhm"] = nullptr;
  r["i_tot"] = nullptr;

  const SpectrumSample* peak = strongest_sample(spectrum);
  if (peak) r["peak"] = {{"energy", peak->energy}, {"i_total", peak->i_total}};
  if (peak && peak->i_total > 1e-12) {
    try {
      const auto fit = lorentzian_fit(spectrum, peak->energy);
      r["e0"] = fit.e0;
      r["fwhm"] = fit.fwhm;
    } catch (const FitFailed& e) {
      warnings.push_back(std::string("lorentzian fit failed: ") + e.what());
    }
  }
  try {
    r["i_tot"] = number_or_null(total_intensity(spectrum));
  } catch (const UnderResolved& e) {
    warnings.push_back(std::string("under-resolved: ") + e.what());
    s.under_resolved = true;
  }
  for (const auto& w : warnings) err << "warning: " << w.get<std::string>() << '\n';
  r["warnings"] = warnings;
  return s;
}

EmissionSpectrum run_spectrum(const RunConfig& config, const RegionModel& partner, int jobs) {
  const auto grid = uniform_grid(config.grid.e_min, config.grid.e_max, config.grid.n_points);
  SpectrumOptions opts;
  opts.jobs = jobs;
  return emission_spectrum(config.model, partner, config.gamma, grid, opts);
}

// Writes the CSV to the resolved path (or `out`) and returns the path used.
std::string emit_csv(const CommandOptions& options, const RunConfig& config,
                     const EmissionSpectrum& spectrum, std::ostream& out) {
  const std::string path = !options.out_path.empty() ? options.out_path : config.outputs.csv;
  if (path.empty()) {
    write_spectrum_csv(out, spectrum);
  } else {
    auto f = open_output(path);
    write_spectrum_csv(f, spectrum);
  }
  return path;
}

// |dI| / I at the strongest sample, and the largest |dI| on the grid.
std::pair<double, double> asymmetry_measures(const EmissionSpectrum& s) {
  const SpectrumSample* peak = strongest_sample(s);
  double max_abs = 0.0;
  for (const auto& x : s.samples)
    if (!x.gap) max_abs = std::max(max_abs, std::abs(x.delta_i));
  const double normalized = (peak && peak->i_total > 0.0)
                                ? std::abs(peak->delta_i) / peak->i_total
                                : std::numeric_limits<double>::quiet_NaN();
  return {normalized, max_abs};
}

}  // namespace

RunConfig resolve_config(const CommandOptions& options) {
  RunConfig c = options.config_path.empty() ? RunConfig{} : load_config(options.config_path);
  if (options.gamma) c.gamma = *options.gamma;
  if (options.jobs < 1) throw ConfigError("--jobs: must be at least 1");
  c.validate();
  return c;
}

std::string format_number(double v) {
  if (std::isnan(v)) return "nan";
  char buf[64];
  const auto res = std::to_chars(buf, buf + sizeof buf, v, std::chars_format::general, 15);
  return std::string(buf, res.ptr);
}

void write_spectrum_csv(std::ostream& out, const EmissionSpectrum& spectrum) {
  std::string text = "E,I_left,I_right,I_total,Delta_I,flag\n";
  for (const auto& s : spectrum.samples) {
    for (double v : {s.energy, s.i_left, s.i_right, s.i_total, s.delta_i}) {
      text += format_number(v);
      text += ',';
    }
    text += s.gap ? "gap\n" : "ok\n";
  }
  out.write(text.data(), static_cast<std::streamsize>(text.size()));
}

int cmd_spectrum(const CommandOptions& options, std::ostream& out, std::ostream& err) {
  const RunConfig config = resolve_config(options);
  const auto spectrum = run_spectrum(config, config.partner_model(), options.jobs);
  const std::string csv = emit_csv(options, config, spectrum, out);
  auto summary = summarize(spectrum, err);
  if (const auto path = sidecar_path(csv, config); !path.empty())
    write_json_file(path, {{"config", to_json(config)}, {"results", summary.results}});
  if (summary.under_resolved) {
    err << "error: spectrum under-resolved; refine grid.n_points or narrow the range\n";
    return kExitUnderResolved;
  }
  return kExitOk;
}

int cmd_roots(const CommandOptions& options, std::ostream& out, std::ostream&) {
  const RunConfig config = resolve_config(options);
  const double range = config.grid.e_max - config.grid.e_min;
  const double intervals = std::max(1e4, static_cast<double>(config.grid.n_points - 1));
  RootSearchOptions opts;
  opts.jobs = options.jobs;
  const auto roots =
      find_bound_states(config.model, config.grid.e_min, config.grid.e_max, range / intervals, opts);

  json list = json::array();
  for (const auto& b : roots) {
    out << format_number(b.energy) << ' ' << format_number(b.residual) << '\n';
    list.push_back({{"energy", b.energy},
                    {"residual", b.residual},
                    {"bracket", {b.e_lo, b.e_hi}},
                    {"iterations", b.iterations}});
  }
  const std::string path = !options.out_path.empty() ? options.out_path : config.outputs.json;
  if (!path.empty()) write_json_file(path, list);
  return kExitOk;
}

int cmd_asymmetry(const CommandOptions& options, std::ostream& out, std::ostream& err) {
  RunConfig config = resolve_config(options);
  if (options.epsilon) config.partner = {PartnerSpec::Kind::detuned, *options.epsilon};
  if (config.partner.kind != PartnerSpec::Kind::detuned)
    throw ConfigError("partner: asymmetry needs a detuned partner or --epsilon");
  config.validate();

  const auto detuned = run_spectrum(config, config.partner_model(), options.jobs);
  const auto exact = run_spectrum(config, pt_partner(config.model), options.jobs);
  const std::string csv = emit_csv(options, config, detuned, out);

  const auto [asym_detuned, max_detuned] = asymmetry_measures(detuned);
  const auto [asym_exact, max_exact] = asymmetry_measures(exact);
  const double ratio = asym_detuned / asym_exact;
  std::ostream& report = csv.empty() ? err : out;
  report << "epsilon " << format_number(config.partner.epsilon) << '\n'
         << "peak_asymmetry " << format_number(asym_detuned) << '\n'
         << "pt_peak_asymmetry " << format_number(asym_exact) << '\n'
         << "asymmetry_ratio " << format_number(ratio) << '\n'
         << "max_abs_delta_i " << format_number(max_detuned) << '\n'
         << "pt_max_abs_delta_i " << format_number(max_exact) << '\n';

  if (const auto path = sidecar_path(csv, config); !path.empty()) {
    json results = {{"gamma", config.gamma},
                    {"epsilon", config.partner.epsilon},
                    {"peak_asymmetry", number_or_null(asym_detuned)},
                    {"pt_peak_asymmetry", number_or_null(asym_exact)},
                    {"asymmetry_ratio", number_or_null(ratio)},
                    {"max_abs_delta_i", max_detuned},
                    {"pt_max_abs_delta_i", max_exact}};
    write_json_file(path, {{"config", to_json(config)}, {"results", results}});
  }
  return kExitOk;
}

int cmd_verify(const CommandOptions& options, std::ostream& out, std::ostream&) {
  std::optional<RunConfig> config;
  if (!options.config_path.empty() || options.gamma) config = resolve_config(options);
  const auto checks = run_checks(config ? &*config : nullptr, options.jobs, options.inject_fault);
  bool all = true;
  for (const auto& c : checks) {
    all = all && c.passed;
    std::string name = c.name;
    name.resize(std::max<std::size_t>(name.size(), 30), ' ');
    out << name << (c.passed ? "PASS" : "FAIL") << "  residual=" << format_number(c.residual)
        << " tol=" << format_number(c.tolerance);
    if (!c.detail.empty()) out << "  " << c.detail;
    out << '\n';
  }
  out << (all ? "all checks passed" : "verification FAILED") << '\n';
  return all ? kExitOk : kExitFailure;
}

}  // namespace ptnoise::cli
