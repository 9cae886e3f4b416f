#pragma once

#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "ptnoise/spectrum.hpp"
#include "ptnoise_cli/config.hpp"

namespace ptnoise::cli {

inline constexpr int kExitOk = 0;
inline constexpr int kExitFailure = 1;
inline constexpr int kExitConfig = 2;
inline constexpr int kExitUnderResolved = 3;

struct CommandOptions {
  std::string config_path;  // empty: built-in default config
  std::string out_path;
  std::optional<double> gamma;
  std::optional<double> epsilon;
  int jobs = 1;
  bool inject_fault = false;
};

// Loads the config (or the default), applies command-line overrides and
// validates. Throws ConfigError.
RunConfig resolve_config(const CommandOptions& options);

// 15 significant digits, "nan" for gaps, independent of the global locale.
std::string format_number(double v);

void write_spectrum_csv(std::ostream& out, const EmissionSpectrum& spectrum);

int cmd_spectrum(const CommandOptions& options, std::ostream& out, std::ostream& err);
int cmd_roots(const CommandOptions& options, std::ostream& out, std::ostream& err);
int cmd_verify(const CommandOptions& options, std::ostream& out, std::ostream& err);
int cmd_asymmetry(const CommandOptions& options, std::ostream& out, std::ostream& err);

// Full command line (argv[0] included). Maps errors to exit codes.
int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

struct CheckResult {
  std::string name;
  bool passed = false;
  double residual = 0.0;
  double tolerance = 0.0;
  std::string detail;
};

// The invariant suite behind `verify`. A non-null config adds checks on
// its model.
std::vector<CheckResult> run_checks(const RunConfig* config, int jobs, bool inject_fault);

}  // namespace ptnoise::cli
