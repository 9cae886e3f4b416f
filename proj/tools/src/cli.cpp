#include <cmath>
#include <iostream>
#include <limits>

#include "CLI11.hpp"
#include "ptnoise/errors.hpp"
#include "ptnoise_cli/commands.hpp"

namespace ptnoise::cli {

namespace {

void add_common(CLI::App* sub, CommandOptions& o, double& gamma) {
  sub->add_option("--config", o.config_path, "JSON run configuration")->check(CLI::ExistingFile);
  sub->add_option("--out", o.out_path, "Output path (overrides outputs in the config)");
  sub->add_option("--gamma", gamma, "Mirror transmission override");
  sub->add_option("--jobs", o.jobs, "Worker threads for grid evaluation")->default_val(1);
}

}  // namespace

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"PT-symmetric scattering, bound states and self-sustained emission", "ptnoise"};
  app.require_subcommand(1);

  CommandOptions o;
  double gamma = std::numeric_limits<double>::quiet_NaN();
  double epsilon = std::numeric_limits<double>::quiet_NaN();

  auto* spectrum = app.add_subcommand("spectrum", "Emission spectrum sweep to CSV");
  auto* roots = app.add_subcommand("roots", "Real-energy bound states");
  auto* verify = app.add_subcommand("verify", "Run the invariant suite");
  auto* asymmetry = app.add_subcommand("asymmetry", "Spectrum with a detuned partner");
  for (auto* sub : {spectrum, roots, verify, asymmetry}) add_common(sub, o, gamma);
  asymmetry->add_option("--epsilon", epsilon, "Relative detuning of the partner gain");
  verify->add_flag("--inject-fault", o.inject_fault, "Flip the amplifier noise sign");

  std::vector<std::string> reversed(args.rbegin(), args.rend() - 1);
  try {
    app.parse(reversed);
  } catch (const CLI::ParseError& e) {
    return app.exit(e, out, err) == 0 ? kExitOk : kExitConfig;
  }
  if (!std::isnan(gamma)) o.gamma = gamma;
  if (!std::isnan(epsilon)) o.epsilon = epsilon;

  try {
    if (spectrum->parsed()) return cmd_spectrum(o, out, err);
    if (roots->parsed()) return cmd_roots(o, out, err);
    if (verify->parsed()) return cmd_verify(o, out, err);
    return cmd_asymmetry(o, out, err);
  } catch (const ConfigError& e) {
    err << "config error: " << e.what() << '\n';
    return kExitConfig;
  } catch (const InvalidParam& e) {
    err << "config error: " << e.what() << '\n';
    return kExitConfig;
  } catch (const UnderResolved& e) {
    err << "error: " << e.what() << '\n';
    return kExitUnderResolved;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return kExitFailure;
  }
}

}  // namespace ptnoise::cli
