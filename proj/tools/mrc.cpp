// mrc: resonant modes and impedance spectra of magnetically coupled coil arrays.

#include <iostream>

#include <CLI11.hpp>

#include "mrc/commands.hpp"

namespace cli = mrc::cli;

int main(int argc, char** argv) {
  CLI::App app{"Resonant modes and impedance spectra of magnetically coupled LC coil arrays"};
  app.require_subcommand(1);

  cli::ModesOptions modes;
  auto* modes_cmd = app.add_subcommand("modes", "Eigen-frequencies and voltage mode shapes");
  modes_cmd->add_option("config", modes.config, "Array config (JSON)")->required();
  modes_cmd->add_option("-o,--out", modes.out, "Write CSV here instead of stdout");
  modes_cmd->add_option("--node-tol", modes.node_tolerance,
                        "Node threshold relative to the largest component")
      ->check(CLI::Range(1e-15, 0.1));

  cli::SweepOptions sweep;
  auto* sweep_cmd = app.add_subcommand("sweep", "Driven-element impedance spectrum with peak annotations");
  sweep_cmd->add_option("config", sweep.config, "Array config (JSON)")->required();
  sweep_cmd->add_option("-d,--drive", sweep.drive, "Driven element (1-based), overrides the config");
  sweep_cmd->add_option("-o,--out", sweep.out, "Write CSV here instead of stdout");
  sweep_cmd->add_flag("--plot", sweep.plot, "Also write an SVG plot");
  sweep_cmd->add_option("--plot-file", sweep.plot_path, "SVG plot path");
  sweep_cmd->add_option("-j,--threads", sweep.threads, "Worker threads (0 = automatic)");

  cli::TwoCoilOptions two;
  auto configure_two_coil = [&two](CLI::App* cmd) {
    cmd->add_option("--L-uH", two.inductance_uh, "Coil inductance (uH)")->capture_default_str();
    cmd->add_option("--C-pF", two.capacitance_pf, "Coil capacitance (pF)")->capture_default_str();
    cmd->add_option("--R-ohm", two.resistance_ohm, "Coil resistance (ohm)")->capture_default_str();
    cmd->add_option("--k-max", two.k_max, "Dispersion curve from k = 0 to this value");
    cmd->add_option("--steps", two.steps, "Samples on the dispersion curve")->capture_default_str();
    cmd->add_option("--dip", two.dip_factor, "Dip fraction that makes two peaks resolvable")
        ->capture_default_str();
    cmd->add_option("-o,--out", two.out, "Write CSV here instead of stdout");
  };
  auto* two_cmd = app.add_subcommand("two-coil", "Split resonances of two identical coupled coils");
  configure_two_coil(two_cmd);
  two_cmd->add_option("-k,--k", two.k, "Coupling coefficient (default 0.14)");
  auto* disp_cmd = app.add_subcommand("dispersion", "Dispersion curve with resolvability flags");
  configure_two_coil(disp_cmd);

  cli::FitOptions fit;
  auto* fit_cmd = app.add_subcommand("fit-k", "Fit a single coupling coefficient to resonances");
  fit_cmd->add_option("config", fit.config, "Array config (JSON)")->required();
  fit_cmd->add_option("--observed", fit.observed_mhz, "Observed resonances (MHz), comma separated")
      ->delimiter(',')
      ->required();
  fit_cmd->add_option("--k-low", fit.k_low, "Lower end of the k bracket")->capture_default_str();
  fit_cmd->add_option("--k-high", fit.k_high, "Upper end of the k bracket")->capture_default_str();
  fit_cmd->add_option("-o,--out", fit.out, "Write CSV here instead of stdout");

  cli::DampingOptions damping;
  auto* damping_cmd = app.add_subcommand("damping", "Peak/eigen-frequency disparity against resistance");
  damping_cmd->add_option("config", damping.config, "Array config (JSON)")->required();
  damping_cmd->add_option("--r-list", damping.resistances, "Resistances (ohm), comma separated")
      ->delimiter(',')
      ->required();
  damping_cmd->add_option("-d,--drive", damping.drive, "Driven element (1-based)");
  damping_cmd->add_option("-o,--out", damping.out, "Write CSV here instead of stdout");
  damping_cmd->add_flag("--plot", damping.plot, "Also write an SVG plot");
  damping_cmd->add_option("--plot-file", damping.plot_path, "SVG plot path");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : cli::kExitConfig;
  }

  if (*modes_cmd) return cli::cmd_modes(modes, std::cout, std::cerr);
  if (*sweep_cmd) return cli::cmd_sweep(sweep, std::cout, std::cerr);
  if (*two_cmd) return cli::cmd_two_coil(two, std::cout, std::cerr);
  if (*disp_cmd) {
    if (!two.k_max) two.k_max = 0.4;
    return cli::cmd_two_coil(two, std::cout, std::cerr);
  }
  if (*fit_cmd) return cli::cmd_fit_k(fit, std::cout, std::cerr);
  if (*damping_cmd) return cli::cmd_damping(damping, std::cout, std::cerr);
  return cli::kExitConfig;
}
