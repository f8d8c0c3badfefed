#include "mrc/commands.hpp"

#include <fstream>
#include <functional>
#include <iostream>

#include "mrc/analysis.hpp"
#include "mrc/config.hpp"
#include "mrc/csv.hpp"
#include "mrc/plot.hpp"
#include "mrc/sweep.hpp"

namespace mrc::cli {

namespace {

// Runs a command body and converts every failure into an exit code.
int guarded(std::ostream& err, const std::function<void()>& body) {
  try {
    body();
    return kExitOk;
  } catch (const Error& e) {
    err << "error: " << e.what() << '\n';
    return exit_code_for(e.category());
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return kExitNumerical;
  }
}

void emit(const CsvTable& table, const std::optional<std::filesystem::path>& path,
          std::ostream& out) {
  if (!path) {
    write_csv(out, table);
    return;
  }
  std::ofstream file(*path);
  if (!file) throw Error(ErrorCode::ConfigParse, "cannot write " + path->string());
  write_csv(file, table);
}

std::ofstream open_plot(const std::filesystem::path& path) {
  std::ofstream file(path);
  if (!file) throw Error(ErrorCode::ConfigParse, "cannot write " + path.string());
  return file;
}

std::size_t drive_index(const std::optional<std::size_t>& override, const ArrayConfig& cfg) {
  if (!override) return cfg.drive;
  if (*override < 1 || *override > cfg.coils.size()) {
    throw Error(ErrorCode::InvalidArgument, "--drive " + std::to_string(*override) +
                                                " outside array of " +
                                                std::to_string(cfg.coils.size()));
  }
  return *override - 1;
}

}  // namespace

int exit_code_for(ErrorCategory category) {
  switch (category) {
    case ErrorCategory::Config: return kExitConfig;
    case ErrorCategory::Validation: return kExitValidation;
    case ErrorCategory::Numerical: return kExitNumerical;
  }
  return kExitNumerical;
}

std::filesystem::path default_plot_path(const std::filesystem::path& config,
                                        const std::optional<std::filesystem::path>& out,
                                        const std::string& suffix) {
  const std::filesystem::path& anchor = out ? *out : config;
  return anchor.parent_path() / (anchor.stem().string() + "_" + suffix + ".svg");
}

int cmd_modes(const ModesOptions& options, std::ostream& out, std::ostream& err) {
  return guarded(err, [&] {
    const ArrayConfig cfg = load_config(options.config);
    const ValidatedArray array = cfg.build();
    const ModeSet modes = solve_modes(array);
    emit(modes_table(modes, classify_modes(modes, options.node_tolerance)), options.out, out);
  });
}

int cmd_sweep(const SweepOptions& options, std::ostream& out, std::ostream& err) {
  return guarded(err, [&] {
    const ArrayConfig cfg = load_config(options.config);
    const ValidatedArray array = cfg.build();
    const std::size_t drive = drive_index(options.drive, cfg);
    const ModeSet modes = solve_modes(array);
    const FrequencyGrid grid = cfg.sweep ? *cfg.sweep : default_band(modes, 2000);

    PeakSearchOptions search;
    search.threads = options.threads;
    const PeakList peaks = match_peaks_to_modes(locate_peaks(array, drive, grid, search), modes, drive);
    const SweepResult result = sweep(array, {drive, grid}, options.threads);
    emit(sweep_table(result, &peaks, &modes), options.out, out);

    if (options.plot || options.plot_path) {
      const auto path = options.plot_path ? *options.plot_path
                                          : default_plot_path(options.config, options.out, "sweep");
      auto file = open_plot(path);
      write_spectrum_svg(file, result, &peaks, &modes,
                         cfg.name + ", drive element " + std::to_string(drive + 1));
      err << "plot written to " << path.string() << '\n';
    }
  });
}

int cmd_two_coil(const TwoCoilOptions& options, std::ostream& out, std::ostream& err) {
  return guarded(err, [&] {
    const double l = options.inductance_uh * 1e-6;
    const double c = options.capacitance_pf * 1e-12;
    if (options.k && options.k_max) {
      throw Error(ErrorCode::ConfigParse, "give either --k or --k-max, not both");
    }
    if (options.k_max) {
      emit(dispersion_table(dispersion_curve(l, c, options.resistance_ohm, *options.k_max,
                                             options.steps, options.dip_factor)),
           options.out, out);
      return;
    }
    const double k = options.k.value_or(0.14);
    emit(split_table(k, identical_coupled_frequencies(l, c, k)), options.out, out);
  });
}

int cmd_fit_k(const FitOptions& options, std::ostream& out, std::ostream& err) {
  return guarded(err, [&] {
    const ArrayConfig cfg = load_config(options.config);
    if (options.observed_mhz.empty()) {
      throw Error(ErrorCode::ConfigParse, "--observed needs at least one frequency");
    }
    if (options.observed_mhz.size() > cfg.coils.size()) {
      throw Error(ErrorCode::ConfigParse,
                  "--observed lists " + std::to_string(options.observed_mhz.size()) +
                      " frequencies but the array has " + std::to_string(cfg.coils.size()) +
                      " coils");
    }
    cfg.build();
    std::vector<double> observed;
    for (double f : options.observed_mhz) observed.push_back(f * 1e6);
    try {
      emit(fit_table(fit_coupling(observed, cfg.coupling_template(), options.k_low, options.k_high)),
           options.out, out);
    } catch (const NoBracketError& e) {
      err << "residual curve (k, residual):\n";
      for (const auto& [k, r] : e.residual_curve()) {
        err << "  " << format_number(k) << ", " << format_number(r) << '\n';
      }
      throw;
    }
  });
}

int cmd_damping(const DampingOptions& options, std::ostream& out, std::ostream& err) {
  return guarded(err, [&] {
    const ArrayConfig cfg = load_config(options.config);
    if (options.resistances.empty()) throw Error(ErrorCode::ConfigParse, "--r-list is empty");
    const ValidatedArray array = cfg.build();
    const std::size_t drive = drive_index(options.drive, cfg);
    const DampingStudy study = damping_study(array, options.resistances, drive);
    emit(damping_table(study), options.out, out);

    if (options.plot || options.plot_path) {
      const auto path = options.plot_path
                            ? *options.plot_path
                            : default_plot_path(options.config, options.out, "damping");
      auto file = open_plot(path);
      write_damping_svg(file, study, cfg.name + ", peak vs eigen-frequency deviation");
      err << "plot written to " << path.string() << '\n';
    }
  });
}

}  // namespace mrc::cli
