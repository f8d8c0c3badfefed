#pragma once

#include <cstddef>
#include <filesystem>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "mrc/eigenmodes.hpp"
#include "mrc/error.hpp"
#include "mrc/two_coil.hpp"

namespace mrc::cli {

// Process exit codes.
inline constexpr int kExitOk = 0;
inline constexpr int kExitConfig = 2;
inline constexpr int kExitValidation = 3;
inline constexpr int kExitNumerical = 4;

int exit_code_for(ErrorCategory category);

struct ModesOptions {
  std::filesystem::path config;
  std::optional<std::filesystem::path> out;
  double node_tolerance = kDefaultNodeTolerance;
};

struct SweepOptions {
  std::filesystem::path config;
  std::optional<std::size_t> drive;  // 1-based override
  std::optional<std::filesystem::path> out;
  bool plot = false;
  std::optional<std::filesystem::path> plot_path;
  unsigned threads = 0;
};

struct TwoCoilOptions {
  double inductance_uh = 10.0;
  double capacitance_pf = 150.0;
  double resistance_ohm = 10.0;
  std::optional<double> k;  // scalar mode; default 0.14 when no range given
  std::optional<double> k_max;
  std::size_t steps = 41;
  double dip_factor = kDefaultDipFactor;
  std::optional<std::filesystem::path> out;
};

struct FitOptions {
  std::filesystem::path config;
  std::vector<double> observed_mhz;
  double k_low = 1e-4;
  double k_high = 0.99;
  std::optional<std::filesystem::path> out;
};

struct DampingOptions {
  std::filesystem::path config;
  std::vector<double> resistances;
  std::optional<std::size_t> drive;
  std::optional<std::filesystem::path> out;
  bool plot = false;
  std::optional<std::filesystem::path> plot_path;
};

// Each command writes its CSV to `out` (or the file named in the options),
// diagnostics to `err`, and returns the process exit code. No exception
// escapes.
int cmd_modes(const ModesOptions& options, std::ostream& out, std::ostream& err);
int cmd_sweep(const SweepOptions& options, std::ostream& out, std::ostream& err);
int cmd_two_coil(const TwoCoilOptions& options, std::ostream& out, std::ostream& err);
int cmd_fit_k(const FitOptions& options, std::ostream& out, std::ostream& err);
int cmd_damping(const DampingOptions& options, std::ostream& out, std::ostream& err);

// Plot path for `--plot` without an explicit file: beside the CSV when one
// is written, else beside the config, named <stem>_<suffix>.svg.
std::filesystem::path default_plot_path(const std::filesystem::path& config,
                                        const std::optional<std::filesystem::path>& out,
                                        const std::string& suffix);

}  // namespace mrc::cli
