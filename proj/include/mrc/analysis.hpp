#pragma once

#include <cstddef>
#include <optional>
#include <span>
#include <utility>
#include <vector>

#include "mrc/core_model.hpp"
#include "mrc/eigenmodes.hpp"
#include "mrc/sweep.hpp"

namespace mrc {

inline constexpr double kDefaultProminenceFloor = 0.01;

struct Peak {
  double frequency_hz = 0.0;
  double magnitude = 0.0;   // ohms
  double prominence = 0.0;  // ohms
  std::size_t grid_index = 0;
  std::optional<std::size_t> matched_mode;
  std::optional<double> deviation;  // (f_peak - f_mode) / f_mode
};

struct PeakList {
  std::vector<Peak> peaks;  // ascending in frequency

  std::size_t size() const { return peaks.size(); }
  std::vector<double> frequencies_hz() const;
};

/// Local maxima of |Z0| whose topographic prominence is at least
/// prominence_floor times the global maximum. Each peak is refined by a
/// parabola through log|Z| at the three grid points around it. Singular
/// (NaN) samples never form or bound a peak.
PeakList find_peaks(const SweepResult& spectrum, double prominence_floor = kDefaultProminenceFloor);
PeakList find_peaks(std::span<const double> frequencies_hz, std::span<const double> magnitude,
                    double prominence_floor = kDefaultProminenceFloor);

struct PeakSearchOptions {
  std::size_t points = 2000;
  std::size_t refine_points = 50;
  double refine_half_width_steps = 2.0;
  double prominence_floor = kDefaultProminenceFloor;
  bool polish = true;  // Brent maximisation of |Z0| on the exact model
  unsigned threads = 0;
};

// Band that comfortably contains every eigen-frequency of `modes`.
FrequencyGrid default_band(const ModeSet& modes, std::size_t points = 2000);

/// Sweep over `band` (points taken from options), detect, then refine each
/// peak on a local grid of refine_points within +-refine_half_width_steps.
PeakList locate_peaks(const ValidatedArray& array, std::size_t drive, const FrequencyGrid& band,
                      const PeakSearchOptions& options = {});

/// Greedy nearest-frequency assignment of peaks to modes visible from
/// `drive`, each mode used at most once. Throws UnmatchedPeak when a peak
/// has no mode left.
PeakList match_peaks_to_modes(PeakList peaks, const ModeSet& modes, std::size_t drive,
                              double node_tolerance = kDefaultNodeTolerance);

struct DampingRow {
  double resistance = 0.0;
  std::size_t peak_count = 0;
  std::size_t visible_modes = 0;
  bool merged = false;  // fewer peaks than visible mode groups
  std::vector<std::optional<double>> deviation;  // per mode, |f_peak - f_mode| / f_mode
};

struct DampingStudy {
  std::vector<double> mode_frequencies_hz;
  std::vector<DampingRow> rows;
};

/// Rebuilds the array with every resistance set to each value of
/// `resistances` (positive, ascending), sweeps, detects and matches.
DampingStudy damping_study(const ValidatedArray& base, std::span<const double> resistances,
                           std::size_t drive, const PeakSearchOptions& options = {});

// Coil parameters plus a coupling layout whose single k is unknown.
struct CouplingTemplate {
  enum class Layout { LinearChain, ClosePacked };

  std::vector<CoilCircuit> coils;
  Layout layout = Layout::LinearChain;
  double decay_exponent = kNearestNeighborOnly;

  ValidatedArray build(double k) const;
};

struct FitResult {
  enum class Method { SplitFormula, LeastSquares };

  double k = 0.0;
  double residual = 0.0;  // sum of squared relative frequency differences
  Method method = Method::LeastSquares;
  std::vector<double> model_frequencies_hz;
};

// Thrown by fit_coupling when the residual has several minima in the bracket.
class NoBracketError : public Error {
 public:
  NoBracketError(const std::string& message, std::vector<std::pair<double, double>> curve)
      : Error(ErrorCode::NoBracket, message), curve_(std::move(curve)) {}

  // (k, residual) samples across the bracket.
  const std::vector<std::pair<double, double>>& residual_curve() const { return curve_; }

 private:
  std::vector<std::pair<double, double>> curve_;
};

/// Scalar coupling estimate from observed resonances. Two observations on a
/// pair of equally tuned coils use the split formula; everything else
/// minimises the squared relative frequency error over k in the bracket
/// (clipped to where the coupling matrix stays positive-definite).
FitResult fit_coupling(std::span<const double> observed_hz, const CouplingTemplate& model,
                       double k_low = 1e-4, double k_high = 0.99);

struct QualityFactor {
  std::vector<double> q;
  std::vector<bool> infinite;  // R == 0
};

QualityFactor quality_factors(const ValidatedArray& array);

}  // namespace mrc
