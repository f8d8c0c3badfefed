#pragma once

#include <cstddef>
#include <vector>

#include "mrc/core_model.hpp"

namespace mrc {

// Split resonances of a coupled pair, rad/s. `omega_minus` (the 1-k branch)
// is always the upper frequency.
struct SplitPair {
  double omega_plus = 0.0;
  double omega_minus = 0.0;
};

// Branches of omega / omega_1, same labelling as SplitPair.
struct RatioBranches {
  double r_plus = 0.0;
  double r_minus = 0.0;
};

struct DispersionCurve {
  std::vector<double> k_values;
  std::vector<double> upper_hz;
  std::vector<double> lower_hz;
  std::vector<bool> resolvable;
};

// Default fraction of the smaller peak the dip between two peaks must reach.
inline constexpr double kDefaultDipFactor = 0.9;

// General two-coil resonances for coils with different natural frequencies.
SplitPair coupled_frequencies_general(const CoilCircuit& coil1, const CoilCircuit& coil2, double k);

// Dimensionless form, normalised to the first coil's natural frequency.
RatioBranches frequency_ratio_branches(double omega_ratio, double k);

// omega'_(+/-) = 1 / sqrt(LC (1 +/- k)).
SplitPair identical_coupled_frequencies(double inductance, double capacitance, double k);

// k = (w-^2 - w+^2) / (w-^2 + w+^2); exactly 0 for a degenerate pair.
double estimate_k_from_split(const SplitPair& pair);

/// Whether the driven-coil |Z0| of `array` shows two separate peaks around
/// [lower_hz, upper_hz]: a local minimum between the two strongest maxima
/// that falls to at most dip_factor times the smaller of the two.
bool peaks_resolvable(const ValidatedArray& array, std::size_t drive, double lower_hz,
                      double upper_hz, double dip_factor = kDefaultDipFactor);

/// Identical-coil branches sampled on k in [0, k_max] (`steps` points),
/// with a resolvability flag from the full circuit model at each k.
DispersionCurve dispersion_curve(double inductance, double capacitance, double resistance,
                                 double k_max, std::size_t steps,
                                 double dip_factor = kDefaultDipFactor);

}  // namespace mrc
