#include "mrc/two_coil.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "mrc/sweep.hpp"

namespace mrc {

namespace {

constexpr std::size_t kResolvePoints = 4001;
constexpr double kResolveMargin = 0.1;

void check_k(double k) {
  if (!std::isfinite(k) || k < 0.0 || k >= 1.0) {
    throw Error(ErrorCode::KOutOfRange, "coupling coefficient " + std::to_string(k) +
                                            " must lie in [0, 1)");
  }
}

ValidatedArray coupled_pair(const CoilCircuit& coil, double k) {
  Eigen::Matrix2d kmat;
  kmat << 1.0, k, k, 1.0;
  return validate_array({{coil, coil}, kmat});
}

}  // namespace

SplitPair coupled_frequencies_general(const CoilCircuit& coil1, const CoilCircuit& coil2, double k) {
  check_k(k);
  validate_array({{coil1, coil2}, Eigen::Matrix2d::Identity()});
  const double w1 = coil1.natural_omega();
  const double w2 = coil2.natural_omega();
  const double a = (w2 * w2) / (w1 * w1);
  const double root = (w1 / w2) * std::sqrt(a + 1.0 / a + 4.0 * k * k - 2.0);
  const double scale = 0.5 * w1 * w1 / (1.0 - k * k);
  const double upper_sq = scale * (1.0 + a * (1.0 + root));
  const double lower_sq = scale * (1.0 + a * (1.0 - root));
  return {std::sqrt(lower_sq), std::sqrt(upper_sq)};
}

RatioBranches frequency_ratio_branches(double omega_ratio, double k) {
  check_k(k);
  if (!(omega_ratio > 0.0) || !std::isfinite(omega_ratio)) {
    throw Error(ErrorCode::InvalidArgument, "frequency ratio must be positive");
  }
  const double a = omega_ratio * omega_ratio;
  const double sum = 1.0 + a;
  const double one_minus_k2 = 1.0 - k * k;
  const double disc = std::sqrt(std::max(0.0, sum * sum - 4.0 * a * one_minus_k2));
  return {std::sqrt((sum - disc) / (2.0 * one_minus_k2)),
          std::sqrt((sum + disc) / (2.0 * one_minus_k2))};
}

SplitPair identical_coupled_frequencies(double inductance, double capacitance, double k) {
  check_k(k);
  if (!(inductance > 0.0) || !(capacitance > 0.0)) {
    throw Error(ErrorCode::NonPositiveComponent, "L and C must be positive");
  }
  const double lc = inductance * capacitance;
  return {1.0 / std::sqrt(lc * (1.0 + k)), 1.0 / std::sqrt(lc * (1.0 - k))};
}

double estimate_k_from_split(const SplitPair& pair) {
  if (!(pair.omega_plus > 0.0) || !(pair.omega_minus > 0.0)) {
    throw Error(ErrorCode::InvalidArgument, "split frequencies must be positive");
  }
  const double hi = std::max(pair.omega_plus, pair.omega_minus);
  const double lo = std::min(pair.omega_plus, pair.omega_minus);
  if (hi == lo) return 0.0;
  return (hi * hi - lo * lo) / (hi * hi + lo * lo);
}

bool peaks_resolvable(const ValidatedArray& array, std::size_t drive, double lower_hz,
                      double upper_hz, double dip_factor) {
  if (!(dip_factor > 0.0 && dip_factor < 1.0)) {
    throw Error(ErrorCode::InvalidArgument, "dip factor must lie in (0, 1)");
  }
  if (!(lower_hz > 0.0) || upper_hz < lower_hz) {
    throw Error(ErrorCode::InvalidArgument, "branch frequencies must be positive and ordered");
  }
  const FrequencyGrid grid{lower_hz * (1.0 - kResolveMargin), upper_hz * (1.0 + kResolveMargin),
                           kResolvePoints, GridSpacing::Linear};
  const auto mag = sweep(array, {drive, grid}, 1).magnitude();

  std::vector<std::size_t> maxima;
  for (std::size_t i = 1; i + 1 < mag.size(); ++i) {
    if (mag[i] > mag[i - 1] && mag[i] >= mag[i + 1]) maxima.push_back(i);
  }
  if (maxima.size() < 2) return false;
  std::partial_sort(maxima.begin(), maxima.begin() + 2, maxima.end(),
                    [&](std::size_t a, std::size_t b) { return mag[a] > mag[b]; });
  const std::size_t left = std::min(maxima[0], maxima[1]);
  const std::size_t right = std::max(maxima[0], maxima[1]);
  const double dip = *std::min_element(mag.begin() + static_cast<std::ptrdiff_t>(left),
                                       mag.begin() + static_cast<std::ptrdiff_t>(right) + 1);
  return dip <= dip_factor * std::min(mag[left], mag[right]);
}

DispersionCurve dispersion_curve(double inductance, double capacitance, double resistance,
                                 double k_max, std::size_t steps, double dip_factor) {
  if (!(k_max > 0.0 && k_max < 1.0)) {
    throw Error(ErrorCode::KOutOfRange, "k_max must lie in (0, 1)");
  }
  if (steps < 2) throw Error(ErrorCode::InvalidArgument, "dispersion curve needs >= 2 steps");
  const CoilCircuit coil{inductance, capacitance, resistance};

  DispersionCurve curve;
  for (std::size_t j = 0; j < steps; ++j) {
    const double k = k_max * static_cast<double>(j) / static_cast<double>(steps - 1);
    const SplitPair pair = identical_coupled_frequencies(inductance, capacitance, k);
    const double lower = to_hertz(pair.omega_plus);
    const double upper = to_hertz(pair.omega_minus);
    curve.k_values.push_back(k);
    curve.lower_hz.push_back(lower);
    curve.upper_hz.push_back(upper);
    curve.resolvable.push_back(k > 0.0 &&
                               peaks_resolvable(coupled_pair(coil, k), 0, lower, upper, dip_factor));
  }
  return curve;
}

}  // namespace mrc
