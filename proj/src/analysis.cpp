#include "mrc/analysis.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>
#include <tuple>

#include <boost/math/tools/minima.hpp>

#include "mrc/two_coil.hpp"

namespace mrc {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();
constexpr std::size_t kFitScanSamples = 64;
constexpr int kBrentBits = std::numeric_limits<double>::digits / 2;

bool usable(double v) { return std::isfinite(v); }

// Vertex of the parabola through (x_k, y_k), k = 0..2, with x1 in the middle.
// Returns nullopt when the three points are not concave.
std::optional<std::pair<double, double>> parabola_vertex(double x0, double x1, double x2,
                                                         double y0, double y1, double y2) {
  const double h0 = x0 - x1;
  const double h2 = x2 - x1;
  const double s0 = (y0 - y1) / h0;
  const double s2 = (y2 - y1) / h2;
  const double a = (s0 - s2) / (h0 - h2);
  if (!(a < 0.0)) return std::nullopt;
  const double b = s0 - a * h0;
  double x = -b / (2.0 * a);
  x = std::clamp(x, h0, h2);
  return std::make_pair(x1 + x, y1 + (a * x + b) * x);
}

struct Candidate {
  std::size_t index;
  double prominence;
};

std::vector<Candidate> local_maxima(std::span<const double> m) {
  std::vector<Candidate> out;
  const std::size_t n = m.size();
  std::size_t i = 1;
  while (i + 1 < n) {
    if (!usable(m[i]) || !usable(m[i - 1]) || !(m[i] > m[i - 1])) {
      ++i;
      continue;
    }
    // Walk across a flat top; the peak sits in its middle.
    std::size_t j = i;
    while (j + 1 < n && usable(m[j + 1]) && m[j + 1] == m[i]) ++j;
    if (j + 1 < n && usable(m[j + 1]) && m[j + 1] < m[i]) {
      out.push_back({(i + j) / 2, 0.0});
    }
    i = j + 1;
  }

  for (auto& c : out) {
    const double top = m[c.index];
    double left_min = top;
    for (std::size_t k = c.index; k-- > 0;) {
      if (!usable(m[k]) || m[k] > top) break;
      left_min = std::min(left_min, m[k]);
    }
    double right_min = top;
    for (std::size_t k = c.index + 1; k < n; ++k) {
      if (!usable(m[k]) || m[k] > top) break;
      right_min = std::min(right_min, m[k]);
    }
    c.prominence = top - std::max(left_min, right_min);
  }
  return out;
}

Peak refine_on_grid(std::span<const double> f, std::span<const double> m, std::size_t i) {
  Peak peak{f[i], m[i], 0.0, i, std::nullopt, std::nullopt};
  if (i == 0 || i + 1 >= f.size()) return peak;
  if (!(m[i - 1] > 0.0 && m[i] > 0.0 && m[i + 1] > 0.0) || !usable(m[i - 1]) ||
      !usable(m[i + 1])) {
    return peak;
  }
  const auto vertex = parabola_vertex(f[i - 1], f[i], f[i + 1], std::log(m[i - 1]),
                                      std::log(m[i]), std::log(m[i + 1]));
  if (vertex) {
    peak.frequency_hz = vertex->first;
    peak.magnitude = std::exp(vertex->second);
  }
  return peak;
}

std::size_t argmax_finite(std::span<const double> m) {
  std::size_t best = 0;
  double value = -kInf;
  for (std::size_t i = 0; i < m.size(); ++i) {
    if (usable(m[i]) && m[i] > value) {
      value = m[i];
      best = i;
    }
  }
  return best;
}

// Greedy unique assignment by increasing relative distance.
// Returns, per `from` entry, the chosen index into `to` (or nullopt).
std::vector<std::optional<std::size_t>> greedy_assign(std::span<const double> from,
                                                      std::span<const double> to,
                                                      std::span<const std::size_t> allowed) {
  std::vector<std::tuple<double, std::size_t, std::size_t>> pairs;
  for (std::size_t a = 0; a < from.size(); ++a) {
    for (auto b : allowed) pairs.emplace_back(std::abs(from[a] - to[b]) / to[b], a, b);
  }
  std::sort(pairs.begin(), pairs.end());
  std::vector<std::optional<std::size_t>> out(from.size());
  std::vector<bool> taken(to.size(), false);
  for (const auto& [dist, a, b] : pairs) {
    if (out[a] || taken[b]) continue;
    out[a] = b;
    taken[b] = true;
  }
  return out;
}

}  // namespace

std::vector<double> PeakList::frequencies_hz() const {
  std::vector<double> out;
  out.reserve(peaks.size());
  for (const auto& p : peaks) out.push_back(p.frequency_hz);
  return out;
}

PeakList find_peaks(std::span<const double> frequencies_hz, std::span<const double> magnitude,
                    double prominence_floor) {
  if (frequencies_hz.size() != magnitude.size()) {
    throw Error(ErrorCode::InvalidArgument, "frequency and magnitude lengths differ");
  }
  if (magnitude.size() < 3) {
    throw Error(ErrorCode::EmptySpectrum, "peak search needs at least 3 samples");
  }
  if (!(prominence_floor > 0.0 && prominence_floor < 1.0)) {
    throw Error(ErrorCode::InvalidArgument, "prominence floor must lie in (0, 1)");
  }
  double global = 0.0;
  for (double v : magnitude) {
    if (usable(v)) global = std::max(global, v);
  }
  PeakList out;
  if (global <= 0.0) return out;

  for (const auto& c : local_maxima(magnitude)) {
    if (c.prominence <= 0.0 || c.prominence < prominence_floor * global) continue;
    Peak p = refine_on_grid(frequencies_hz, magnitude, c.index);
    p.prominence = c.prominence;
    out.peaks.push_back(p);
  }
  return out;
}

PeakList find_peaks(const SweepResult& spectrum, double prominence_floor) {
  const auto mag = spectrum.magnitude();
  return find_peaks(spectrum.frequencies_hz, mag, prominence_floor);
}

FrequencyGrid default_band(const ModeSet& modes, std::size_t points) {
  return {0.8 * modes.frequencies_hz.front(), 1.2 * modes.frequencies_hz.back(), points,
          GridSpacing::Linear};
}

PeakList locate_peaks(const ValidatedArray& array, std::size_t drive, const FrequencyGrid& band,
                      const PeakSearchOptions& options) {
  const SweepResult coarse = sweep(array, {drive, band}, options.threads);
  PeakList found = find_peaks(coarse, options.prominence_floor);
  const auto& f = coarse.frequencies_hz;

  for (auto& peak : found.peaks) {
    const std::size_t i = peak.grid_index;
    if (options.refine_points >= 3 && i > 0 && i + 1 < f.size()) {
      const double step = std::max(f[i + 1] - f[i], f[i] - f[i - 1]);
      const double half = options.refine_half_width_steps * step;
      const FrequencyGrid local{std::max(f[i] - half, 0.5 * f[i]), f[i] + half,
                                options.refine_points, GridSpacing::Linear};
      const SweepResult fine = sweep(array, {drive, local}, 1);
      const auto mag = fine.magnitude();
      const std::size_t j = argmax_finite(mag);
      const Peak refined = refine_on_grid(fine.frequencies_hz, mag, j);
      peak.frequency_hz = refined.frequency_hz;
      peak.magnitude = refined.magnitude;

      if (options.polish && j > 0 && j + 1 < mag.size()) {
        auto negative_magnitude = [&](double hz) {
          try {
            return -std::abs(input_impedance(array, drive, to_angular(hz)));
          } catch (const Error& e) {
            if (e.code() != ErrorCode::SingularAtFrequency) throw;
            return -kInf;
          }
        };
        const auto [hz, neg] = boost::math::tools::brent_find_minima(
            negative_magnitude, fine.frequencies_hz[j - 1], fine.frequencies_hz[j + 1],
            std::numeric_limits<double>::digits);
        if (-neg >= peak.magnitude || !std::isfinite(peak.magnitude)) {
          peak.frequency_hz = hz;
          peak.magnitude = -neg;
        }
      }
    }
  }
  std::sort(found.peaks.begin(), found.peaks.end(),
            [](const Peak& a, const Peak& b) { return a.frequency_hz < b.frequency_hz; });
  return found;
}

PeakList match_peaks_to_modes(PeakList peaks, const ModeSet& modes, std::size_t drive,
                              double node_tolerance) {
  if (drive >= modes.size()) {
    throw Error(ErrorCode::InvalidArgument, "drive index outside the mode set");
  }
  std::vector<std::size_t> visible;
  for (std::size_t i = 0; i < modes.size(); ++i) {
    if (!is_node(modes, i, drive, node_tolerance)) visible.push_back(i);
  }
  const auto peak_hz = peaks.frequencies_hz();
  const auto assignment = greedy_assign(peak_hz, modes.frequencies_hz, visible);
  for (std::size_t p = 0; p < peaks.size(); ++p) {
    if (!assignment[p]) {
      throw Error(ErrorCode::UnmatchedPeak,
                  "peak at " + std::to_string(peak_hz[p]) + " Hz has no visible mode left (" +
                      std::to_string(peaks.size()) + " peaks, " + std::to_string(visible.size()) +
                      " visible modes)");
    }
    const std::size_t mode = *assignment[p];
    const double f_mode = modes.frequencies_hz[mode];
    peaks.peaks[p].matched_mode = mode;
    peaks.peaks[p].deviation = (peak_hz[p] - f_mode) / f_mode;
  }
  return peaks;
}

DampingStudy damping_study(const ValidatedArray& base, std::span<const double> resistances,
                           std::size_t drive, const PeakSearchOptions& options) {
  for (std::size_t i = 0; i < resistances.size(); ++i) {
    if (!(resistances[i] > 0.0) || (i > 0 && !(resistances[i] > resistances[i - 1]))) {
      throw Error(ErrorCode::InvalidArgument, "resistances must be positive and ascending");
    }
  }
  const ModeSet modes = solve_modes(base);
  const FrequencyGrid band = default_band(modes, options.points);
  const std::size_t visible = predicted_peak_count(modes, drive);

  DampingStudy study;
  study.mode_frequencies_hz = modes.frequencies_hz;
  for (double r : resistances) {
    const ValidatedArray array = with_resistance(base, r);
    const PeakList peaks = match_peaks_to_modes(locate_peaks(array, drive, band, options), modes,
                                                drive);
    DampingRow row;
    row.resistance = r;
    row.peak_count = peaks.size();
    row.visible_modes = visible;
    row.merged = peaks.size() < visible;
    row.deviation.assign(modes.size(), std::nullopt);
    for (const auto& p : peaks.peaks) row.deviation[*p.matched_mode] = std::abs(*p.deviation);
    study.rows.push_back(std::move(row));
  }
  return study;
}

ValidatedArray CouplingTemplate::build(double k) const {
  if (layout == Layout::ClosePacked) return build_close_packed(coils, k);
  return build_linear_chain(coils, k, decay_exponent);
}

FitResult fit_coupling(std::span<const double> observed_hz, const CouplingTemplate& model,
                       double k_low, double k_high) {
  const std::size_t n = model.coils.size();
  if (observed_hz.empty()) throw Error(ErrorCode::InvalidArgument, "no observed frequencies");
  if (observed_hz.size() > n) {
    throw Error(ErrorCode::InvalidArgument,
                std::to_string(observed_hz.size()) + " observed frequencies for a " +
                    std::to_string(n) + "-coil array");
  }
  for (double f : observed_hz) {
    if (!(f > 0.0) || !std::isfinite(f)) {
      throw Error(ErrorCode::InvalidArgument, "observed frequencies must be positive");
    }
  }
  if (!(0.0 < k_low && k_low < k_high && k_high < 1.0)) {
    throw Error(ErrorCode::KOutOfRange, "k bracket must satisfy 0 < low < high < 1");
  }
  std::vector<double> observed(observed_hz.begin(), observed_hz.end());
  std::sort(observed.begin(), observed.end());

  auto model_frequencies = [&](double k) { return solve_modes(model.build(k)).frequencies_hz; };

  auto residual_at = [&](double k) {
    std::vector<double> f;
    try {
      f = model_frequencies(k);
    } catch (const Error&) {
      return 1e300;
    }
    std::vector<std::size_t> all(n);
    for (std::size_t i = 0; i < n; ++i) all[i] = i;
    std::vector<std::optional<std::size_t>> pick(observed.size());
    if (observed.size() == n) {
      for (std::size_t i = 0; i < n; ++i) pick[i] = i;
    } else {
      pick = greedy_assign(observed, f, all);
    }
    double sum = 0.0;
    for (std::size_t i = 0; i < observed.size(); ++i) {
      const double rel = (f[*pick[i]] - observed[i]) / observed[i];
      sum += rel * rel;
    }
    return sum;
  };

  FitResult result;
  const bool pair_of_equals =
      n == 2 && observed.size() == 2 &&
      std::abs(model.coils[0].natural_omega() - model.coils[1].natural_omega()) <=
          1e-12 * model.coils[0].natural_omega();
  if (pair_of_equals) {
    result.method = FitResult::Method::SplitFormula;
    result.k = estimate_k_from_split({to_angular(observed[0]), to_angular(observed[1])});
    result.residual = residual_at(result.k);
    result.model_frequencies_hz = model_frequencies(result.k);
    return result;
  }

  // Keep the search where the coupling matrix is physical.
  auto valid = [&](double k) {
    try {
      model.build(k);
      return true;
    } catch (const Error&) {
      return false;
    }
  };
  if (!valid(k_low)) {
    throw Error(ErrorCode::NotPositiveDefinite, "template is not valid at the bracket's low end");
  }
  if (!valid(k_high)) {
    double good = k_low;
    double bad = k_high;
    for (int it = 0; it < 80; ++it) {
      const double mid = 0.5 * (good + bad);
      (valid(mid) ? good : bad) = mid;
    }
    k_high = std::max(k_low + 0.5 * (good - k_low), good - 1e-4);
  }

  std::vector<std::pair<double, double>> curve;
  for (std::size_t s = 0; s < kFitScanSamples; ++s) {
    const double k = k_low + (k_high - k_low) * static_cast<double>(s) /
                                 static_cast<double>(kFitScanSamples - 1);
    curve.emplace_back(k, residual_at(k));
  }
  std::vector<std::size_t> minima;
  for (std::size_t s = 0; s < curve.size(); ++s) {
    const bool left_ok = s == 0 || curve[s].second < curve[s - 1].second;
    const bool right_ok = s + 1 == curve.size() || curve[s].second <= curve[s + 1].second;
    if (left_ok && right_ok) minima.push_back(s);
  }
  // An edge that is still descending only matters when nothing inside the
  // bracket does better.
  double interior_best = kInf;
  for (std::size_t s : minima) {
    if (s != 0 && s + 1 != curve.size()) interior_best = std::min(interior_best, curve[s].second);
  }
  std::erase_if(minima, [&](std::size_t s) {
    return (s == 0 || s + 1 == curve.size()) && curve[s].second > interior_best;
  });
  if (minima.size() != 1) {
    throw NoBracketError("residual has " + std::to_string(minima.size()) +
                             " local minima in the k bracket",
                         std::move(curve));
  }
  const std::size_t best = minima.front();
  const double a = curve[best == 0 ? 0 : best - 1].first;
  const double b = curve[std::min(best + 1, curve.size() - 1)].first;
  const auto [k, value] = boost::math::tools::brent_find_minima(residual_at, a, b, kBrentBits);

  result.method = FitResult::Method::LeastSquares;
  result.k = k;
  result.residual = value;
  result.model_frequencies_hz = model_frequencies(k);
  return result;
}

QualityFactor quality_factors(const ValidatedArray& array) {
  QualityFactor out;
  for (const auto& coil : array.coils()) {
    const bool lossless = coil.resistance == 0.0;
    out.infinite.push_back(lossless);
    out.q.push_back(lossless ? kInf : coil.natural_omega() * coil.inductance / coil.resistance);
  }
  return out;
}

}  // namespace mrc
