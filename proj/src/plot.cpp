#include "mrc/plot.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <limits>
#include <ostream>
#include <vector>

#include "mrc/csv.hpp"

namespace mrc {

namespace {

constexpr double kWidth = 800.0;
constexpr double kHeight = 480.0;
constexpr double kLeft = 70.0;
constexpr double kRight = 20.0;
constexpr double kTop = 40.0;
constexpr double kBottom = 50.0;

constexpr std::array<const char*, 8> kPalette = {"#1f77b4", "#d62728", "#e6a700", "#2ca02c",
                                                 "#9467bd", "#8c564b", "#e377c2", "#17becf"};

struct Axes {
  double x0, x1, y0, y1;

  double px(double x) const { return kLeft + (x - x0) / (x1 - x0) * (kWidth - kLeft - kRight); }
  double py(double y) const {
    return kHeight - kBottom - (y - y0) / (y1 - y0) * (kHeight - kTop - kBottom);
  }
};

std::string escape(const std::string& text) {
  std::string out;
  for (char c : text) {
    switch (c) {
      case '<': out += "&lt;"; break;
      case '>': out += "&gt;"; break;
      case '&': out += "&amp;"; break;
      default: out += c;
    }
  }
  return out;
}

void frame(std::ostream& out, const Axes& ax, const std::string& title, const std::string& xlabel,
           const std::string& ylabel) {
  out << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << kWidth << "\" height=\""
      << kHeight << "\" viewBox=\"0 0 " << kWidth << " " << kHeight << "\">\n";
  out << "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";
  out << "<text x=\"" << kWidth / 2 << "\" y=\"24\" text-anchor=\"middle\" font-size=\"16\">"
      << escape(title) << "</text>\n";
  out << "<rect x=\"" << kLeft << "\" y=\"" << kTop << "\" width=\"" << kWidth - kLeft - kRight
      << "\" height=\"" << kHeight - kTop - kBottom
      << "\" fill=\"none\" stroke=\"black\"/>\n";
  for (int t = 0; t <= 5; ++t) {
    const double x = ax.x0 + (ax.x1 - ax.x0) * t / 5.0;
    const double y = ax.y0 + (ax.y1 - ax.y0) * t / 5.0;
    out << "<text x=\"" << ax.px(x) << "\" y=\"" << kHeight - kBottom + 18
        << "\" text-anchor=\"middle\" font-size=\"11\">" << format_number(std::round(x * 1e4) / 1e4)
        << "</text>\n";
    out << "<text x=\"" << kLeft - 6 << "\" y=\"" << ax.py(y) + 4
        << "\" text-anchor=\"end\" font-size=\"11\">" << format_number(std::round(y * 1e3) / 1e3)
        << "</text>\n";
  }
  out << "<text x=\"" << kWidth / 2 << "\" y=\"" << kHeight - 10
      << "\" text-anchor=\"middle\" font-size=\"13\">" << escape(xlabel) << "</text>\n";
  out << "<text x=\"16\" y=\"" << kHeight / 2 << "\" text-anchor=\"middle\" font-size=\"13\" "
      << "transform=\"rotate(-90 16 " << kHeight / 2 << ")\">" << escape(ylabel) << "</text>\n";
}

void vertical(std::ostream& out, const Axes& ax, double x, const char* colour, bool dotted) {
  if (x < ax.x0 || x > ax.x1) return;
  out << "<line x1=\"" << ax.px(x) << "\" y1=\"" << kTop << "\" x2=\"" << ax.px(x) << "\" y2=\""
      << kHeight - kBottom << "\" stroke=\"" << colour << "\""
      << (dotted ? " stroke-dasharray=\"2,4\"" : "") << "/>\n";
}

}  // namespace

void write_spectrum_svg(std::ostream& out, const SweepResult& result, const PeakList* peaks,
                        const ModeSet* modes, const std::string& title) {
  std::vector<std::pair<double, double>> pts;
  for (std::size_t i = 0; i < result.size(); ++i) {
    const double m = std::abs(result.input_impedance[i]);
    if (std::isfinite(m) && m > 0.0) pts.emplace_back(result.frequencies_hz[i] / 1e6, std::log10(m));
  }
  Axes ax{0.0, 1.0, 0.0, 1.0};
  if (!pts.empty()) {
    ax.x0 = result.frequencies_hz.front() / 1e6;
    ax.x1 = result.frequencies_hz.back() / 1e6;
    auto [lo, hi] = std::minmax_element(pts.begin(), pts.end(),
                                        [](auto& a, auto& b) { return a.second < b.second; });
    ax.y0 = std::floor(lo->second * 10.0) / 10.0;
    ax.y1 = std::ceil(hi->second * 10.0) / 10.0;
    if (ax.y1 <= ax.y0) ax.y1 = ax.y0 + 1.0;
  }
  frame(out, ax, title, "frequency (MHz)", "log10 |Z| (ohm)");
  if (modes) {
    for (double f : modes->frequencies_hz) vertical(out, ax, f / 1e6, "black", true);
  }
  if (peaks) {
    for (const auto& p : peaks->peaks) vertical(out, ax, p.frequency_hz / 1e6, "red", false);
  }
  out << "<polyline fill=\"none\" stroke=\"" << kPalette[0] << "\" stroke-width=\"1.5\" points=\"";
  for (const auto& [x, y] : pts) out << ax.px(x) << "," << ax.py(y) << " ";
  out << "\"/>\n</svg>\n";
}

void write_damping_svg(std::ostream& out, const DampingStudy& study, const std::string& title) {
  double xmin = std::numeric_limits<double>::infinity();
  double xmax = -xmin;
  double ymin = xmin;
  double ymax = -xmin;
  for (const auto& row : study.rows) {
    xmin = std::min(xmin, std::log10(row.resistance));
    xmax = std::max(xmax, std::log10(row.resistance));
    for (const auto& d : row.deviation) {
      if (d && *d > 0.0) {
        ymin = std::min(ymin, std::log10(*d));
        ymax = std::max(ymax, std::log10(*d));
      }
    }
  }
  if (!std::isfinite(xmin) || xmax <= xmin) {
    xmin = std::isfinite(xmin) ? xmin - 0.5 : 0.0;
    xmax = xmin + 1.0;
  }
  if (!std::isfinite(ymin) || ymax <= ymin) {
    ymin = std::isfinite(ymin) ? ymin - 0.5 : -6.0;
    ymax = ymin + 1.0;
  }
  const Axes ax{xmin, xmax, std::floor(ymin), std::ceil(ymax)};
  frame(out, ax, title, "log10 R (ohm)", "log10 |f_peak - f_mode| / f_mode");
  for (std::size_t m = 0; m < study.mode_frequencies_hz.size(); ++m) {
    const char* colour = kPalette[m % kPalette.size()];
    out << "<polyline fill=\"none\" stroke=\"" << colour << "\" points=\"";
    for (const auto& row : study.rows) {
      const auto& d = row.deviation[m];
      if (d && *d > 0.0) out << ax.px(std::log10(row.resistance)) << "," << ax.py(std::log10(*d)) << " ";
    }
    out << "\"/>\n";
  }
  out << "</svg>\n";
}

}  // namespace mrc
