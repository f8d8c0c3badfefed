#include "mrc/csv.hpp"

#include <cmath>
#include <cstdio>
#include <istream>
#include <ostream>
#include <sstream>

namespace mrc {

namespace {

std::string join(const std::vector<std::string>& cells) {
  std::string line;
  for (std::size_t i = 0; i < cells.size(); ++i) {
    if (i) line += ',';
    line += cells[i];
  }
  return line;
}

std::vector<std::string> split(const std::string& line) {
  std::vector<std::string> cells;
  std::string cell;
  std::istringstream in(line);
  while (std::getline(in, cell, ',')) cells.push_back(cell);
  if (!line.empty() && line.back() == ',') cells.emplace_back();
  return cells;
}

std::string element_list(const std::vector<std::size_t>& elements) {
  std::string out;
  for (std::size_t i = 0; i < elements.size(); ++i) {
    if (i) out += ';';
    out += std::to_string(elements[i] + 1);
  }
  return out;
}

}  // namespace

std::size_t CsvTable::column(const std::string& name) const {
  for (std::size_t i = 0; i < header.size(); ++i) {
    if (header[i] == name) return i;
  }
  throw Error(ErrorCode::InvalidArgument, "no column named " + name);
}

double CsvTable::number(std::size_t row, const std::string& name) const {
  return parse_number(rows.at(row).at(column(name)));
}

std::string format_number(double value) {
  if (std::isnan(value)) return "nan";
  if (std::isinf(value)) return value > 0 ? "inf" : "-inf";
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.12g", value);
  return buf;
}

double parse_number(const std::string& cell) {
  std::size_t used = 0;
  double v = 0.0;
  try {
    v = std::stod(cell, &used);
  } catch (const std::exception&) {
    throw Error(ErrorCode::ConfigParse, "not a number: '" + cell + "'");
  }
  if (used != cell.size()) throw Error(ErrorCode::ConfigParse, "not a number: '" + cell + "'");
  return v;
}

void write_csv(std::ostream& out, const CsvTable& table) {
  out << join(table.header) << '\n';
  for (const auto& row : table.rows) out << join(row) << '\n';
  for (const auto& line : table.footer) out << "# " << line << '\n';
}

CsvTable read_csv(std::istream& in) {
  CsvTable table;
  std::string line;
  bool have_header = false;
  while (std::getline(in, line)) {
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty()) continue;
    if (line.front() == '#') {
      table.footer.push_back(line.size() > 2 ? line.substr(2) : "");
      continue;
    }
    if (!have_header) {
      table.header = split(line);
      have_header = true;
    } else {
      table.rows.push_back(split(line));
    }
  }
  if (!have_header) throw Error(ErrorCode::ConfigParse, "CSV has no header row");
  return table;
}

CsvTable sweep_table(const SweepResult& result, const PeakList* peaks, const ModeSet* modes) {
  CsvTable t;
  const auto n = result.element_voltages.rows();
  t.header = {"frequency_Hz", "Z_abs_ohm", "Z_phase_rad"};
  for (Eigen::Index e = 0; e < n; ++e) {
    const std::string v = "V" + std::to_string(e + 1);
    t.header.push_back(v + "_abs");
    t.header.push_back(v + "_phase_rad");
  }
  for (std::size_t i = 0; i < result.size(); ++i) {
    std::vector<std::string> row{format_number(result.frequencies_hz[i]),
                                 format_number(std::abs(result.input_impedance[i])),
                                 format_number(std::arg(result.input_impedance[i]))};
    for (Eigen::Index e = 0; e < n; ++e) {
      const Complex v = result.element_voltages(e, static_cast<Eigen::Index>(i));
      row.push_back(format_number(std::abs(v)));
      row.push_back(format_number(std::arg(v)));
    }
    t.rows.push_back(std::move(row));
  }
  t.footer.push_back("driven_element," + std::to_string(result.driven + 1));
  if (peaks) {
    t.footer.push_back("peak,index,frequency_Hz,magnitude_ohm,prominence_ohm,mode,deviation");
    for (std::size_t p = 0; p < peaks->size(); ++p) {
      const Peak& pk = peaks->peaks[p];
      t.footer.push_back(
          "peak," + std::to_string(p + 1) + "," + format_number(pk.frequency_hz) + "," +
          format_number(pk.magnitude) + "," + format_number(pk.prominence) + "," +
          (pk.matched_mode ? std::to_string(*pk.matched_mode + 1) : "") + "," +
          (pk.deviation ? format_number(*pk.deviation) : ""));
    }
  }
  if (modes) {
    t.footer.push_back("eigenfrequency,mode,frequency_Hz");
    for (std::size_t m = 0; m < modes->size(); ++m) {
      t.footer.push_back("eigenfrequency," + std::to_string(m + 1) + "," +
                         format_number(modes->frequencies_hz[m]));
    }
  }
  return t;
}

CsvTable modes_table(const ModeSet& modes, const ModeClassification& classes) {
  CsvTable t;
  const std::size_t n = modes.size();
  t.header = {"mode_index", "frequency_Hz"};
  for (std::size_t e = 0; e < n; ++e) t.header.push_back("v" + std::to_string(e + 1));
  t.header.push_back("degeneracy_group");
  t.header.push_back("nodes");
  for (std::size_t m = 0; m < n; ++m) {
    std::vector<std::string> row{std::to_string(m + 1), format_number(modes.frequencies_hz[m])};
    for (std::size_t e = 0; e < n; ++e) {
      row.push_back(format_number(
          modes.mode_shapes(static_cast<Eigen::Index>(e), static_cast<Eigen::Index>(m))));
    }
    row.push_back(std::to_string(modes.group_of(m) + 1));
    row.push_back(element_list(classes.nodes[m]));
    t.rows.push_back(std::move(row));
  }
  return t;
}

CsvTable split_table(double k, const SplitPair& pair) {
  CsvTable t;
  t.header = {"k", "f_plus_Hz", "f_minus_Hz", "k_from_split"};
  t.rows.push_back({format_number(k), format_number(to_hertz(pair.omega_plus)),
                    format_number(to_hertz(pair.omega_minus)),
                    format_number(estimate_k_from_split(pair))});
  return t;
}

CsvTable dispersion_table(const DispersionCurve& curve) {
  CsvTable t;
  t.header = {"k", "lower_Hz", "upper_Hz", "separation_Hz", "resolvable"};
  for (std::size_t i = 0; i < curve.k_values.size(); ++i) {
    t.rows.push_back({format_number(curve.k_values[i]), format_number(curve.lower_hz[i]),
                      format_number(curve.upper_hz[i]),
                      format_number(curve.upper_hz[i] - curve.lower_hz[i]),
                      curve.resolvable[i] ? "1" : "0"});
  }
  return t;
}

CsvTable damping_table(const DampingStudy& study) {
  CsvTable t;
  t.header = {"R_ohm", "peak_count", "visible_modes", "merged"};
  const std::size_t n = study.mode_frequencies_hz.size();
  for (std::size_t m = 0; m < n; ++m) t.header.push_back("deviation_mode" + std::to_string(m + 1));
  for (const auto& r : study.rows) {
    std::vector<std::string> row{format_number(r.resistance), std::to_string(r.peak_count),
                                 std::to_string(r.visible_modes), r.merged ? "1" : "0"};
    for (const auto& d : r.deviation) row.push_back(d ? format_number(*d) : "");
    t.rows.push_back(std::move(row));
  }
  for (std::size_t m = 0; m < n; ++m) {
    t.footer.push_back("eigenfrequency," + std::to_string(m + 1) + "," +
                       format_number(study.mode_frequencies_hz[m]));
  }
  return t;
}

CsvTable fit_table(const FitResult& fit) {
  CsvTable t;
  t.header = {"quantity", "value"};
  t.rows.push_back({"k", format_number(fit.k)});
  t.rows.push_back({"residual", format_number(fit.residual)});
  t.rows.push_back(
      {"method", fit.method == FitResult::Method::SplitFormula ? "split_formula" : "least_squares"});
  for (std::size_t m = 0; m < fit.model_frequencies_hz.size(); ++m) {
    t.rows.push_back({"model_frequency_Hz_" + std::to_string(m + 1),
                      format_number(fit.model_frequencies_hz[m])});
  }
  return t;
}

}  // namespace mrc
