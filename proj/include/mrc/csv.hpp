#pragma once

#include <iosfwd>
#include <string>
#include <vector>

#include "mrc/analysis.hpp"
#include "mrc/eigenmodes.hpp"
#include "mrc/sweep.hpp"
#include "mrc/two_coil.hpp"

namespace mrc {

// Header, rows of cells, and trailing '#' comment lines.
struct CsvTable {
  std::vector<std::string> header;
  std::vector<std::vector<std::string>> rows;
  std::vector<std::string> footer;  // written as "# <line>"

  std::size_t column(const std::string& name) const;
  double number(std::size_t row, const std::string& name) const;
};

// 12 significant digits.
std::string format_number(double value);
double parse_number(const std::string& cell);

void write_csv(std::ostream& out, const CsvTable& table);
CsvTable read_csv(std::istream& in);

// Columns: frequency_Hz, Z_abs_ohm, Z_phase_rad, then V<n>_abs, V<n>_phase_rad.
// Footer lists detected peaks and eigen-frequencies when supplied.
CsvTable sweep_table(const SweepResult& result, const PeakList* peaks = nullptr,
                     const ModeSet* modes = nullptr);

// Columns: mode_index, frequency_Hz, v<n> per element, degeneracy_group, nodes.
CsvTable modes_table(const ModeSet& modes, const ModeClassification& classes);

CsvTable split_table(double k, const SplitPair& pair);
CsvTable dispersion_table(const DispersionCurve& curve);
CsvTable damping_table(const DampingStudy& study);
CsvTable fit_table(const FitResult& fit);

}  // namespace mrc
