#pragma once

#include <complex>
#include <cstddef>
#include <vector>

#include <Eigen/Dense>

#include "mrc/core_model.hpp"

namespace mrc {

using Complex = std::complex<double>;

// Driven element (0-based) and the sweep grid.
struct DriveSpec {
  std::size_t driven = 0;
  FrequencyGrid grid;
};

// Series impedance of a passive loop: R + 1/(iwC) + iwL.
Complex passive_impedance(const CoilCircuit& coil, double omega);

/// Loop impedance matrix of the coupled Kirchhoff system. The driven row
/// carries only R + iwL (its capacitor sits across the measurement port,
/// outside the loop); passive rows carry the full series impedance, and
/// off-diagonal entries are iw M_nm. Symmetric by construction.
Eigen::MatrixXcd assemble_system(const ValidatedArray& array, std::size_t driven, double omega);

// Loop currents for unit current in the driven coil, and that coil's V/I.
struct CoilSolution {
  Complex coil_impedance;
  Eigen::VectorXcd currents;
};

/// Solves the passive loops for I_driven = 1 A. Throws SingularAtFrequency
/// when the passive sub-system is singular (only possible with zero loss).
CoilSolution solve_at(const ValidatedArray& array, std::size_t driven, double omega);

// Z0: the coil branch in parallel with the driven element's capacitor.
Complex input_impedance(const ValidatedArray& array, std::size_t driven, double omega);

// Full response at one frequency for a 1 A source across the driven parallel LC.
struct PointResponse {
  Complex input_impedance;
  Eigen::VectorXcd currents;  // loop currents, A
  Eigen::VectorXcd voltages;  // coil voltages, V; voltages[driven] == input_impedance
};

PointResponse respond_at(const ValidatedArray& array, std::size_t driven, double omega);

/// Port impedance matrix with one port across every element's capacitor:
/// entry (m, n) is the voltage at port m per ampere injected at port n with
/// all other ports open. Diagonal entry n is the input impedance when
/// driving element n.
Eigen::MatrixXcd port_impedance_matrix(const ValidatedArray& array, double omega);

// Voltage at element `to` per ampere driven into element `from`.
Complex transfer_impedance(const ValidatedArray& array, std::size_t from, std::size_t to,
                           double omega);

struct SweepResult {
  std::size_t driven = 0;
  std::vector<double> frequencies_hz;
  std::vector<Complex> input_impedance;
  Eigen::MatrixXcd element_currents;  // N x points
  Eigen::MatrixXcd element_voltages;  // N x points
  std::vector<bool> singular;         // points where the lossless system had no solution

  std::size_t size() const { return frequencies_hz.size(); }
  std::vector<double> magnitude() const;
};

// Evaluates the grid, optionally across `threads` workers (0 = automatic).
// Singular points are flagged and hold NaN; they do not abort the sweep.
SweepResult sweep(const ValidatedArray& array, const DriveSpec& drive, unsigned threads = 0);

// Same, over explicit frequencies (hertz, ascending).
SweepResult sweep_frequencies(const ValidatedArray& array, std::size_t driven,
                              std::vector<double> frequencies_hz, unsigned threads = 0);

}  // namespace mrc
