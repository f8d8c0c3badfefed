#pragma once

#include <cstddef>
#include <limits>
#include <numbers>
#include <span>
#include <vector>

#include <Eigen/Dense>

#include "mrc/error.hpp"

namespace mrc {

inline constexpr double kTwoPi = 2.0 * std::numbers::pi;

inline double to_hertz(double omega) { return omega / kTwoPi; }
inline double to_angular(double hertz) { return hertz * kTwoPi; }

// Lumped parameters of one resonator, strict SI (H, F, Ohm).
struct CoilCircuit {
  double inductance = 0.0;
  double capacitance = 0.0;
  double resistance = 0.0;

  // 1/sqrt(LC), rad/s.
  double natural_omega() const;
};

// Coil array description as supplied by the user; not yet checked.
struct ArrayModel {
  std::vector<CoilCircuit> coils;
  Eigen::MatrixXd coupling;

  std::size_t size() const { return coils.size(); }
};

/// An ArrayModel that passed every physical check: positive components,
/// symmetric coupling with unit diagonal, |k| < 1 off the diagonal, and a
/// positive-definite coupling matrix. Only `validate_array` constructs one,
/// so downstream code never re-checks.
class ValidatedArray {
 public:
  const std::vector<CoilCircuit>& coils() const { return model_.coils; }
  const Eigen::MatrixXd& coupling() const { return model_.coupling; }
  const ArrayModel& model() const { return model_; }
  std::size_t size() const { return model_.coils.size(); }

 private:
  explicit ValidatedArray(ArrayModel model) : model_(std::move(model)) {}
  friend ValidatedArray validate_array(ArrayModel model);

  ArrayModel model_;
};

enum class GridSpacing { Linear, Logarithmic };

struct FrequencyGrid {
  double start_hz = 0.0;
  double stop_hz = 0.0;
  std::size_t points = 0;
  GridSpacing spacing = GridSpacing::Linear;

  // Throws InvalidGrid unless 0 < start < stop and points >= 2.
  void validate() const;
  std::vector<double> values_hz() const;
};

// Entry point for every model; throws mrc::Error naming the violated invariant.
ValidatedArray validate_array(ArrayModel model);

// M_nm = k_nm sqrt(L_n L_m), henries.
Eigen::MatrixXd mutual_inductance_matrix(const ValidatedArray& array);

// Uncoupled resonance of each element, hertz.
std::vector<double> natural_frequencies(const ValidatedArray& array);

// Sentinel decay exponent: couple nearest neighbours only.
inline constexpr double kNearestNeighborOnly = std::numeric_limits<double>::infinity();

/// Linear array where elements d indices apart couple with k_nn / d^decay.
/// With decay == kNearestNeighborOnly the matrix is tridiagonal.
ValidatedArray build_linear_chain(std::span<const CoilCircuit> coils, double k_nn,
                                  double decay_exponent = kNearestNeighborOnly);

// Every pair coupled with the same k (the N=3 case is the close-packed triangle).
ValidatedArray build_close_packed(std::span<const CoilCircuit> coils, double k);

// Same coupling, every coil's resistance replaced.
ValidatedArray with_resistance(const ValidatedArray& array, double resistance);

// N identical coils.
std::vector<CoilCircuit> identical_coils(std::size_t count, const CoilCircuit& coil);

}  // namespace mrc
