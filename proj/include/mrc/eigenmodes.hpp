#pragma once

#include <cstddef>
#include <vector>

#include <Eigen/Dense>

#include "mrc/core_model.hpp"

namespace mrc {

// Relative eigenvalue gap below which two modes are treated as degenerate.
inline constexpr double kDegeneracyGap = 1e-9;
inline constexpr double kDefaultNodeTolerance = 1e-6;

struct ModeSet {
  std::vector<double> frequencies_hz;  // ascending
  Eigen::VectorXd eigenvalues;         // omega_i^2, (rad/s)^2, ascending
  Eigen::MatrixXd mode_shapes;         // column i: max-abs component is +1
  std::vector<std::vector<std::size_t>> degeneracy_groups;

  std::size_t size() const { return frequencies_hz.size(); }
  // Index of the degeneracy group holding mode i.
  std::size_t group_of(std::size_t mode) const;
};

struct ModeClassification {
  std::vector<std::vector<std::size_t>> nodes;         // per mode, 0-based elements
  std::vector<std::vector<std::size_t>> visible_from;  // complement of nodes
};

/// Characteristic matrix Omega K^-1 Omega with Omega = diag(1/sqrt(L_n C_n)).
/// Also forms [C^1/2 M C^1/2]^-1 and throws SingularCoupling if the two
/// disagree by more than 1e-10 relative (Frobenius).
Eigen::MatrixXd characteristic_matrix(const ValidatedArray& array);

/// Resonant frequencies and voltage mode shapes of the lossless array.
/// Degenerate eigenspaces get a deterministic orthogonal basis.
ModeSet solve_modes(const ValidatedArray& array);

ModeClassification classify_modes(const ModeSet& modes,
                                  double node_tolerance = kDefaultNodeTolerance);

// Distinct eigenvalue groups that have at least one mode not nodal at `drive`.
std::size_t predicted_peak_count(const ModeSet& modes, std::size_t drive,
                                 double node_tolerance = kDefaultNodeTolerance);

// Whether `element` is a node of `mode`.
bool is_node(const ModeSet& modes, std::size_t mode, std::size_t element,
             double node_tolerance = kDefaultNodeTolerance);

}  // namespace mrc
