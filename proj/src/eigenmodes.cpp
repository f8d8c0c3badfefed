#include "mrc/eigenmodes.hpp"

#include <cmath>
#include <string>

namespace mrc {

namespace {

constexpr double kRouteAgreement = 1e-10;
constexpr double kTieTolerance = 1e-9;

Eigen::MatrixXd inverse_spd(const Eigen::MatrixXd& a, const char* what) {
  Eigen::LLT<Eigen::MatrixXd> llt(a);
  if (llt.info() != Eigen::Success) {
    throw Error(ErrorCode::SingularCoupling, std::string(what) + " is not invertible");
  }
  return llt.solve(Eigen::MatrixXd::Identity(a.rows(), a.cols()));
}

// Orthonormal basis of span(basis) made from its projections of e_0, e_1, ...
// so the result does not depend on which basis the eigensolver returned.
Eigen::MatrixXd canonical_basis(const Eigen::MatrixXd& basis) {
  const auto n = basis.rows();
  const auto g = basis.cols();
  const Eigen::MatrixXd projector = basis * basis.transpose();
  Eigen::MatrixXd out(n, g);
  Eigen::Index found = 0;
  for (Eigen::Index j = 0; j < n && found < g; ++j) {
    Eigen::VectorXd v = projector.col(j);
    for (int pass = 0; pass < 2; ++pass) {
      for (Eigen::Index c = 0; c < found; ++c) v -= out.col(c).dot(v) * out.col(c);
    }
    const double norm = v.norm();
    if (norm > 1e-8) out.col(found++) = v / norm;
  }
  return found == g ? out : basis;
}

// Max-abs component becomes exactly +1; ties go to the first index.
void normalize_shape(Eigen::Ref<Eigen::VectorXd> v) {
  const double peak = v.cwiseAbs().maxCoeff();
  if (peak == 0.0) return;
  Eigen::Index lead = 0;
  for (Eigen::Index i = 0; i < v.size(); ++i) {
    if (std::abs(v(i)) >= peak * (1.0 - kTieTolerance)) {
      lead = i;
      break;
    }
  }
  v /= v(lead);
  v(lead) = 1.0;
}

}  // namespace

std::size_t ModeSet::group_of(std::size_t mode) const {
  for (std::size_t g = 0; g < degeneracy_groups.size(); ++g) {
    for (auto m : degeneracy_groups[g]) {
      if (m == mode) return g;
    }
  }
  throw Error(ErrorCode::InvalidArgument, "mode index " + std::to_string(mode) + " out of range");
}

Eigen::MatrixXd characteristic_matrix(const ValidatedArray& array) {
  const auto n = static_cast<Eigen::Index>(array.size());
  Eigen::VectorXd omega(n);
  Eigen::VectorXd root_c(n);
  for (Eigen::Index i = 0; i < n; ++i) {
    const auto& coil = array.coils()[static_cast<std::size_t>(i)];
    omega(i) = coil.natural_omega();
    root_c(i) = std::sqrt(coil.capacitance);
  }

  const Eigen::MatrixXd k_inv = inverse_spd(array.coupling(), "coupling matrix");
  Eigen::MatrixXd via_coupling = omega.asDiagonal() * k_inv * omega.asDiagonal();
  via_coupling = 0.5 * (via_coupling + via_coupling.transpose()).eval();

  const Eigen::MatrixXd scaled_m =
      root_c.asDiagonal() * mutual_inductance_matrix(array) * root_c.asDiagonal();
  const Eigen::MatrixXd via_capacitance = inverse_spd(scaled_m, "scaled inductance matrix");

  const double gap = (via_coupling - via_capacitance).norm();
  if (!(gap <= kRouteAgreement * via_coupling.norm())) {
    throw Error(ErrorCode::SingularCoupling,
                "characteristic matrix routes disagree (relative gap " +
                    std::to_string(gap / via_coupling.norm()) + "); coupling is ill-conditioned");
  }
  return via_coupling;
}

ModeSet solve_modes(const ValidatedArray& array) {
  const Eigen::MatrixXd omega_matrix = characteristic_matrix(array);
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver(omega_matrix);
  if (solver.info() != Eigen::Success) {
    throw Error(ErrorCode::SingularCoupling, "eigen-decomposition failed");
  }

  ModeSet modes;
  modes.eigenvalues = solver.eigenvalues();
  modes.mode_shapes = solver.eigenvectors();
  const auto n = modes.eigenvalues.size();
  if (!(modes.eigenvalues(0) > 0.0)) {
    throw Error(ErrorCode::SingularCoupling, "characteristic matrix has a non-positive eigenvalue");
  }

  for (Eigen::Index i = 0; i < n; ++i) {
    const double lambda = modes.eigenvalues(i);
    const bool starts_group =
        i == 0 || (lambda - modes.eigenvalues(i - 1)) > kDegeneracyGap * lambda;
    if (starts_group) modes.degeneracy_groups.emplace_back();
    modes.degeneracy_groups.back().push_back(static_cast<std::size_t>(i));
  }

  for (const auto& group : modes.degeneracy_groups) {
    if (group.size() < 2) continue;
    const auto first = static_cast<Eigen::Index>(group.front());
    const auto width = static_cast<Eigen::Index>(group.size());
    modes.mode_shapes.middleCols(first, width) =
        canonical_basis(modes.mode_shapes.middleCols(first, width));
  }

  modes.frequencies_hz.reserve(static_cast<std::size_t>(n));
  for (Eigen::Index i = 0; i < n; ++i) {
    normalize_shape(modes.mode_shapes.col(i));
    modes.frequencies_hz.push_back(to_hertz(std::sqrt(modes.eigenvalues(i))));
  }
  return modes;
}

bool is_node(const ModeSet& modes, std::size_t mode, std::size_t element, double node_tolerance) {
  const auto col = modes.mode_shapes.col(static_cast<Eigen::Index>(mode));
  const double peak = col.cwiseAbs().maxCoeff();
  return std::abs(col(static_cast<Eigen::Index>(element))) < node_tolerance * peak;
}

ModeClassification classify_modes(const ModeSet& modes, double node_tolerance) {
  if (!(node_tolerance > 0.0 && node_tolerance <= 0.1)) {
    throw Error(ErrorCode::InvalidArgument, "node tolerance must lie in (0, 0.1]");
  }
  ModeClassification out;
  const std::size_t n = modes.size();
  out.nodes.resize(n);
  out.visible_from.resize(n);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t e = 0; e < n; ++e) {
      (is_node(modes, i, e, node_tolerance) ? out.nodes : out.visible_from)[i].push_back(e);
    }
  }
  return out;
}

std::size_t predicted_peak_count(const ModeSet& modes, std::size_t drive, double node_tolerance) {
  if (drive >= modes.size()) {
    throw Error(ErrorCode::InvalidArgument, "drive index " + std::to_string(drive + 1) +
                                                " outside array of " +
                                                std::to_string(modes.size()));
  }
  std::size_t count = 0;
  for (const auto& group : modes.degeneracy_groups) {
    for (auto mode : group) {
      if (!is_node(modes, mode, drive, node_tolerance)) {
        ++count;
        break;
      }
    }
  }
  return count;
}

}  // namespace mrc
