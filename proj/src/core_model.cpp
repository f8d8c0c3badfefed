#include "mrc/core_model.hpp"

#include <cmath>
#include <sstream>
#include <string>

namespace mrc {

namespace {

constexpr double kSymmetryTol = 1e-12;
constexpr double kDiagonalTol = 1e-12;

std::string element(std::size_t n, std::size_t m) {
  std::ostringstream os;
  os << "(" << n + 1 << "," << m + 1 << ")";
  return os.str();
}

void check_coupling_parameter(double k) {
  if (!std::isfinite(k) || k <= 0.0 || k >= 1.0) {
    throw Error(ErrorCode::CouplingOutOfRange,
                "coupling coefficient " + std::to_string(k) + " must lie in (0, 1)");
  }
}

}  // namespace

double CoilCircuit::natural_omega() const { return 1.0 / std::sqrt(inductance * capacitance); }

void FrequencyGrid::validate() const {
  if (!std::isfinite(start_hz) || !std::isfinite(stop_hz) || start_hz <= 0.0 ||
      stop_hz <= start_hz) {
    throw Error(ErrorCode::InvalidGrid, "frequency grid needs 0 < start < stop");
  }
  if (points < 2) throw Error(ErrorCode::InvalidGrid, "frequency grid needs at least 2 points");
}

std::vector<double> FrequencyGrid::values_hz() const {
  validate();
  std::vector<double> out(points);
  const double last = static_cast<double>(points - 1);
  if (spacing == GridSpacing::Linear) {
    const double step = (stop_hz - start_hz) / last;
    for (std::size_t i = 0; i < points; ++i) out[i] = start_hz + step * static_cast<double>(i);
  } else {
    const double lo = std::log(start_hz);
    const double step = (std::log(stop_hz) - lo) / last;
    for (std::size_t i = 0; i < points; ++i) out[i] = std::exp(lo + step * static_cast<double>(i));
  }
  out.back() = stop_hz;
  return out;
}

ValidatedArray validate_array(ArrayModel model) {
  const std::size_t n = model.coils.size();
  if (n == 0) throw Error(ErrorCode::DimensionMismatch, "array has no coils");
  if (static_cast<std::size_t>(model.coupling.rows()) != n ||
      static_cast<std::size_t>(model.coupling.cols()) != n) {
    std::ostringstream os;
    os << "coupling matrix is " << model.coupling.rows() << "x" << model.coupling.cols()
       << " but the array has " << n << " coils";
    throw Error(ErrorCode::DimensionMismatch, os.str());
  }

  for (std::size_t i = 0; i < n; ++i) {
    const auto& c = model.coils[i];
    const bool ok = std::isfinite(c.inductance) && std::isfinite(c.capacitance) &&
                    std::isfinite(c.resistance) && c.inductance > 0.0 && c.capacitance > 0.0 &&
                    c.resistance >= 0.0;
    if (!ok) {
      throw Error(ErrorCode::NonPositiveComponent,
                  "coil " + std::to_string(i + 1) + " needs L > 0, C > 0, R >= 0");
    }
  }

  const auto& k = model.coupling;
  if (!k.allFinite()) throw Error(ErrorCode::CouplingOutOfRange, "coupling matrix has non-finite entries");
  for (std::size_t i = 0; i < n; ++i) {
    if (std::abs(k(i, i) - 1.0) > kDiagonalTol) {
      throw Error(ErrorCode::DiagonalNotUnity, "k" + element(i, i) + " must equal 1");
    }
  }
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = i + 1; j < n; ++j) {
      if (std::abs(k(i, j) - k(j, i)) > kSymmetryTol) {
        throw Error(ErrorCode::NonSymmetricCoupling,
                    "k" + element(i, j) + " differs from k" + element(j, i));
      }
    }
  }
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = i + 1; j < n; ++j) {
      if (std::abs(k(i, j)) >= 1.0) {
        throw Error(ErrorCode::CouplingOutOfRange, "|k" + element(i, j) + "| must be < 1");
      }
    }
  }

  // Symmetrize exactly so later factorizations see a true symmetric matrix.
  model.coupling = 0.5 * (k + k.transpose());
  Eigen::LLT<Eigen::MatrixXd> llt(model.coupling);
  if (llt.info() != Eigen::Success) {
    throw Error(ErrorCode::NotPositiveDefinite,
                "coupling matrix is not positive-definite (no physical mutual inductance matrix)");
  }
  return ValidatedArray(std::move(model));
}

Eigen::MatrixXd mutual_inductance_matrix(const ValidatedArray& array) {
  const auto n = static_cast<Eigen::Index>(array.size());
  Eigen::VectorXd root_l(n);
  for (Eigen::Index i = 0; i < n; ++i) root_l(i) = std::sqrt(array.coils()[i].inductance);
  Eigen::MatrixXd m = root_l.asDiagonal() * array.coupling() * root_l.asDiagonal();
  for (Eigen::Index i = 0; i < n; ++i) m(i, i) = array.coils()[i].inductance;
  return m;
}

std::vector<double> natural_frequencies(const ValidatedArray& array) {
  std::vector<double> out;
  out.reserve(array.size());
  for (const auto& c : array.coils()) out.push_back(to_hertz(c.natural_omega()));
  return out;
}

ValidatedArray build_linear_chain(std::span<const CoilCircuit> coils, double k_nn,
                                  double decay_exponent) {
  check_coupling_parameter(k_nn);
  if (std::isnan(decay_exponent) || decay_exponent < 0.0) {
    throw Error(ErrorCode::InvalidArgument, "decay exponent must be >= 0");
  }
  const auto n = static_cast<Eigen::Index>(coils.size());
  Eigen::MatrixXd k = Eigen::MatrixXd::Identity(n, n);
  for (Eigen::Index i = 0; i < n; ++i) {
    for (Eigen::Index j = i + 1; j < n; ++j) {
      const auto d = static_cast<double>(j - i);
      double value = 0.0;
      if (d == 1.0) {
        value = k_nn;
      } else if (std::isfinite(decay_exponent)) {
        value = k_nn / std::pow(d, decay_exponent);
      }
      k(i, j) = k(j, i) = value;
    }
  }
  return validate_array({{coils.begin(), coils.end()}, std::move(k)});
}

ValidatedArray build_close_packed(std::span<const CoilCircuit> coils, double k) {
  check_coupling_parameter(k);
  const auto n = static_cast<Eigen::Index>(coils.size());
  Eigen::MatrixXd kmat = Eigen::MatrixXd::Constant(n, n, k);
  kmat.diagonal().setOnes();
  return validate_array({{coils.begin(), coils.end()}, std::move(kmat)});
}

ValidatedArray with_resistance(const ValidatedArray& array, double resistance) {
  ArrayModel model = array.model();
  for (auto& c : model.coils) c.resistance = resistance;
  return validate_array(std::move(model));
}

std::vector<CoilCircuit> identical_coils(std::size_t count, const CoilCircuit& coil) {
  return std::vector<CoilCircuit>(count, coil);
}

}  // namespace mrc
