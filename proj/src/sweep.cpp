#include "mrc/sweep.hpp"

#include <algorithm>
#include <cmath>
#include <exception>
#include <limits>
#include <optional>
#include <string>
#include <thread>

namespace mrc {

namespace {

constexpr Complex kI{0.0, 1.0};
// Loop matrices are scaled by each loop's reactance wL before this test, so
// the threshold is an absolute bound on the smallest singular value.
constexpr double kSingularScale = 1e-13;
constexpr std::size_t kPointsPerThread = 256;

// LU of diag(s) z diag(s), s = 1/sqrt(wL); nullopt when (near) singular.
std::optional<Eigen::PartialPivLU<Eigen::MatrixXcd>> scaled_lu(const Eigen::MatrixXcd& z,
                                                               const Eigen::VectorXd& s) {
  const Eigen::MatrixXcd zn = s.asDiagonal() * z * s.asDiagonal();
  Eigen::PartialPivLU<Eigen::MatrixXcd> lu(zn);
  const double norm1 = zn.cwiseAbs().colwise().sum().maxCoeff();
  const double sigma = lu.rcond() * norm1;
  if (!std::isfinite(sigma) || !(sigma > kSingularScale)) return std::nullopt;
  return lu;
}

void check_index(const ValidatedArray& array, std::size_t index) {
  if (index >= array.size()) {
    throw Error(ErrorCode::InvalidArgument, "element index " + std::to_string(index + 1) +
                                                " outside array of " +
                                                std::to_string(array.size()));
  }
}

void check_omega(double omega) {
  if (!(omega > 0.0) || !std::isfinite(omega)) {
    throw Error(ErrorCode::InvalidArgument, "angular frequency must be positive");
  }
}

Eigen::VectorXd resistances(const ValidatedArray& array) {
  Eigen::VectorXd r(static_cast<Eigen::Index>(array.size()));
  for (std::size_t i = 0; i < array.size(); ++i) {
    r(static_cast<Eigen::Index>(i)) = array.coils()[i].resistance;
  }
  return r;
}

// Per-call context so a sweep builds M once.
struct Solver {
  const ValidatedArray& array;
  std::size_t driven;
  Eigen::MatrixXd mutual;
  Eigen::VectorXd r;

  Solver(const ValidatedArray& a, std::size_t d)
      : array(a), driven(d), mutual(mutual_inductance_matrix(a)), r(resistances(a)) {}

  Eigen::MatrixXcd assemble(double omega) const {
    const auto n = static_cast<Eigen::Index>(array.size());
    Eigen::MatrixXcd z = (kI * omega) * mutual.cast<Complex>();
    for (Eigen::Index i = 0; i < n; ++i) {
      z(i, i) += r(i);
      if (static_cast<std::size_t>(i) != driven) {
        z(i, i) += 1.0 / (kI * omega * array.coils()[static_cast<std::size_t>(i)].capacitance);
      }
    }
    return z;
  }

  CoilSolution solve(double omega) const {
    const Eigen::MatrixXcd z = assemble(omega);
    const auto n = z.rows();
    const auto d = static_cast<Eigen::Index>(driven);
    Eigen::VectorXcd currents = Eigen::VectorXcd::Zero(n);
    currents(d) = 1.0;
    if (n == 1) return {z(0, 0), currents};

    // Passive block and its coupling to the driven loop, driven index removed.
    std::vector<Eigen::Index> passive;
    for (Eigen::Index i = 0; i < n; ++i) {
      if (i != d) passive.push_back(i);
    }
    const auto p = static_cast<Eigen::Index>(passive.size());
    Eigen::MatrixXcd zpp(p, p);
    Eigen::VectorXcd rhs(p);
    Eigen::VectorXd s(p);
    for (Eigen::Index a = 0; a < p; ++a) {
      rhs(a) = -z(passive[a], d);
      s(a) = 1.0 / std::sqrt(omega * array.coils()[static_cast<std::size_t>(passive[a])].inductance);
      for (Eigen::Index b = 0; b < p; ++b) zpp(a, b) = z(passive[a], passive[b]);
    }
    const auto lu = scaled_lu(zpp, s);
    if (!lu) {
      throw Error(ErrorCode::SingularAtFrequency,
                  "passive loops are singular at " + std::to_string(to_hertz(omega)) + " Hz");
    }
    const Eigen::VectorXcd ip = s.asDiagonal() * lu->solve(s.asDiagonal() * rhs);
    Complex v = z(d, d);
    for (Eigen::Index a = 0; a < p; ++a) {
      currents(passive[a]) = ip(a);
      v += z(d, passive[a]) * ip(a);
    }
    return {v, currents};
  }

  PointResponse respond(double omega) const {
    CoilSolution coil = solve(omega);
    const double c = array.coils()[driven].capacitance;
    // Z0 = Zc / (1 + iwC Zc); the factor is the share of the source current
    // that flows through the coil branch.
    const Complex denom = 1.0 + kI * omega * c * coil.coil_impedance;
    const double scale = std::max(1.0, std::abs(coil.coil_impedance * omega * c));
    if (std::abs(denom) <= 1e-14 * scale) {
      throw Error(ErrorCode::SingularAtFrequency,
                  "driven parallel LC is singular at " + std::to_string(to_hertz(omega)) + " Hz");
    }
    const Complex coil_share = 1.0 / denom;
    PointResponse out;
    out.input_impedance = coil.coil_impedance * coil_share;
    out.currents = coil.currents * coil_share;
    out.voltages = (r.cast<Complex>().asDiagonal() * out.currents) +
                   (kI * omega) * (mutual.cast<Complex>() * out.currents);
    out.voltages(static_cast<Eigen::Index>(driven)) = out.input_impedance;
    return out;
  }
};

}  // namespace

Complex passive_impedance(const CoilCircuit& coil, double omega) {
  check_omega(omega);
  return coil.resistance + 1.0 / (kI * omega * coil.capacitance) + kI * omega * coil.inductance;
}

Eigen::MatrixXcd assemble_system(const ValidatedArray& array, std::size_t driven, double omega) {
  check_index(array, driven);
  check_omega(omega);
  return Solver(array, driven).assemble(omega);
}

CoilSolution solve_at(const ValidatedArray& array, std::size_t driven, double omega) {
  check_index(array, driven);
  check_omega(omega);
  return Solver(array, driven).solve(omega);
}

Complex input_impedance(const ValidatedArray& array, std::size_t driven, double omega) {
  return respond_at(array, driven, omega).input_impedance;
}

PointResponse respond_at(const ValidatedArray& array, std::size_t driven, double omega) {
  check_index(array, driven);
  check_omega(omega);
  return Solver(array, driven).respond(omega);
}

Eigen::MatrixXcd port_impedance_matrix(const ValidatedArray& array, double omega) {
  check_omega(omega);
  const auto n = static_cast<Eigen::Index>(array.size());
  // All loops closed through their capacitors: Zloop = R + iwM + 1/(iwC).
  Eigen::MatrixXcd zloop = (kI * omega) * mutual_inductance_matrix(array).cast<Complex>();
  Eigen::VectorXcd d(n);
  Eigen::VectorXd s(n);
  for (Eigen::Index i = 0; i < n; ++i) {
    const auto& coil = array.coils()[static_cast<std::size_t>(i)];
    d(i) = 1.0 / (kI * omega * coil.capacitance);
    s(i) = 1.0 / std::sqrt(omega * coil.inductance);
    zloop(i, i) += coil.resistance + d(i);
  }
  const auto lu = scaled_lu(zloop, s);
  if (!lu) {
    throw Error(ErrorCode::SingularAtFrequency,
                "loop system is singular at " + std::to_string(to_hertz(omega)) + " Hz");
  }
  const Eigen::MatrixXcd dd = d.asDiagonal();
  const Eigen::MatrixXcd sd = s.asDiagonal() * dd;
  Eigen::MatrixXcd zp = Eigen::MatrixXcd(dd) - sd.transpose() * lu->solve(sd);
  return zp;
}

Complex transfer_impedance(const ValidatedArray& array, std::size_t from, std::size_t to,
                           double omega) {
  check_index(array, from);
  check_index(array, to);
  return respond_at(array, from, omega).voltages(static_cast<Eigen::Index>(to));
}

std::vector<double> SweepResult::magnitude() const {
  std::vector<double> out(input_impedance.size());
  std::transform(input_impedance.begin(), input_impedance.end(), out.begin(),
                 [](Complex z) { return std::abs(z); });
  return out;
}

SweepResult sweep(const ValidatedArray& array, const DriveSpec& drive, unsigned threads) {
  return sweep_frequencies(array, drive.driven, drive.grid.values_hz(), threads);
}

SweepResult sweep_frequencies(const ValidatedArray& array, std::size_t driven,
                              std::vector<double> frequencies_hz, unsigned threads) {
  check_index(array, driven);
  const auto points = frequencies_hz.size();
  const auto n = static_cast<Eigen::Index>(array.size());
  const Solver solver(array, driven);

  SweepResult out;
  out.driven = driven;
  out.frequencies_hz = std::move(frequencies_hz);
  out.input_impedance.assign(points, Complex{});
  out.element_currents.resize(n, static_cast<Eigen::Index>(points));
  out.element_voltages.resize(n, static_cast<Eigen::Index>(points));
  out.singular.assign(points, false);
  // vector<bool> is not safe for concurrent writes.
  std::vector<unsigned char> singular(points, 0);

  auto evaluate = [&](std::size_t begin, std::size_t end) {
    const double nan = std::numeric_limits<double>::quiet_NaN();
    for (std::size_t i = begin; i < end; ++i) {
      const auto col = static_cast<Eigen::Index>(i);
      try {
        const PointResponse r = solver.respond(to_angular(out.frequencies_hz[i]));
        out.input_impedance[i] = r.input_impedance;
        out.element_currents.col(col) = r.currents;
        out.element_voltages.col(col) = r.voltages;
      } catch (const Error& e) {
        if (e.code() != ErrorCode::SingularAtFrequency) throw;
        singular[i] = 1;
        out.input_impedance[i] = Complex(nan, nan);
        out.element_currents.col(col).setConstant(Complex(nan, nan));
        out.element_voltages.col(col).setConstant(Complex(nan, nan));
      }
    }
  };

  if (threads == 0) {
    threads = std::max(1u, std::thread::hardware_concurrency());
  }
  const auto max_useful = static_cast<unsigned>(std::max<std::size_t>(1, points / kPointsPerThread));
  threads = std::min(threads, max_useful);
  if (threads <= 1) {
    evaluate(0, points);
  } else {
    std::vector<std::exception_ptr> failures(threads);
    {
      std::vector<std::jthread> workers;
      const std::size_t chunk = (points + threads - 1) / threads;
      for (unsigned t = 0; t < threads; ++t) {
        const std::size_t begin = t * chunk;
        const std::size_t end = std::min(points, begin + chunk);
        if (begin >= end) break;
        workers.emplace_back([&, t, begin, end] {
          try {
            evaluate(begin, end);
          } catch (...) {
            failures[t] = std::current_exception();
          }
        });
      }
    }
    for (const auto& f : failures) {
      if (f) std::rethrow_exception(f);
    }
  }
  for (std::size_t i = 0; i < points; ++i) out.singular[i] = singular[i] != 0;
  return out;
}

}  // namespace mrc
