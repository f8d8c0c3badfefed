#pragma once

// Test-side oracles and random generators. Nothing here calls into the
// library's solvers; the oracles restate the circuit from scratch.

#include <algorithm>
#include <cmath>
#include <complex>
#include <numbers>
#include <random>
#include <vector>

#include <Eigen/Dense>
#include <Eigen/Eigenvalues>

#include "mrc/core_model.hpp"

namespace mrc::test {

inline std::vector<CoilCircuit> fig4_coils(std::size_t n, double r = 10.0) {
  return std::vector<CoilCircuit>(n, CoilCircuit{10e-6, 150e-12, r});
}

// Lossless loop equations (w^2 M - diag(1/C)) I = 0 posed as the generalised
// problem diag(1/C) x = w^2 M x. Returns ascending hertz.
inline std::vector<double> oracle_eigenfrequencies(const std::vector<CoilCircuit>& coils,
                                                   const Eigen::MatrixXd& k) {
  const auto n = static_cast<Eigen::Index>(coils.size());
  Eigen::MatrixXd m(n, n);
  Eigen::MatrixXd a = Eigen::MatrixXd::Zero(n, n);
  for (Eigen::Index i = 0; i < n; ++i) {
    a(i, i) = 1.0 / coils[i].capacitance;
    for (Eigen::Index j = 0; j < n; ++j) {
      m(i, j) = k(i, j) * std::sqrt(coils[i].inductance * coils[j].inductance);
    }
  }
  Eigen::GeneralizedSelfAdjointEigenSolver<Eigen::MatrixXd> es(a, m);
  std::vector<double> f;
  for (Eigen::Index i = 0; i < n; ++i) f.push_back(std::sqrt(es.eigenvalues()(i)) / kTwoPi);
  std::sort(f.begin(), f.end());
  return f;
}

// Element voltages for a 1 A source across the driven element's capacitor.
// Unknowns are the port voltage and every loop current; the driven
// capacitor current is eliminated through I_src = iwC V + I_d.
inline Eigen::VectorXcd oracle_voltages(const std::vector<CoilCircuit>& coils,
                                        const Eigen::MatrixXd& k, std::size_t driven,
                                        double f_hz) {
  using C = std::complex<double>;
  const C j(0.0, 1.0);
  const double w = kTwoPi * f_hz;
  const auto n = static_cast<Eigen::Index>(coils.size());
  const auto d = static_cast<Eigen::Index>(driven);
  Eigen::MatrixXcd a = Eigen::MatrixXcd::Zero(n + 1, n + 1);
  Eigen::VectorXcd b = Eigen::VectorXcd::Zero(n + 1);
  auto mut = [&](Eigen::Index p, Eigen::Index q) {
    return j * w * k(p, q) * std::sqrt(coils[p].inductance * coils[q].inductance);
  };
  // unknown 0: V, unknowns 1..n: loop currents
  a(0, 0) = j * w * coils[d].capacitance;
  a(0, 1 + d) = 1.0;
  b(0) = 1.0;
  for (Eigen::Index p = 0; p < n; ++p) {
    for (Eigen::Index q = 0; q < n; ++q) {
      if (p != q) a(1 + p, 1 + q) = mut(p, q);
    }
    a(1 + p, 1 + p) = coils[p].resistance + j * w * coils[p].inductance;
    if (p == d) {
      a(1 + p, 0) = -1.0;
    } else {
      a(1 + p, 1 + p) += 1.0 / (j * w * coils[p].capacitance);
    }
  }
  const Eigen::VectorXcd x = a.fullPivLu().solve(b);
  Eigen::VectorXcd v(n);
  for (Eigen::Index p = 0; p < n; ++p) {
    v(p) = p == d ? x(0) : -x(1 + p) / (j * w * coils[p].capacitance);
  }
  return v;
}

// Peak of |Z| for a single parallel RLC tank (lossy inductor branch).
inline double oracle_single_tank_peak_hz(const CoilCircuit& c) {
  const double a = c.resistance * c.resistance * c.capacitance / c.inductance;
  const double w2 = (std::sqrt(1.0 + 2.0 * a) - a) / (c.inductance * c.capacitance);
  return std::sqrt(w2) / kTwoPi;
}

inline Eigen::MatrixXd chain_matrix(std::size_t n, double k) {
  Eigen::MatrixXd m = Eigen::MatrixXd::Identity(n, n);
  for (std::size_t i = 0; i + 1 < n; ++i) m(i, i + 1) = m(i + 1, i) = k;
  return m;
}

inline Eigen::MatrixXd uniform_matrix(std::size_t n, double k) {
  Eigen::MatrixXd m = Eigen::MatrixXd::Constant(n, n, k);
  m.diagonal().setOnes();
  return m;
}

// Identical-coil linear chain: K eigenvalues 1 + 2k cos(j pi / (n + 1)).
inline std::vector<double> chain_closed_form_hz(std::size_t n, double l, double c, double k) {
  const double f0 = 1.0 / (kTwoPi * std::sqrt(l * c));
  std::vector<double> f;
  for (std::size_t j = 1; j <= n; ++j) {
    const double lam = 1.0 + 2.0 * k * std::cos(static_cast<double>(j) * std::numbers::pi /
                                                 static_cast<double>(n + 1));
    f.push_back(f0 / std::sqrt(lam));
  }
  std::sort(f.begin(), f.end());
  return f;
}

inline double rel(double a, double b) { return std::abs(a - b) / std::abs(b); }

// Hand-rolled generators for the property tests.
class Gen {
 public:
  explicit Gen(unsigned seed) : rng_(seed) {}

  double uniform(double lo, double hi) { return std::uniform_real_distribution<>(lo, hi)(rng_); }
  double log_uniform(double lo, double hi) {
    return std::exp(uniform(std::log(lo), std::log(hi)));
  }
  std::size_t integer(std::size_t lo, std::size_t hi) {
    return std::uniform_int_distribution<std::size_t>(lo, hi)(rng_);
  }

  CoilCircuit coil(double r_lo = 0.1, double r_hi = 20.0) {
    return {log_uniform(1e-6, 50e-6), log_uniform(50e-12, 2e-9), log_uniform(r_lo, r_hi)};
  }

  std::vector<CoilCircuit> coils(std::size_t n, double r_lo = 0.1, double r_hi = 20.0) {
    std::vector<CoilCircuit> out;
    for (std::size_t i = 0; i < n; ++i) out.push_back(coil(r_lo, r_hi));
    return out;
  }

  // Symmetric, unit diagonal, positive definite; off-diagonal |k| <= k_max.
  Eigen::MatrixXd coupling(std::size_t n, double k_max = 0.3) {
    for (;;) {
      Eigen::MatrixXd m = Eigen::MatrixXd::Identity(n, n);
      for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = i + 1; j < n; ++j) m(i, j) = m(j, i) = uniform(-k_max, k_max);
      }
      if (Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd>(m).eigenvalues().minCoeff() > 0.05) {
        return m;
      }
    }
  }

 private:
  std::mt19937 rng_;
};

}  // namespace mrc::test
