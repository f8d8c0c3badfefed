#include <cmath>

#include <gtest/gtest.h>

#include "mrc/core_model.hpp"
#include "mrc/error.hpp"
#include "mrc/two_coil.hpp"
#include "support.hpp"

using namespace mrc;
using mrc::test::Gen;

namespace {

// Lossless 2x2 loop determinant scaled to be dimensionless.
double scaled_determinant(const CoilCircuit& a, const CoilCircuit& b, double k, double w) {
  const double m = k * std::sqrt(a.inductance * b.inductance);
  const double d11 = 1.0 - w * w * a.inductance * a.capacitance;
  const double d22 = 1.0 - w * w * b.inductance * b.capacitance;
  const double off = w * w * m * std::sqrt(a.capacitance * b.capacitance);
  return d11 * d22 - off * off;
}

}  // namespace

TEST(IdenticalPair, KnownSplitAtK014) {
  const SplitPair p = identical_coupled_frequencies(10e-6, 150e-12, 0.14);
  // f0 / sqrt(1 +/- 0.14), f0 = 4.10936296 MHz
  EXPECT_NEAR(to_hertz(p.omega_plus), 3848771.04, 1.0);
  EXPECT_NEAR(to_hertz(p.omega_minus), 4431240.04, 1.0);
  EXPECT_LT(p.omega_plus, p.omega_minus);
}

TEST(IdenticalPair, KZeroIsDegenerate) {
  const SplitPair p = identical_coupled_frequencies(10e-6, 150e-12, 0.0);
  EXPECT_EQ(p.omega_plus, p.omega_minus);
  EXPECT_EQ(estimate_k_from_split(p), 0.0);
}

TEST(IdenticalPair, RejectsKOutsideUnitInterval) {
  EXPECT_THROW(identical_coupled_frequencies(10e-6, 150e-12, 1.0), Error);
  EXPECT_THROW(identical_coupled_frequencies(10e-6, 150e-12, -0.1), Error);
  EXPECT_THROW(coupled_frequencies_general({10e-6, 150e-12, 1}, {10e-6, 150e-12, 1}, 1.0), Error);
}

TEST(SplitInversion, OrderOfArgumentsDoesNotMatter) {
  const SplitPair p = identical_coupled_frequencies(10e-6, 150e-12, 0.3);
  const SplitPair swapped{p.omega_minus, p.omega_plus};
  EXPECT_NEAR(estimate_k_from_split(swapped), 0.3, 1e-14);
}

TEST(GeneralPair, RootsZeroTheLoopDeterminant) {
  Gen g(21);
  for (int trial = 0; trial < 200; ++trial) {
    const CoilCircuit a = g.coil();
    const CoilCircuit b = g.coil();
    const double k = g.uniform(0.0, 0.95);
    const SplitPair p = coupled_frequencies_general(a, b, k);
    EXPECT_LE(p.omega_plus, p.omega_minus);
    EXPECT_NEAR(scaled_determinant(a, b, k, p.omega_plus), 0.0, 1e-9) << "trial " << trial;
    EXPECT_NEAR(scaled_determinant(a, b, k, p.omega_minus), 0.0, 1e-9) << "trial " << trial;
  }
}

TEST(GeneralPair, ReducesToIdenticalForm) {
  for (double k : {0.01, 0.14, 0.5, 0.9}) {
    const CoilCircuit c{10e-6, 150e-12, 1.0};
    const SplitPair gen = coupled_frequencies_general(c, c, k);
    const SplitPair id = identical_coupled_frequencies(c.inductance, c.capacitance, k);
    EXPECT_NEAR(gen.omega_plus / id.omega_plus, 1.0, 1e-12);
    EXPECT_NEAR(gen.omega_minus / id.omega_minus, 1.0, 1e-12);
  }
}

TEST(GeneralPair, UncoupledReturnsNaturalFrequencies) {
  const CoilCircuit a{10e-6, 150e-12, 1.0};
  const CoilCircuit b{12e-6, 100e-12, 1.0};
  const SplitPair p = coupled_frequencies_general(a, b, 0.0);
  const double wa = a.natural_omega();
  const double wb = b.natural_omega();
  EXPECT_NEAR(p.omega_plus, std::min(wa, wb), 1e-6 * wa);
  EXPECT_NEAR(p.omega_minus, std::max(wa, wb), 1e-6 * wa);
}

TEST(RatioBranches, MatchDimensionalForm) {
  Gen g(8);
  for (int trial = 0; trial < 100; ++trial) {
    const CoilCircuit a = g.coil();
    const CoilCircuit b = g.coil();
    const double k = g.uniform(0.0, 0.9);
    const double w1 = a.natural_omega();
    const RatioBranches r = frequency_ratio_branches(b.natural_omega() / w1, k);
    const SplitPair p = coupled_frequencies_general(a, b, k);
    EXPECT_NEAR(r.r_plus * w1 / p.omega_plus, 1.0, 1e-10);
    EXPECT_NEAR(r.r_minus * w1 / p.omega_minus, 1.0, 1e-10);
  }
}

TEST(RatioBranches, EqualTuningGivesSqrtOneOverOnePlusMinusK) {
  const RatioBranches r = frequency_ratio_branches(1.0, 0.2);
  EXPECT_NEAR(r.r_plus, 1.0 / std::sqrt(1.2), 1e-14);
  EXPECT_NEAR(r.r_minus, 1.0 / std::sqrt(0.8), 1e-14);
}

TEST(Resolvability, StrongCouplingSplitsWeakDoesNot) {
  const CoilCircuit c{10e-6, 150e-12, 10.0};  // Q about 26
  auto check = [&](double k) {
    const SplitPair p = identical_coupled_frequencies(c.inductance, c.capacitance, k);
    const auto array = build_linear_chain(test::fig4_coils(2), k);
    return peaks_resolvable(array, 0, to_hertz(p.omega_plus), to_hertz(p.omega_minus));
  };
  EXPECT_TRUE(check(0.14));
  EXPECT_FALSE(check(0.005));
}

TEST(Dispersion, SeparationGrowsAndResolvabilityFlipsOnce) {
  const DispersionCurve d = dispersion_curve(10e-6, 150e-12, 10.0, 0.4, 41);
  ASSERT_EQ(d.k_values.size(), 41u);
  EXPECT_EQ(d.k_values.front(), 0.0);
  EXPECT_NEAR(d.k_values.back(), 0.4, 1e-15);
  EXPECT_FALSE(d.resolvable.front());
  EXPECT_TRUE(d.resolvable.back());
  int flips = 0;
  for (std::size_t i = 1; i < d.k_values.size(); ++i) {
    EXPECT_GT(d.upper_hz[i] - d.lower_hz[i], d.upper_hz[i - 1] - d.lower_hz[i - 1]);
    if (d.resolvable[i] != d.resolvable[i - 1]) ++flips;
  }
  EXPECT_EQ(flips, 1);
}

TEST(Dispersion, HigherLossDelaysResolvability) {
  auto first_resolvable = [](double r) {
    const DispersionCurve d = dispersion_curve(10e-6, 150e-12, r, 0.4, 81);
    for (std::size_t i = 0; i < d.k_values.size(); ++i) {
      if (d.resolvable[i]) return d.k_values[i];
    }
    return 1.0;
  };
  EXPECT_LT(first_resolvable(2.0), first_resolvable(10.0));
  EXPECT_LT(first_resolvable(10.0), first_resolvable(30.0));
}
