// Copyright 2026 The qotto Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include <cmath>
#include <random>

#include <gtest/gtest.h>

#include "qotto/channels.hpp"
#include "qotto/engine.hpp"
#include "selftest.hpp"

namespace qotto {
namespace {

const DensityMatrix kPlus = DensityMatrix::pure({std::sqrt(0.5), std::sqrt(0.5)});

TEST(AmplitudeDamping, Limits) {
  std::mt19937_64 rng(3);
  const DensityMatrix r = selftest::random_state(rng, 2);
  EXPECT_EQ(apply(amplitude_damping(0.0), r).mat(), r.mat());
  EXPECT_LT(max_abs_diff(apply(amplitude_damping(1.0), r).mat(), DensityMatrix::basis_state(2, 0).mat()), 1e-12);
  const DensityMatrix half = apply(amplitude_damping(0.5), DensityMatrix::maximally_mixed(2));
  EXPECT_LT(max_abs_diff(half.mat(), ComplexMatrix{{0.75, 0.0}, {0.0, 0.25}}), 1e-15);
}

TEST(PhaseDamping, Limits) {
  EXPECT_EQ(apply(phase_damping(0.0), kPlus).mat(), kPlus.mat());
  EXPECT_LT(max_abs_diff(apply(phase_damping(1.0), kPlus).mat(), DensityMatrix::maximally_mixed(2).mat()), 1e-15);
  EXPECT_NEAR(apply(phase_damping(0.75), kPlus)(0, 1).real(), 0.25, 1e-15);
}

TEST(PartialSwap, ZeroStrengthIsIdentity) {
  std::mt19937_64 rng(4);
  const DensityMatrix r = selftest::random_state(rng, 2);
  for (double p0 : {0.0, 0.3, 1.0})
    EXPECT_LT(max_abs_diff(apply(partial_swap_thermalization(0.0, p0), r).mat(), r.mat()), 1e-15);
}

TEST(PartialSwap, FullStrengthLiteralOrdering) {
  std::mt19937_64 rng(5);
  for (int k = 0; k < 5; ++k) {
    const DensityMatrix r = selftest::random_state(rng, 2);
    const DensityMatrix out = apply(partial_swap_thermalization(1.0, 0.3, SwapOrdering::literal), r);
    EXPECT_LT(max_abs_diff(out.mat(), ComplexMatrix{{0.3, 0.0}, {0.0, 0.7}}), 1e-15);
  }
}

TEST(PartialSwap, FixedPointAtHalfStrength) {
  const double p0 = thermal_excited_population(0.1, 1.8);
  const KrausChannel literal = partial_swap_thermalization(0.5, p0, SwapOrdering::literal);
  const DensityMatrix star(ComplexMatrix{{p0, 0.0}, {0.0, 1.0 - p0}});
  EXPECT_LT(max_abs_diff(apply(literal, star).mat(), star.mat()), 1e-15);
  // Iterating from any state converges to the same fixed point.
  DensityMatrix r = kPlus;
  for (int k = 0; k < 80; ++k) r = apply(literal, r);
  EXPECT_LT(max_abs_diff(r.mat(), star.mat()), 1e-12);
}

TEST(PartialSwap, FullStrengthInEigenbasisGivesGibbs) {
  const ComplexMatrix h = 1.8 * pauli(Axis::x);
  const ComplexMatrix basis = eigenbasis(h);
  const KrausChannel ch = partial_swap_thermalization(1.0, thermal_excited_population(0.1, 1.8));
  std::mt19937_64 rng(6);
  const DensityMatrix out = apply(ch, selftest::random_state(rng, 2), basis);
  EXPECT_LT(max_abs_diff(out.mat(), gibbs({0.1, h}).mat()), 1e-9);
}

TEST(Apply, FullDampingInEigenbasisReachesGround) {
  const ComplexMatrix h = 1.8 * pauli(Axis::x);
  const auto e = herm_eig(h);
  const DensityMatrix out = apply(amplitude_damping(1.0), kPlus, e.vectors);
  EXPECT_NEAR(expectation(out, h), e.values[0], 1e-12);
}

TEST(Apply, IdentityIsBitExact) {
  std::mt19937_64 rng(8);
  const DensityMatrix r = selftest::random_state(rng, 2);
  EXPECT_EQ(apply(KrausChannel::identity(2), r).mat(), r.mat());
  EXPECT_EQ(apply(compose(KrausChannel::identity(2), KrausChannel::identity(2)), r).mat(), r.mat());
}

TEST(Compose, DampingThenDephasingStructure) {
  std::mt19937_64 rng(9);
  const DensityMatrix r = selftest::random_state(rng, 2);
  const double g = 0.3, p = 0.45;
  const DensityMatrix out = apply(compose(amplitude_damping(g), phase_damping(p)), r);
  EXPECT_NEAR(out(1, 1).real(), (1 - g) * r(1, 1).real(), 1e-14);
  EXPECT_LT(std::abs(out(0, 1) - std::sqrt(1 - g) * std::sqrt(1 - p) * r(0, 1)), 1e-14);
}

TEST(Compose, OrderDoesNotMatterForDampingAndDephasing) {
  std::mt19937_64 rng(10);
  for (int k = 0; k < 20; ++k) {
    const DensityMatrix r = selftest::random_state(rng, 2);
    const DensityMatrix a = apply(amplitude_damping(0.4), apply(phase_damping(0.7), r));
    const DensityMatrix b = apply(phase_damping(0.7), apply(amplitude_damping(0.4), r));
    EXPECT_LT(max_abs_diff(a.mat(), b.mat()), 1e-12);
  }
}

TEST(Compose, LongChainsStayWithinFourOperators) {
  KrausChannel c = partial_swap_thermalization(0.4, 0.2);
  c = compose(c, compose(amplitude_damping(0.3), phase_damping(0.6)));
  EXPECT_LE(c.ops().size(), kMaxKrausOps);
  EXPECT_LT(cptp_defect(c.ops()), 1e-10);
}

TEST(Channels, CptpAcrossGrids) {
  for (int i = 0; i <= 20; ++i)
    for (int j = 0; j <= 20; ++j) {
      const double a = i / 20.0, b = j / 20.0;
      EXPECT_LT(cptp_defect(partial_swap_thermalization(a, b).ops()), 1e-10);
      EXPECT_LT(cptp_defect(partial_swap_thermalization(a, b, SwapOrdering::literal).ops()), 1e-10);
    }
}

TEST(Channels, RejectOutOfRangeStrength) {
  EXPECT_THROW(amplitude_damping(1.5), Error);
  EXPECT_THROW(phase_damping(-0.1), Error);
  EXPECT_THROW(partial_swap_thermalization(0.5, 2.0), Error);
}

TEST(Channels, RejectNonTracePreservingOperators) {
  try {
    KrausChannel bad({2.0 * ComplexMatrix::identity(2)}, "bad");
    FAIL() << "expected an error";
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::NotCptp);
  }
}

TEST(Strengths, Calibrations) {
  EXPECT_NEAR(damping_strength(0.8, 1.0), 1 - std::exp(-0.4), 1e-15);
  EXPECT_NEAR(std::sqrt(1 - dephasing_strength(0.3, 2.0)), std::exp(-2 * 0.3 * 2.0), 1e-14);
  EXPECT_NEAR(1 - 2 * dephasing_strength(0.3, 2.0, DephasingCalibration::linear), std::exp(-2 * 0.3 * 2.0), 1e-14);
  EXPECT_NEAR(thermal_excited_population(0.1, 1.8), std::exp(-0.18) / (std::exp(-0.18) + std::exp(0.18)), 1e-15);
}

}  // namespace
}  // namespace qotto
