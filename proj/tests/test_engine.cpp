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

#include <gtest/gtest.h>

#include "fixtures.hpp"
#include "qotto/engine.hpp"
#include "qotto/sweep.hpp"
#include "qotto/zbasis_oracle.hpp"

namespace qotto {
namespace {

CycleParams zmode(double lambda) {
  CycleParams c;
  c.basis_mode = BasisMode::zbasis;
  c.lambda = lambda;
  return c;
}

TEST(Limits, DefaultReservoirs) {
  const CycleParams c;
  EXPECT_NEAR(otto_limit(c), fixtures::kOttoLimit, 1e-14);
  EXPECT_NEAR(carnot_limit(c), fixtures::kCarnotLimit, 1e-14);
  CycleParams same;
  same.omega_h = same.omega_c;
  EXPECT_EQ(otto_limit(same), 0.0);
}

TEST(Regime, Classification) {
  EXPECT_EQ(classify_regime(1.0, -0.4, -0.6), Regime::heat_engine);
  EXPECT_EQ(classify_regime(-1.0, 0.4, 0.6), Regime::refrigerator);
  EXPECT_EQ(classify_regime(1.0, 0.1, -1.1), Regime::other);
}

TEST(Params, ValidationNamesTheInvariant) {
  CycleParams c;
  c.beta_h = 2.0;
  try {
    c.validate();
    FAIL() << "expected an error";
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::ParamOutOfRange);
    EXPECT_NE(std::string(e.what()).find("beta_c > beta_h"), std::string::npos);
  }
}

TEST(Cycle, NoThermalContactNoHeat) {
  CycleParams c;
  c.lambda = 0.0;
  const CycleResult r = run_cycle(c);
  EXPECT_NEAR(r.q_h, 0.0, 1e-12);
  EXPECT_NEAR(r.first_law_residual, 0.0, 1e-12);
}

TEST(Cycle, SigmaZWorkMatchesFixture) {
  EXPECT_NEAR(run_cycle(zmode(0.5)).w_total, fixtures::kExactWork, 1e-6);
  CycleParams c = zmode(0.5);
  c.gamma = 0.8;
  c.t_noise = 1.0;
  EXPECT_NEAR(run_cycle(c).w_total, fixtures::kNoisyWork, 1e-6);
}

TEST(Cycle, SigmaZWorkMatchesClosedFormOnGrid) {
  for (double lam : linspace(0.0, 1.0, 5))
    for (double ratio : linspace(0.1, 0.9, 5)) {
      CycleParams c = zmode(lam);
      c.beta_h = ratio * c.beta_c;
      EXPECT_NEAR(run_cycle(c).w_total, oracle::exact_work(oracle::inputs_from(c)), 1e-6);
    }
}

TEST(Cycle, FullThermalizationReachesOttoEfficiency) {
  const CycleResult r = run_cycle(zmode(1.0));
  EXPECT_NEAR(r.eta, fixtures::kOttoLimit, 1e-7);
  EXPECT_NEAR(r.eta_E, fixtures::kOttoLimit, 1e-7);
}

TEST(Cycle, FirstLawAndEntropyFormAcrossNoise) {
  for (double lam : {0.2, 0.7})
    for (double g : {0.0, 0.5, 1.0})
      for (double p : {0.0, 0.6}) {
        CycleParams c;
        c.lambda = lam;
        c.gamma = g;
        c.p = p;
        const CycleResult r = run_cycle(c);
        EXPECT_NEAR(r.first_law_residual, 0.0, 1e-10);
        if (r.regime == Regime::heat_engine) {
          EXPECT_NEAR(r.eta, r.eta_E, 1e-7);
          EXPECT_LE(r.eta_E, r.eta_carnot + 1e-9);
        }
      }
}

TEST(Cycle, WorkGrowsWithDamping) {
  double previous = 0.0;
  for (double g : linspace(0.0, 1.0, 11)) {
    CycleParams c;
    c.gamma = g;
    const double w = std::abs(run_cycle(c).w_total);
    EXPECT_GT(w, previous);
    previous = w;
  }
}

TEST(Cycle, DampingBeatsOttoLimitForSomeStrokeTime) {
  double best = 0.0;
  for (double tau : linspace(0.1, 10.0, 100)) {
    CycleParams c;
    c.gamma = 0.8;
    c.tau = tau;
    const CycleResult r = run_cycle(c);
    if (r.regime == Regime::heat_engine) best = std::max(best, r.eta_E);
  }
  EXPECT_GT(best, fixtures::kOttoLimit);
}

TEST(Cycle, ExpansionProducesCoherence) {
  const CycleModel m = build_cycle_model(CycleParams{});
  const CycleResult r = run_cycle(m);
  EXPECT_GT(coherence_relent(r.states[1], eigenbasis(m.h_exp_end)), 1e-6);
}

TEST(Cycle, DampingErodesImaginaryCoherence) {
  CycleParams c;
  c.gamma = 0.8;
  double previous = 1e9;
  for (double t : linspace(0.0, 5.0, 11)) {
    c.t_noise = t;
    const CycleModel m = build_cycle_model(c);
    const double im = std::abs(offdiag_coherence(m.add_noise(m.thermalize_hot(m.expand(m.rho_c))), m.basis_h).imag());
    EXPECT_LE(im, previous + 1e-12);
    previous = im;
  }
}

TEST(Cycle, CheckpointsAreValidStates) {
  CycleParams c;
  c.gamma = 0.6;
  c.p = 0.3;
  const CycleResult r = run_cycle(c);
  for (const auto& s : r.states) EXPECT_NEAR(s.mat().trace().real(), 1.0, 1e-12);
  EXPECT_EQ(kCheckpointNames.size(), r.states.size());
}

TEST(Cycle, RejectsInvalidParams) {
  CycleParams c;
  c.lambda = 1.5;
  EXPECT_THROW(run_cycle(c), Error);
}

}  // namespace
}  // namespace qotto
