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

// Invariant checks behind `qotto selftest`. Output is a fixed list of lines
// with no timings, so two runs can be compared byte for byte.

#pragma once

#include <cmath>
#include <functional>
#include <random>
#include <string>
#include <vector>

#include "qotto/circuit.hpp"
#include "qotto/leggett_garg.hpp"
#include "qotto/sweep.hpp"
#include "qotto/zbasis_oracle.hpp"

namespace qotto::selftest {

struct Check {
  std::string name;
  std::function<double()> measure;  // returns the worst violation; <= 0 passes
};

inline ComplexMatrix random_hermitian(std::mt19937_64& rng, std::size_t dim) {
  std::normal_distribution<double> g;
  ComplexMatrix a(dim);
  for (std::size_t r = 0; r < dim; ++r)
    for (std::size_t c = 0; c < dim; ++c) a(r, c) = cplx(g(rng), g(rng));
  return 0.5 * (a + a.adjoint());
}

inline DensityMatrix random_state(std::mt19937_64& rng, std::size_t dim) {
  std::normal_distribution<double> g;
  ComplexMatrix a(dim);
  for (std::size_t r = 0; r < dim; ++r)
    for (std::size_t c = 0; c < dim; ++c) a(r, c) = cplx(g(rng), g(rng));
  ComplexMatrix m = a * a.adjoint();
  return DensityMatrix(m * (1.0 / m.trace().real()));
}

inline std::vector<Check> checks() {
  std::vector<Check> out;

  out.push_back({"eigendecomposition reconstructs Hermitian matrices", [] {
                   std::mt19937_64 rng(7);
                   double worst = 0.0;
                   for (std::size_t dim : {2, 4, 8, 16})
                     for (int k = 0; k < 5; ++k) {
                       const ComplexMatrix h = random_hermitian(rng, dim);
                       const auto e = herm_eig(h);
                       const ComplexMatrix back = apply_spectral(e, [](double l) { return cplx(l); });
                       worst = std::max(worst, max_abs_diff(back, h));
                     }
                   return worst - 1e-10;
                 }});

  out.push_back({"Gibbs state of -sigma_z/2 at beta 1.4", [] {
                   const DensityMatrix r = gibbs({1.4, -0.5 * pauli(Axis::z)});
                   return std::abs(expectation(r, pauli(Axis::z)) - std::tanh(0.7)) - 1e-12;
                 }});

  out.push_back({"channel families are trace preserving", [] {
                   double worst = 0.0;
                   for (double a : linspace(0.0, 1.0, 10))
                     for (double b : linspace(0.0, 1.0, 10)) {
                       worst = std::max(worst, cptp_defect(amplitude_damping(a).ops()));
                       worst = std::max(worst, cptp_defect(phase_damping(b).ops()));
                       worst = std::max(worst, cptp_defect(partial_swap_thermalization(a, b).ops()));
                     }
                   return worst - kCptpTol;
                 }});

  out.push_back({"amplitude damping matches the master equation", [] {
                   double worst = 0.0;
                   const DensityMatrix rho0 = DensityMatrix::pure({0.6, cplx(0.0, 0.8)});
                   for (double g : {0.2, 0.8}) {
                     const auto traj =
                         lindblad_integrate(ComplexMatrix(2), rho0, {{sigma_minus(), 0.5 * g}}, 10.0, 0.01, 100);
                     for (std::size_t k = 0; k < traj.times.size(); ++k) {
                       const DensityMatrix kraus = apply(amplitude_damping(damping_strength(g, traj.times[k])), rho0);
                       worst = std::max(worst, max_abs_diff(kraus.mat(), traj.states[k].mat()));
                     }
                   }
                   return worst - 1e-6;
                 }});

  out.push_back({"sigma_z model work matches the closed form", [] {
                   double worst = 0.0;
                   for (double lam : {0.0, 0.5, 1.0})
                     for (double g : {0.0, 0.8}) {
                       CycleParams c;
                       c.basis_mode = BasisMode::zbasis;
                       c.lambda = lam;
                       c.gamma = g;
                       c.t_noise = 1.0;
                       worst = std::max(worst, std::abs(run_cycle(c).w_total - oracle::noisy_work(oracle::inputs_from(c))));
                     }
                   return worst - 1e-6;
                 }});

  out.push_back({"first law closes and entropy balance matches efficiency", [] {
                   double worst = 0.0;
                   for (double lam : {0.3, 0.9})
                     for (double g : {0.0, 0.6})
                       for (double p : {0.0, 0.5}) {
                         CycleParams c;
                         c.lambda = lam;
                         c.gamma = g;
                         c.p = p;
                         const CycleResult r = run_cycle(c);
                         worst = std::max(worst, std::abs(r.first_law_residual) - 1e-8);
                         if (r.regime == Regime::heat_engine) worst = std::max(worst, std::abs(r.eta - r.eta_E) - 1e-7);
                       }
                   return worst;
                 }});

  out.push_back({"noiseless circuit reproduces the cycle", [] {
                   CycleParams c;
                   c.lambda = 0.6;
                   c.gamma = 0.6;
                   c.p = 0.6;
                   const CycleModel m = build_cycle_model(c);
                   const CircuitWork cw = circuit_work(m, NoiseModel::none());
                   const DensityMatrix target = partial_trace(cw.sim.final_state, kTarget);
                   return max_abs_diff(target.mat(), run_cycle(m).states[3].mat()) - 1e-6;
                 }});

  out.push_back({"full thermalization keeps K classical", [] {
                   CycleParams c;
                   c.lambda = 1.0;
                   return max_k(lgi_scan(c, linspace(0.1, 10.0, 25))) - (1.0 + kLgiTol);
                 }});

  out.push_back({"circuit cost stays under the closed-form bound", [] {
                   CycleParams c;
                   c.basis_mode = BasisMode::zbasis;
                   c.lambda = 0.5;
                   c.gamma = 0.6;
                   c.p = 0.1;
                   c.tau = 1.0;
                   c.t_noise = 1.0;
                   const CostResult r = thermodynamic_cost(c, NoiseModel::from_rates(NoisePolicy::all, 0.6, 0.1, 1.0));
                   return r.within_bound ? -1.0 : r.ct - r.bound;
                 }});

  return out;
}

}  // namespace qotto::selftest
