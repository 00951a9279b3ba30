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

// Closed forms for the sigma_z variant of the cycle, where every Hamiltonian
// is -omega sigma_z / 2 and the strokes commute.

#pragma once

#include <cmath>
#include <complex>

#include "qotto/engine.hpp"

namespace qotto::oracle {

struct OracleInputs {
  double beta_c = 1.4;
  double beta_h = 0.1;
  double eps_c = 1.0;
  double eps_h = 1.8;
  double lambda = 0.5;
  double gamma = 0.0;
  double p = 0.0;
  double t = 1.0;

  void validate() const {
    if (!(eps_h > eps_c && eps_c > 0.0)) fail(ErrorKind::ParamOutOfRange, "need eps_h > eps_c > 0");
  }

  double delta_eps() const { return eps_c - eps_h; }
  double tanh_c() const { return std::tanh(0.5 * beta_c * eps_c); }
  double tanh_h() const { return std::tanh(0.5 * beta_h * eps_h); }
  double survival() const { return std::exp(-0.5 * gamma * t); }
};

/// Oracle inputs matching a cycle configuration, with t the noise exposure.
inline OracleInputs inputs_from(const CycleParams& c) {
  return {c.beta_c, c.beta_h, c.omega_c, c.omega_h, c.lambda, c.gamma, c.p, c.noise_time()};
}

/// (delta_eps / 2) lambda [tanh(beta_c eps_c / 2) - tanh(beta_h eps_h / 2)]
inline double exact_work(const OracleInputs& in) {
  in.validate();
  return 0.5 * in.delta_eps() * in.lambda * (in.tanh_c() - in.tanh_h());
}

/// (delta_eps / 2) [1 - tanh(beta_c eps_c / 2)]
inline double dissipated_energy(const OracleInputs& in) {
  in.validate();
  return 0.5 * in.delta_eps() * (1.0 - in.tanh_c());
}

inline double noisy_work(const OracleInputs& in) {
  if (in.gamma == 0.0) return exact_work(in);
  const double s = in.survival();
  return s * exact_work(in) - (1.0 - s) * dissipated_energy(in);
}

/// Upper bound on the circuit cost,
/// (delta_eps / 2)(e^{-gamma t / 2} - 1)[1 + (lambda - 1) tanh_c - lambda tanh_h].
inline double cost_bound(const OracleInputs& in) {
  in.validate();
  const double bracket = 1.0 + (in.lambda - 1.0) * in.tanh_c() - in.lambda * in.tanh_h();
  return 0.5 * in.delta_eps() * (in.survival() - 1.0) * bracket;
}

/// The printed closed form for K, evaluated over complex arguments. The sweep
/// frequency uses omega(t) = omega_c + (omega_h - omega_c) t / tau.
inline std::complex<double> k_analytic(const OracleInputs& in, double tau) {
  in.validate();
  if (!(tau > 0.0) || in.t < 0.0 || in.t > tau) fail(ErrorKind::TimeOutOfRange, "need 0 <= t <= tau");
  using C = std::complex<double>;
  const double w_c = in.eps_c, w_h = in.eps_h;
  auto omega = [&](double s) { return w_c + (w_h - w_c) * s / tau; };
  const double big_omega = w_c + w_h;
  const double omega_h = omega(tau - in.t) + w_h;
  const double omega_c = omega(in.t) + w_c;
  const double phi = 0.5 * in.beta_c * in.eps_c;
  const C iphi(0.0, phi);
  const double damp = std::sqrt(1.0 - in.lambda) * std::sqrt(1.0 - in.p) * std::sqrt(std::exp(-in.gamma * in.t));
  const C inner = std::cos(omega_c * in.t + iphi) - std::cos(big_omega * in.t + iphi);
  return (1.0 / std::cosh(phi)) * (std::cos(omega_h * in.t + iphi) + damp * inner);
}

}  // namespace qotto::oracle
