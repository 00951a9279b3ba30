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

// Driving schedules for the adiabatic strokes, their time-ordered propagators,
// and a fixed-step RK4 Lindblad integrator.

#pragma once

#include <cmath>
#include <cstdio>
#include <functional>
#include <numbers>
#include <string>
#include <utility>
#include <vector>

#include "qotto/state.hpp"

namespace qotto {

enum class ScheduleKind { expansion, compression, zbasis_expansion, zbasis_compression };

enum class FrequencyRamp {
  reversed,    // compression runs omega(tau - t), from the hot gap back to the cold one
  as_written,  // compression reuses the increasing omega(t)
};

struct HamiltonianSchedule {
  ScheduleKind kind = ScheduleKind::expansion;
  double omega_c = 1.0;
  double omega_h = 1.8;
  double tau = 1.0;
  // Overall sign of the expansion drive. -1 is the literal form; +1 makes
  // H(0) and H(tau) coincide with the cold and hot bath Hamiltonians.
  double expansion_sign = -1.0;
  FrequencyRamp compression_ramp = FrequencyRamp::reversed;

  void validate() const {
    if (!(omega_c > 0.0 && omega_h > omega_c)) fail(ErrorKind::ParamOutOfRange, "need 0 < omega_c < omega_h");
    if (!(tau > 0.0)) fail(ErrorKind::ParamOutOfRange, "need tau > 0");
  }

  double omega(double t) const { return omega_c + (omega_h - omega_c) * t / tau; }
};

/// Default stroke time, ten times pi/(8 (omega_h - omega_c)).
inline double default_tau(double omega_c, double omega_h) {
  return 10.0 * std::numbers::pi / (8.0 * (omega_h - omega_c));
}

inline ComplexMatrix hamiltonian_at(const HamiltonianSchedule& s, double t) {
  s.validate();
  const double slack = 1e-12 * s.tau;
  if (t < -slack || t > s.tau + slack) fail(ErrorKind::TimeOutOfRange, "t outside [0, tau]");
  t = std::clamp(t, 0.0, s.tau);
  const double angle = std::numbers::pi * t / (2.0 * s.tau);
  const double w_ramp = s.compression_ramp == FrequencyRamp::reversed ? s.omega(s.tau - t) : s.omega(t);
  switch (s.kind) {
    case ScheduleKind::expansion:
      return s.expansion_sign * s.omega(t) * (std::sin(angle) * pauli(Axis::y) + std::cos(angle) * pauli(Axis::x));
    case ScheduleKind::compression:
      return w_ramp * (std::cos(angle) * pauli(Axis::y) + std::sin(angle) * pauli(Axis::x));
    case ScheduleKind::zbasis_expansion:
      return -0.5 * s.omega(t) * pauli(Axis::z);
    case ScheduleKind::zbasis_compression:
      return -0.5 * w_ramp * pauli(Axis::z);
  }
  return ComplexMatrix(2);
}

struct PropagatorSettings {
  int n_steps = 2048;
  bool richardson = false;

  void validate() const {
    if (n_steps < 16) fail(ErrorKind::ParamOutOfRange, "n_steps must be at least 16");
  }
};

namespace detail {
inline ComplexMatrix midpoint_product(const HamiltonianSchedule& s, int n) {
  const double dt = s.tau / n;
  ComplexMatrix u = ComplexMatrix::identity(2);
  for (int k = 0; k < n; ++k) u = unitary_exp(hamiltonian_at(s, (k + 0.5) * dt), dt) * u;
  return u;
}
}  // namespace detail

/// Time-ordered product of midpoint slices exp(-i H(t_k + dt/2) dt).
inline constexpr double kRichardsonTol = 1e-5;

/// With settings.richardson the product is recomputed at half the step and
/// rejected if the two differ entrywise by more than kRichardsonTol.
inline ComplexMatrix stroke_unitary(const HamiltonianSchedule& s, const PropagatorSettings& settings = {}) {
  s.validate();
  settings.validate();
  ComplexMatrix u = detail::midpoint_product(s, settings.n_steps);
  if (settings.richardson) {
    const double change = max_abs_diff(detail::midpoint_product(s, 2 * settings.n_steps), u);
    if (change > kRichardsonTol) {
      char msg[96];
      std::snprintf(msg, sizeof msg, "step halving moved the propagator by %.3g; raise n_steps", change);
      fail(ErrorKind::ConvergenceFailure, msg);
    }
  }
  return u;
}

struct Propagated {
  DensityMatrix rho;
  ComplexMatrix unitary;
};

inline Propagated propagate_unitary(const HamiltonianSchedule& s, const DensityMatrix& rho0,
                                    const PropagatorSettings& settings = {}) {
  const ComplexMatrix u = stroke_unitary(s, settings);
  return {DensityMatrix(conjugate(u, rho0.mat())), u};
}

/// One Lindblad channel: rate * (L rho L^dagger - 1/2 {L^dagger L, rho}).
struct Dissipator {
  ComplexMatrix op;
  double rate;
};

struct Trajectory {
  std::vector<double> times;
  std::vector<DensityMatrix> states;
};

using HamiltonianFn = std::function<ComplexMatrix(double)>;

namespace detail {
inline ComplexMatrix lindblad_rhs(const ComplexMatrix& h, const std::vector<Dissipator>& ds, const ComplexMatrix& r) {
  ComplexMatrix d = -kI * (h * r - r * h);
  for (const auto& [l, rate] : ds) {
    const ComplexMatrix ld = l.adjoint();
    const ComplexMatrix ldl = ld * l;
    d += rate * (l * r * ld - 0.5 * (ldl * r + r * ldl));
  }
  return d;
}
}  // namespace detail

/// Classic RK4 with a fixed step. States are recorded every `record_every` steps
/// and at t_end.
inline Trajectory lindblad_integrate(const HamiltonianFn& h, const DensityMatrix& rho0,
                                     const std::vector<Dissipator>& dissipators, double t_end, double dt,
                                     int record_every = 1) {
  if (!(t_end > 0.0) || !(dt > 0.0)) fail(ErrorKind::ParamOutOfRange, "need t_end > 0 and dt > 0");
  if (dt > t_end / 100.0 * (1.0 + 1e-12)) fail(ErrorKind::StepTooLarge, "dt must not exceed t_end/100");
  for (const auto& d : dissipators)
    if (d.rate < 0.0) fail(ErrorKind::ParamOutOfRange, "dissipator rates must be non-negative");
  const auto n = static_cast<long>(std::llround(t_end / dt));
  const double step = t_end / static_cast<double>(n);

  Trajectory traj;
  traj.times.push_back(0.0);
  traj.states.push_back(rho0);
  ComplexMatrix r = rho0.mat();
  for (long k = 0; k < n; ++k) {
    const double t = step * static_cast<double>(k);
    const ComplexMatrix h0 = h(t), hm = h(t + 0.5 * step), h1 = h(t + step);
    const ComplexMatrix k1 = detail::lindblad_rhs(h0, dissipators, r);
    const ComplexMatrix k2 = detail::lindblad_rhs(hm, dissipators, r + (0.5 * step) * k1);
    const ComplexMatrix k3 = detail::lindblad_rhs(hm, dissipators, r + (0.5 * step) * k2);
    const ComplexMatrix k4 = detail::lindblad_rhs(h1, dissipators, r + step * k3);
    r += (step / 6.0) * (k1 + 2.0 * k2 + 2.0 * k3 + k4);
    const double drift = std::abs(r.trace() - 1.0);
    if (drift > 1e-8) fail(ErrorKind::StepTooLarge, "trace drifted by " + std::to_string(drift));
    if ((k + 1) % record_every == 0 || k + 1 == n) {
      traj.times.push_back(step * static_cast<double>(k + 1));
      try {
        traj.states.emplace_back(r, 1e-7);
      } catch (const Error& e) {
        fail(ErrorKind::StepTooLarge, std::string("state left the physical set: ") + e.what());
      }
    }
  }
  return traj;
}

/// Constant-Hamiltonian overload.
inline Trajectory lindblad_integrate(const ComplexMatrix& h, const DensityMatrix& rho0,
                                     const std::vector<Dissipator>& dissipators, double t_end, double dt,
                                     int record_every = 1) {
  return lindblad_integrate([h](double) { return h; }, rho0, dissipators, t_end, dt, record_every);
}

/// Schedule overload; the schedule's own tau bounds the integration.
inline Trajectory lindblad_integrate(const HamiltonianSchedule& s, const DensityMatrix& rho0,
                                     const std::vector<Dissipator>& dissipators, double dt, int record_every = 1) {
  s.validate();
  return lindblad_integrate([s](double t) { return hamiltonian_at(s, t); }, rho0, dissipators, s.tau, dt, record_every);
}

/// sigma_minus = |0><1|, the lowering operator toward slot 0.
inline ComplexMatrix sigma_minus() { return ComplexMatrix{{0.0, 1.0}, {0.0, 0.0}}; }

}  // namespace qotto
