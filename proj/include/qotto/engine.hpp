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

// The four-stroke qubit Otto cycle and its thermodynamic bookkeeping.

#pragma once

#include <array>
#include <cmath>
#include <limits>
#include <optional>
#include <string>
#include <string_view>

#include "qotto/channels.hpp"
#include "qotto/dynamics.hpp"

namespace qotto {

enum class BasisMode { xy, zbasis };

enum class ExpansionSign {
  matched,  // drive ends on the hot bath Hamiltonian
  literal,  // overall minus sign, drive ends on -H_h
};

enum class NoiseBasis {
  computational,     // damping relaxes toward |0>
  stroke_eigenbasis  // damping relaxes toward the ground state of H_h
};

enum class NoiseOrder {
  before,  // swap(damp(dephase(rho)))
  after,   // damp(dephase(swap(rho)))
};

enum class HeatConvention {
  post_noise,  // Q_h measured on the state after swap and noise
  pre_noise,   // Q_h measured on the partial swap alone
};

struct CycleParams {
  double beta_c = 1.4;
  double beta_h = 0.1;
  double omega_c = 1.0;
  double omega_h = 1.8;
  double tau = default_tau(1.0, 1.8);
  double lambda = 0.5;
  double lambda_c = 1.0;
  double gamma = 0.0;
  double p = 0.0;
  std::optional<double> t_noise;  // defaults to tau
  BasisMode basis_mode = BasisMode::xy;
  PropagatorSettings propagator;

  ExpansionSign expansion_sign = ExpansionSign::matched;
  FrequencyRamp compression_ramp = FrequencyRamp::reversed;
  NoiseBasis noise_basis = NoiseBasis::computational;
  std::optional<NoiseOrder> noise_order;  // xy: before, zbasis: after
  SwapOrdering swap_ordering = SwapOrdering::reordered;
  HeatConvention heat = HeatConvention::post_noise;

  double noise_time() const { return t_noise.value_or(tau); }
  NoiseOrder order() const {
    return noise_order.value_or(basis_mode == BasisMode::zbasis ? NoiseOrder::after : NoiseOrder::before);
  }

  void validate() const {
    auto need = [](bool ok, const char* what) {
      if (!ok) fail(ErrorKind::ParamOutOfRange, std::string("violated: ") + what);
    };
    need(beta_h > 0.0, "beta_h > 0");
    need(beta_c > beta_h, "beta_c > beta_h");
    need(omega_c > 0.0, "omega_c > 0");
    need(omega_h > omega_c, "omega_h > omega_c");
    need(tau > 0.0 && std::isfinite(tau), "tau > 0");
    need(lambda >= 0.0 && lambda <= 1.0, "0 <= lambda <= 1");
    need(lambda_c >= 0.0 && lambda_c <= 1.0, "0 <= lambda_c <= 1");
    need(gamma >= 0.0 && std::isfinite(gamma), "gamma >= 0");
    need(p >= 0.0 && p <= 1.0, "0 <= p <= 1");
    need(noise_time() >= 0.0 && std::isfinite(noise_time()), "t_noise >= 0");
    propagator.validate();
  }
};

inline double otto_limit(const CycleParams& c) { return 1.0 - c.omega_c / c.omega_h; }
inline double carnot_limit(const CycleParams& c) { return 1.0 - c.beta_h / c.beta_c; }

/// Everything a cycle needs, precomputed once: bath states, stroke unitaries, channels.
struct CycleModel {
  CycleParams params;
  ComplexMatrix h_c, h_h;
  ComplexMatrix basis_c, basis_h;  // ascending-energy eigenbases
  ComplexMatrix h_exp_end, h_comp_end;
  ComplexMatrix u_exp, u_comp;
  DensityMatrix rho_c, rho_h;
  KrausChannel swap_hot, swap_cold, damping, dephasing;
  ComplexMatrix noise_basis;

  DensityMatrix expand(const DensityMatrix& r) const { return DensityMatrix(conjugate(u_exp, r.mat())); }
  DensityMatrix compress(const DensityMatrix& r) const { return DensityMatrix(conjugate(u_comp, r.mat())); }
  DensityMatrix thermalize_hot(const DensityMatrix& r) const { return apply(swap_hot, r, basis_h); }
  DensityMatrix add_noise(const DensityMatrix& r) const {
    return apply(damping, apply(dephasing, r, noise_basis), noise_basis);
  }
  /// Full hot stroke: partial swap plus damping and dephasing in the configured order.
  DensityMatrix hot_stroke(const DensityMatrix& r) const {
    return params.order() == NoiseOrder::before ? thermalize_hot(add_noise(r)) : add_noise(thermalize_hot(r));
  }
  DensityMatrix thermalize_cold(const DensityMatrix& r) const { return apply(swap_cold, r, basis_c); }
};

/// omega_c sigma_x, or -omega_c sigma_z / 2 in the sigma_z model.
inline ComplexMatrix cold_hamiltonian(const CycleParams& c) {
  return c.basis_mode == BasisMode::zbasis ? -0.5 * c.omega_c * pauli(Axis::z) : c.omega_c * pauli(Axis::x);
}

/// omega_h sigma_y, or -omega_h sigma_z / 2 in the sigma_z model.
inline ComplexMatrix hot_hamiltonian(const CycleParams& c) {
  return c.basis_mode == BasisMode::zbasis ? -0.5 * c.omega_h * pauli(Axis::z) : c.omega_h * pauli(Axis::y);
}

inline CycleModel build_cycle_model(const CycleParams& params) {
  params.validate();
  const bool z = params.basis_mode == BasisMode::zbasis;
  const ComplexMatrix h_c = cold_hamiltonian(params);
  const ComplexMatrix h_h = hot_hamiltonian(params);

  HamiltonianSchedule exp_s{z ? ScheduleKind::zbasis_expansion : ScheduleKind::expansion, params.omega_c,
                            params.omega_h, params.tau,
                            params.expansion_sign == ExpansionSign::matched ? 1.0 : -1.0, params.compression_ramp};
  HamiltonianSchedule comp_s = exp_s;
  comp_s.kind = z ? ScheduleKind::zbasis_compression : ScheduleKind::compression;

  const ComplexMatrix basis_c = eigenbasis(h_c), basis_h = eigenbasis(h_h);
  const DensityMatrix rho_c = gibbs({params.beta_c, h_c});
  const DensityMatrix rho_h = gibbs({params.beta_h, h_h});
  const double p0_h = populations(rho_h, basis_h)[1];
  const double p0_c = populations(rho_c, basis_c)[1];

  return CycleModel{params,
                    h_c,
                    h_h,
                    basis_c,
                    basis_h,
                    hamiltonian_at(exp_s, params.tau),
                    hamiltonian_at(comp_s, params.tau),
                    stroke_unitary(exp_s, params.propagator),
                    stroke_unitary(comp_s, params.propagator),
                    rho_c,
                    rho_h,
                    partial_swap_thermalization(params.lambda, p0_h, params.swap_ordering),
                    partial_swap_thermalization(params.lambda_c, p0_c, params.swap_ordering),
                    amplitude_damping(damping_strength(params.gamma, params.noise_time())),
                    phase_damping(params.p),
                    params.noise_basis == NoiseBasis::computational ? ComplexMatrix::identity(2) : basis_h};
}

enum class Regime { heat_engine, refrigerator, other };

constexpr std::string_view to_string(Regime r) {
  switch (r) {
    case Regime::heat_engine: return "heat-engine";
    case Regime::refrigerator: return "refrigerator";
    case Regime::other: return "other";
  }
  return "other";
}

inline constexpr double kSignTol = 1e-12;

inline Regime classify_regime(double q_h, double w, double q_c) {
  if (q_h > kSignTol && w < -kSignTol && q_c < -kSignTol) return Regime::heat_engine;
  if (q_h < -kSignTol && w > kSignTol && q_c > kSignTol) return Regime::refrigerator;
  return Regime::other;
}

struct EntropyTerms {
  double d_exp_hot = 0.0;    // D[rho_exp || rho_th^f]
  double d_comp_cold = 0.0;  // D[rho_comp || rho_tc]
  double correction = 0.0;   // Tr[(rho_th^f - rho_exp)(ln rho_th^f - ln rho_h)]
  double delta_s_th = 0.0;   // d_exp_hot + d_comp_cold - correction
};

struct CycleResult {
  double w_exp = 0.0, w_comp = 0.0, w_total = 0.0;
  double q_h = 0.0, q_c = 0.0;
  double delta_u = 0.0;             // Tr[(rho_tc - rho_c) H_c]; zero once the cycle closes
  double first_law_residual = 0.0;  // q_h + q_c + w_total - delta_u
  double eta = std::numeric_limits<double>::quiet_NaN();
  double eta_E = std::numeric_limits<double>::quiet_NaN();
  bool eta_defined = false;
  double eta_otto = 0.0, eta_carnot = 0.0;
  Regime regime = Regime::other;
  // rho_c, rho_exp, rho_th^f, rho_comp, rho_tc
  std::array<DensityMatrix, 5> states;
  DensityMatrix rho_th;  // after the partial swap alone
  EntropyTerms entropy;
};

inline constexpr std::array<std::string_view, 5> kCheckpointNames{"rho_c", "rho_exp", "rho_thf", "rho_comp", "rho_tc"};

inline constexpr double kDivisionGuard = 1e-12;

inline EntropyTerms entropy_terms(const CycleResult& r, const DensityMatrix& rho_h) {
  const auto& [rho_c, rho_exp, rho_thf, rho_comp, rho_tc] = r.states;
  EntropyTerms t;
  t.d_exp_hot = relative_entropy(rho_exp, rho_thf);
  t.d_comp_cold = relative_entropy(rho_comp, rho_tc);
  t.correction = trace_product(rho_thf.mat() - rho_exp.mat(), mat_log(rho_thf.mat()) - mat_log(rho_h.mat())).real();
  t.delta_s_th = t.d_exp_hot + t.d_comp_cold - t.correction;
  return t;
}

/// Efficiency from the entropy balance, eta_Carnot - dS_th/(beta_c Q_h).
inline double efficiency_entropy_form(const CycleResult& r, const CycleParams& params) {
  if (std::abs(r.q_h) < kDivisionGuard) fail(ErrorKind::DivisionGuard, "|Q_h| below 1e-12");
  params.validate();
  const DensityMatrix rho_h = gibbs({params.beta_h, hot_hamiltonian(params)});
  return carnot_limit(params) - entropy_terms(r, rho_h).delta_s_th / (params.beta_c * r.q_h);
}

inline CycleResult run_cycle(const CycleModel& m) {
  const CycleParams& p = m.params;
  CycleResult r;
  const DensityMatrix rho_exp = m.expand(m.rho_c);
  r.rho_th = m.thermalize_hot(rho_exp);
  const DensityMatrix rho_thf = m.hot_stroke(rho_exp);
  const DensityMatrix rho_comp = m.compress(rho_thf);
  const DensityMatrix rho_tc = m.thermalize_cold(rho_comp);
  r.states = {m.rho_c, rho_exp, rho_thf, rho_comp, rho_tc};

  r.w_exp = expectation(rho_exp, m.h_exp_end) - expectation(m.rho_c, m.h_c);
  r.w_comp = expectation(rho_comp, m.h_comp_end) - expectation(rho_thf, m.h_h);
  r.w_total = r.w_exp + r.w_comp;
  const DensityMatrix& heated = p.heat == HeatConvention::post_noise ? rho_thf : r.rho_th;
  r.q_h = expectation(heated, m.h_h) - expectation(rho_exp, m.h_h);
  r.q_c = expectation(rho_tc, m.h_c) - expectation(rho_comp, m.h_c);
  r.delta_u = expectation(rho_tc, m.h_c) - expectation(m.rho_c, m.h_c);
  r.first_law_residual = r.q_h + r.q_c + r.w_total - r.delta_u;
  r.eta_otto = otto_limit(p);
  r.eta_carnot = carnot_limit(p);
  r.regime = classify_regime(r.q_h, r.w_total, r.q_c);

  if (std::abs(r.q_h) >= kDivisionGuard) {
    r.eta_defined = true;
    r.eta = -r.w_total / r.q_h;
    try {
      r.entropy = entropy_terms(r, m.rho_h);
      r.eta_E = r.eta_carnot - r.entropy.delta_s_th / (p.beta_c * r.q_h);
    } catch (const Error& e) {
      // A pure hot-stroke output leaves the relative entropies unbounded.
      if (e.kind() != ErrorKind::SupportMismatch) throw;
    }
  }
  return r;
}

inline CycleResult run_cycle(const CycleParams& params) { return run_cycle(build_cycle_model(params)); }

inline Regime classify_regime(const CycleResult& r) { return classify_regime(r.q_h, r.w_total, r.q_c); }

}  // namespace qotto
