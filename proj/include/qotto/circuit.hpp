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

// Density-matrix simulation of the four-qubit Otto circuit. Qubit 0 is the
// most significant bit of the basis index. Roles: q0 cold ancilla, q1 target,
// q2 swap ancilla, q3 hot ancilla.

#pragma once

#include <cmath>
#include <cstdint>
#include <limits>
#include <map>
#include <numbers>
#include <optional>
#include <random>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include <nlohmann/json.hpp>

#include "qotto/engine.hpp"
#include "qotto/zbasis_oracle.hpp"

namespace qotto {

enum class GateKind {
  RX,
  CNOT,     // qubits: control, target
  CLAMBDA,  // qubits: control, target
  UEXP,
  UCOMP,
  LGATE,
  KGATE,
  UNITARY,  // custom single-qubit unitary
  NOISE,    // fixed damping + dephasing slot of the modeled hot stroke
  BARRIER,  // named checkpoint, no action
};

inline constexpr std::array<std::pair<GateKind, std::string_view>, 10> kGateNames{{
    {GateKind::RX, "RX"},
    {GateKind::CNOT, "CNOT"},
    {GateKind::CLAMBDA, "CLAMBDA"},
    {GateKind::UEXP, "UEXP"},
    {GateKind::UCOMP, "UCOMP"},
    {GateKind::LGATE, "LGATE"},
    {GateKind::KGATE, "KGATE"},
    {GateKind::UNITARY, "UNITARY"},
    {GateKind::NOISE, "NOISE"},
    {GateKind::BARRIER, "BARRIER"},
}};

inline std::string_view to_string(GateKind k) {
  for (const auto& [kind, name] : kGateNames)
    if (kind == k) return name;
  return "?";
}

inline GateKind gate_kind_from(std::string_view s) {
  for (const auto& [kind, name] : kGateNames)
    if (name == s) return kind;
  fail(ErrorKind::ConfigError, "unknown gate kind '" + std::string(s) + "'");
}

enum class LambdaVariant {
  unitary,        // sqrt(1-l) I - i sqrt(l) sigma_y
  literal,  // sqrt(1-l) I - sqrt(l) sigma_y, made unitary by its polar factor
};

struct GateOp {
  GateKind kind = GateKind::BARRIER;
  std::vector<int> qubits;
  double angle = 0.0;                              // RX
  double lambda = 0.0;                             // CLAMBDA
  LambdaVariant variant = LambdaVariant::unitary;  // CLAMBDA
  std::optional<ComplexMatrix> matrix;             // UEXP, UCOMP, UNITARY
  double gamma_prime = 0.0, p = 0.0;               // NOISE
  std::string label;                               // BARRIER name, free text otherwise
};

struct CircuitProgram {
  int n_qubits = 4;
  std::vector<GateOp> ops;

  void validate() const;
};

inline int arity(GateKind k) {
  switch (k) {
    case GateKind::CNOT:
    case GateKind::CLAMBDA: return 2;
    case GateKind::BARRIER: return 0;
    default: return 1;
  }
}

inline void CircuitProgram::validate() const {
  if (n_qubits < 1 || n_qubits > 4) fail(ErrorKind::DimensionOverflow, "circuits hold 1 to 4 qubits");
  for (const auto& op : ops) {
    const std::string name(to_string(op.kind));
    if (static_cast<int>(op.qubits.size()) != arity(op.kind)) fail(ErrorKind::ConfigError, name + ": wrong qubit count");
    for (std::size_t i = 0; i < op.qubits.size(); ++i) {
      if (op.qubits[i] < 0 || op.qubits[i] >= n_qubits) fail(ErrorKind::ConfigError, name + ": qubit out of range");
      for (std::size_t j = 0; j < i; ++j)
        if (op.qubits[i] == op.qubits[j]) fail(ErrorKind::ConfigError, name + ": repeated qubit");
    }
    if (op.kind == GateKind::RX && !(op.angle >= 0.0 && op.angle <= 2.0 * std::numbers::pi))
      fail(ErrorKind::ParamOutOfRange, "RX angle outside [0, 2pi]");
    if (op.kind == GateKind::CLAMBDA && !(op.lambda >= 0.0 && op.lambda <= 1.0))
      fail(ErrorKind::ParamOutOfRange, "CLAMBDA lambda outside [0, 1]");
    if (op.kind == GateKind::NOISE && !(op.gamma_prime >= 0.0 && op.gamma_prime <= 1.0 && op.p >= 0.0 && op.p <= 1.0))
      fail(ErrorKind::ParamOutOfRange, "NOISE strengths outside [0, 1]");
    const bool needs_matrix = op.kind == GateKind::UEXP || op.kind == GateKind::UCOMP || op.kind == GateKind::UNITARY;
    if (needs_matrix && (!op.matrix || op.matrix->dim() != 2 || !is_unitary(*op.matrix, 1e-10)))
      fail(ErrorKind::ConfigError, name + ": needs a 2x2 unitary matrix");
  }
}

// ---------------------------------------------------------------- gate matrices

inline ComplexMatrix rx_matrix(double theta) {
  const double c = std::cos(0.5 * theta), s = std::sin(0.5 * theta);
  return ComplexMatrix{{c, -kI * s}, {-kI * s, c}};
}

/// (sigma_x + sigma_z)/sqrt(2): maps sigma_x readout onto sigma_z.
inline ComplexMatrix l_gate() { return (1.0 / std::numbers::sqrt2) * (pauli(Axis::x) + pauli(Axis::z)); }

/// (sigma_y + sigma_z)/sqrt(2): maps sigma_y readout onto sigma_z.
inline ComplexMatrix k_gate() { return (1.0 / std::numbers::sqrt2) * (pauli(Axis::y) + pauli(Axis::z)); }

inline ComplexMatrix lambda_matrix(double lambda, LambdaVariant v) {
  const ComplexMatrix id = ComplexMatrix::identity(2);
  if (v == LambdaVariant::unitary) return std::sqrt(1.0 - lambda) * id - (kI * std::sqrt(lambda)) * pauli(Axis::y);
  // The printed matrix is Hermitian; its polar factor keeps the eigenvectors
  // and replaces each eigenvalue by its sign (zero counts as positive).
  const ComplexMatrix raw = std::sqrt(1.0 - lambda) * id - std::sqrt(lambda) * pauli(Axis::y);
  return apply_spectral(herm_eig(raw), [](double l) { return cplx(l < 0.0 ? -1.0 : 1.0); });
}

/// Full-register operator with `factors` on the listed qubits and identity elsewhere.
inline ComplexMatrix embed(int n_qubits, const std::vector<std::pair<int, ComplexMatrix>>& factors) {
  ComplexMatrix out;
  for (int q = 0; q < n_qubits; ++q) {
    ComplexMatrix f = ComplexMatrix::identity(2);
    for (const auto& [idx, m] : factors)
      if (idx == q) f = m;
    out = q == 0 ? f : kron(out, f);
  }
  return out;
}

inline ComplexMatrix controlled(int n_qubits, int control, int target, const ComplexMatrix& g) {
  const ComplexMatrix p0{{1.0, 0.0}, {0.0, 0.0}}, p1{{0.0, 0.0}, {0.0, 1.0}};
  return embed(n_qubits, {{control, p0}}) + embed(n_qubits, {{control, p1}, {target, g}});
}

/// Register unitary for a gate. NOISE and BARRIER have none.
inline std::optional<ComplexMatrix> gate_unitary(const GateOp& op, int n_qubits) {
  switch (op.kind) {
    case GateKind::RX: return embed(n_qubits, {{op.qubits[0], rx_matrix(op.angle)}});
    case GateKind::CNOT: return controlled(n_qubits, op.qubits[0], op.qubits[1], pauli(Axis::x));
    case GateKind::CLAMBDA:
      return controlled(n_qubits, op.qubits[0], op.qubits[1], lambda_matrix(op.lambda, op.variant));
    case GateKind::UEXP:
    case GateKind::UCOMP:
    case GateKind::UNITARY: return embed(n_qubits, {{op.qubits[0], *op.matrix}});
    case GateKind::LGATE: return embed(n_qubits, {{op.qubits[0], l_gate()}});
    case GateKind::KGATE: return embed(n_qubits, {{op.qubits[0], k_gate()}});
    case GateKind::NOISE:
    case GateKind::BARRIER: return std::nullopt;
  }
  return std::nullopt;
}

// ---------------------------------------------------------------- noise

enum class NoisePolicy { all, all_except_cnot, cnot_only, none };

inline constexpr std::array<std::pair<NoisePolicy, std::string_view>, 4> kPolicyNames{{
    {NoisePolicy::all, "all"},
    {NoisePolicy::all_except_cnot, "all_except_cnot"},
    {NoisePolicy::cnot_only, "cnot_only"},
    {NoisePolicy::none, "none"},
}};

inline NoisePolicy noise_policy_from(std::string_view s) {
  for (const auto& [p, name] : kPolicyNames)
    if (name == s) return p;
  fail(ErrorKind::ConfigError, "unknown noise policy '" + std::string(s) + "'");
}

inline std::string_view to_string(NoisePolicy p) {
  for (const auto& [v, name] : kPolicyNames)
    if (v == p) return name;
  return "?";
}

struct NoiseStrength {
  double gamma_prime = 0.0;
  double p = 0.0;
};

/// Per-gate-class damping/dephasing applied to each touched qubit after the gate.
struct NoiseModel {
  std::map<GateKind, NoiseStrength> strengths;

  static NoiseModel none() { return {}; }

  /// Strengths from physical rates. A gate lasting t_g sees gamma' = 1 - e^{-gamma t_g / 2}
  /// and the fraction t_g / t_noise of the stroke dephasing, (1 - p_g) = (1 - p)^{t_g / t_noise}.
  static NoiseModel from_rates(NoisePolicy policy, double gamma, double p, double t_noise, double t_one_qubit = 0.01,
                               double t_two_qubit = 0.1) {
    NoiseModel m;
    if (policy == NoisePolicy::none) return m;
    for (const auto& [kind, name] : kGateNames) {
      if (kind == GateKind::NOISE || kind == GateKind::BARRIER) continue;
      const bool is_cnot = kind == GateKind::CNOT;
      if (policy == NoisePolicy::all_except_cnot && is_cnot) continue;
      if (policy == NoisePolicy::cnot_only && !is_cnot) continue;
      const double tg = arity(kind) == 2 ? t_two_qubit : t_one_qubit;
      double pg = p;
      if (t_noise > 0.0 && p < 1.0) pg = -std::expm1(std::log1p(-p) * tg / t_noise);
      m.strengths[kind] = {damping_strength(gamma, tg), pg};
    }
    return m;
  }
};

// ---------------------------------------------------------------- simulation

inline ComplexMatrix apply_local_kraus(const ComplexMatrix& rho, int n_qubits, int q, const KrausChannel& ch) {
  if (ch.acts_as_identity()) return rho;
  ComplexMatrix out(rho.dim());
  for (const auto& e : ch.ops()) {
    const ComplexMatrix big = embed(n_qubits, {{q, e}});
    out += big * rho * big.adjoint();
  }
  return out;
}

/// Dephasing then damping on qubit q.
inline ComplexMatrix apply_qubit_noise(const ComplexMatrix& rho, int n_qubits, int q, double gamma_prime, double p) {
  ComplexMatrix r = rho;
  if (p > 0.0) r = apply_local_kraus(r, n_qubits, q, phase_damping(p));
  if (gamma_prime > 0.0) r = apply_local_kraus(r, n_qubits, q, amplitude_damping(gamma_prime));
  return r;
}

struct SimulationResult {
  DensityMatrix final_state;
  std::vector<std::pair<std::string, DensityMatrix>> checkpoints;

  const DensityMatrix& checkpoint(std::string_view name) const {
    for (const auto& [n, s] : checkpoints)
      if (n == name) return s;
    fail(ErrorKind::ConfigError, "no checkpoint named '" + std::string(name) + "'");
  }
};

inline DensityMatrix checked_state(ComplexMatrix m, std::string_view where) {
  try {
    return DensityMatrix(std::move(m));
  } catch (const Error& e) {
    fail(ErrorKind::ChannelBrokeState, std::string(where) + ": " + e.what());
  }
}

/// Runs the program left to right: unitary conjugation, then gate noise per the model.
inline SimulationResult simulate(const CircuitProgram& program, const NoiseModel& noise, const DensityMatrix& rho0) {
  program.validate();
  if (rho0.dim() != (std::size_t{1} << program.n_qubits)) fail(ErrorKind::DimensionMismatch, "rho0 does not match n_qubits");
  ComplexMatrix r = rho0.mat();
  std::vector<std::pair<std::string, DensityMatrix>> checkpoints;
  for (const auto& op : program.ops) {
    if (op.kind == GateKind::BARRIER) {
      checkpoints.emplace_back(op.label, checked_state(r, "checkpoint " + op.label));
      continue;
    }
    if (op.kind == GateKind::NOISE) {
      r = apply_qubit_noise(r, program.n_qubits, op.qubits[0], op.gamma_prime, op.p);
      continue;
    }
    r = conjugate(*gate_unitary(op, program.n_qubits), r);
    if (const auto it = noise.strengths.find(op.kind); it != noise.strengths.end())
      for (int q : op.qubits) r = apply_qubit_noise(r, program.n_qubits, q, it->second.gamma_prime, it->second.p);
  }
  const double drift = std::abs(r.trace() - 1.0);
  if (drift > 1e-9) fail(ErrorKind::ChannelBrokeState, "trace drifted by " + std::to_string(drift));
  return {checked_state(std::move(r), "final state"), std::move(checkpoints)};
}

inline DensityMatrix all_zero_state(int n_qubits) { return DensityMatrix::basis_state(std::size_t{1} << n_qubits, 0); }

/// Reduced state of one qubit.
inline DensityMatrix partial_trace(const DensityMatrix& rho, int keep) {
  const std::size_t dim = rho.dim();
  int n = 0;
  while ((std::size_t{1} << n) < dim) ++n;
  if (keep < 0 || keep >= n) fail(ErrorKind::DimensionMismatch, "kept qubit out of range");
  const std::size_t bit = std::size_t{1} << (n - 1 - keep);
  ComplexMatrix out(2);
  for (std::size_t i = 0; i < dim; ++i)
    for (std::size_t j = 0; j < dim; ++j)
      if ((i & ~bit) == (j & ~bit)) out((i & bit) ? 1 : 0, (j & bit) ? 1 : 0) += rho(i, j);
  return DensityMatrix(std::move(out));
}

// ---------------------------------------------------------------- the Otto circuit

inline constexpr int kColdAncilla = 0, kTarget = 1, kSwapAncilla = 2, kHotAncilla = 3;

/// Rotation angle that leaves |0> with probability p_excited.
inline double preparation_angle(double p_excited) { return 2.0 * std::acos(std::sqrt(p_excited)); }

/// Columns (excited, ground): |0> carries the excited population.
inline ComplexMatrix descending_basis(const ComplexMatrix& h) {
  const ComplexMatrix v = eigenbasis(h);
  ComplexMatrix out(2);
  for (std::size_t r = 0; r < 2; ++r) {
    out(r, 0) = v(r, 1);
    out(r, 1) = v(r, 0);
  }
  return out;
}

struct OttoCircuitOptions {
  LambdaVariant lambda_variant = LambdaVariant::unitary;
  bool verify_preparation = true;
};

inline GateOp make_op(GateKind k, std::vector<int> qubits) {
  GateOp op;
  op.kind = k;
  op.qubits = std::move(qubits);
  return op;
}

inline GateOp barrier(std::string label) {
  GateOp op = make_op(GateKind::BARRIER, {});
  op.label = std::move(label);
  return op;
}

inline GateOp unitary_op(GateKind k, int q, ComplexMatrix m, std::string label) {
  GateOp op = make_op(k, {q});
  op.matrix = std::move(m);
  op.label = std::move(label);
  return op;
}

/// Gate sequence realizing one cycle on the target qubit, with checkpoints
/// rho_c, rho_exp, rho_thf, rho_comp.
inline CircuitProgram build_otto_circuit(const CycleModel& m, const OttoCircuitOptions& opt = {}) {
  const CycleParams& p = m.params;
  const ComplexMatrix v_c = descending_basis(m.h_c), v_h = descending_basis(m.h_h);
  const double p_c = populations(m.rho_c, m.basis_c)[1];
  const double p_h = populations(m.rho_h, m.basis_h)[1];

  CircuitProgram prog;
  auto push = [&](GateOp op) { prog.ops.push_back(std::move(op)); };
  auto noise_slot = [&] {
    GateOp op = make_op(GateKind::NOISE, {kTarget});
    op.gamma_prime = damping_strength(p.gamma, p.noise_time());
    op.p = p.p;
    op.label = "hot-stroke noise";
    push(std::move(op));
  };

  GateOp rx_c = make_op(GateKind::RX, {kColdAncilla});
  rx_c.angle = preparation_angle(p_c);
  push(rx_c);
  push(make_op(GateKind::CNOT, {kColdAncilla, kTarget}));
  push(unitary_op(GateKind::UNITARY, kTarget, v_c, "cold basis"));
  push(barrier("rho_c"));
  push(unitary_op(GateKind::UEXP, kTarget, m.u_exp, "expansion"));
  push(barrier("rho_exp"));
  if (p.order() == NoiseOrder::before) noise_slot();
  push(unitary_op(GateKind::UNITARY, kTarget, v_h.adjoint(), "hot basis out"));
  GateOp rx_h = make_op(GateKind::RX, {kHotAncilla});
  rx_h.angle = preparation_angle(p_h);
  push(rx_h);
  push(make_op(GateKind::CNOT, {kHotAncilla, kTarget}));
  GateOp cl = make_op(GateKind::CLAMBDA, {kTarget, kSwapAncilla});
  cl.lambda = p.lambda;
  cl.variant = opt.lambda_variant;
  push(cl);
  push(make_op(GateKind::CNOT, {kSwapAncilla, kTarget}));
  push(make_op(GateKind::CNOT, {kHotAncilla, kTarget}));
  push(unitary_op(GateKind::UNITARY, kTarget, v_h, "hot basis in"));
  if (p.order() == NoiseOrder::after) noise_slot();
  push(barrier("rho_thf"));
  push(unitary_op(GateKind::UCOMP, kTarget, m.u_comp, "compression"));
  push(barrier("rho_comp"));

  if (opt.verify_preparation) {
    CircuitProgram prep;
    prep.ops.assign(prog.ops.begin(), prog.ops.begin() + 3);
    const DensityMatrix target = partial_trace(simulate(prep, NoiseModel::none(), all_zero_state(4)).final_state, kTarget);
    const auto got = populations(target, m.basis_c), want = populations(m.rho_c, m.basis_c);
    if (std::abs(got[0] - want[0]) > 1e-9 || std::abs(got[1] - want[1]) > 1e-9)
      fail(ErrorKind::InvalidState, "state preparation missed the cold Gibbs populations");
  }
  return prog;
}

inline CircuitProgram build_otto_circuit(const CycleParams& params, const OttoCircuitOptions& opt = {}) {
  return build_otto_circuit(build_cycle_model(params), opt);
}

// ---------------------------------------------------------------- readout

struct Estimate {
  double value = 0.0;
  double std_error = 0.0;
};

struct ReadoutOptions {
  std::optional<std::uint64_t> shots;  // exact expectation when absent
  std::uint64_t seed = 0;
  double flip_probability = 0.0;  // symmetric bit-flip on each sigma_z outcome
};

/// <H> on one qubit by rotating each Pauli term onto sigma_z (L for x, K for y).
inline Estimate energy_expectation(const DensityMatrix& rho, const ComplexMatrix& h, const ReadoutOptions& opt = {}) {
  if (rho.dim() != 2 || h.dim() != 2) fail(ErrorKind::DimensionMismatch, "energy_expectation works on one qubit");
  if (!(opt.flip_probability >= 0.0 && opt.flip_probability <= 1.0))
    fail(ErrorKind::ParamOutOfRange, "flip probability outside [0, 1]");
  if (opt.shots && *opt.shots == 0) fail(ErrorKind::ParamOutOfRange, "shots must be positive");
  const ComplexMatrix sz = pauli(Axis::z);
  const double h0 = 0.5 * h.trace().real();
  const std::array<std::pair<Axis, std::optional<ComplexMatrix>>, 3> terms{
      {{Axis::x, l_gate()}, {Axis::y, k_gate()}, {Axis::z, std::nullopt}}};

  std::mt19937_64 rng(opt.seed);
  Estimate est{h0, 0.0};
  double var = 0.0;
  for (const auto& [axis, rot] : terms) {
    const double coeff = 0.5 * trace_product(h, pauli(axis)).real();
    if (coeff == 0.0) continue;
    const ComplexMatrix rotated = rot ? conjugate(*rot, rho.mat()) : rho.mat();
    const double z = trace_product(rotated, sz).real();
    const double p0 = std::clamp(0.5 * (1.0 + z), 0.0, 1.0);
    const double p0_read = (1.0 - opt.flip_probability) * p0 + opt.flip_probability * (1.0 - p0);
    if (!opt.shots) {
      est.value += coeff * (2.0 * p0_read - 1.0);
      continue;
    }
    const std::uint64_t n = *opt.shots;
    std::binomial_distribution<std::uint64_t> draw(n, p0_read);
    const double k0 = static_cast<double>(draw(rng));
    const double mean = 2.0 * k0 / static_cast<double>(n) - 1.0;
    const double sample_var = n > 1 ? (1.0 - mean * mean) * static_cast<double>(n) / static_cast<double>(n - 1) : 0.0;
    est.value += coeff * mean;
    var += coeff * coeff * sample_var / static_cast<double>(n);
  }
  est.std_error = std::sqrt(var);
  return est;
}

// ---------------------------------------------------------------- work and cost

struct CircuitWork {
  double w_total = 0.0;
  Estimate w_exp, w_comp;
  SimulationResult sim;
};

/// Work read off the target qubit at the four checkpoints.
inline CircuitWork circuit_work(const CycleModel& m, const NoiseModel& noise, const OttoCircuitOptions& opt = {},
                                const ReadoutOptions& readout = {}) {
  const CircuitProgram prog = build_otto_circuit(m, opt);
  CircuitWork out{0.0, {}, {}, simulate(prog, noise, all_zero_state(4))};
  auto target = [&](std::string_view name) { return partial_trace(out.sim.checkpoint(name), kTarget); };
  ReadoutOptions ro = readout;
  auto energy = [&](const DensityMatrix& r, const ComplexMatrix& h) {
    const Estimate e = energy_expectation(r, h, ro);
    ++ro.seed;  // independent draws per measurement setting
    return e;
  };
  const Estimate e_exp = energy(target("rho_exp"), m.h_exp_end), e_c = energy(target("rho_c"), m.h_c);
  const Estimate e_comp = energy(target("rho_comp"), m.h_comp_end), e_thf = energy(target("rho_thf"), m.h_h);
  out.w_exp = {e_exp.value - e_c.value, std::hypot(e_exp.std_error, e_c.std_error)};
  out.w_comp = {e_comp.value - e_thf.value, std::hypot(e_comp.std_error, e_thf.std_error)};
  out.w_total = out.w_exp.value + out.w_comp.value;
  return out;
}

struct CostResult {
  double ct = 0.0;
  double bound = std::numeric_limits<double>::quiet_NaN();
  bool bound_applicable = false;
  bool within_bound = false;
  double w_numeric = 0.0, w_circuit = 0.0;
};

/// C^T = W(model with damping) - W(circuit with gate noise), with the closed-form
/// bound in the sigma_z model.
inline CostResult thermodynamic_cost(const CycleParams& params, const NoiseModel& noise) {
  const CycleModel m = build_cycle_model(params);
  CostResult c;
  c.w_numeric = run_cycle(m).w_total;
  c.w_circuit = circuit_work(m, noise).w_total;
  c.ct = c.w_numeric - c.w_circuit;
  if (params.basis_mode == BasisMode::zbasis) {
    c.bound_applicable = true;
    c.bound = oracle::cost_bound(oracle::inputs_from(params));
    c.within_bound = c.ct < c.bound;
  }
  return c;
}

// ---------------------------------------------------------------- JSON

inline nlohmann::json matrix_to_json(const ComplexMatrix& m) {
  auto out = nlohmann::json::array();
  for (const auto& v : m.entries()) out.push_back({v.real(), v.imag()});
  return out;
}

inline ComplexMatrix matrix_from_json(const nlohmann::json& j) {
  if (!j.is_array()) fail(ErrorKind::ConfigError, "matrix must be an array of [re, im] pairs");
  std::size_t dim = 0;
  while (dim * dim < j.size()) ++dim;
  if (dim * dim != j.size() || !is_supported_dim(dim)) fail(ErrorKind::ConfigError, "matrix entry count is not dim^2");
  std::vector<cplx> e;
  for (const auto& v : j) {
    if (!v.is_array() || v.size() != 2) fail(ErrorKind::ConfigError, "matrix entries must be [re, im]");
    e.emplace_back(v[0].get<double>(), v[1].get<double>());
  }
  return ComplexMatrix(dim, std::move(e));
}

inline constexpr int kCircuitSchema = 1;

inline nlohmann::json to_json(const CircuitProgram& prog) {
  nlohmann::json ops = nlohmann::json::array();
  for (const auto& op : prog.ops) {
    nlohmann::json params = nlohmann::json::object();
    switch (op.kind) {
      case GateKind::RX: params["theta"] = op.angle; break;
      case GateKind::CLAMBDA:
        params["lambda"] = op.lambda;
        params["variant"] = op.variant == LambdaVariant::unitary ? "unitary" : "literal";
        break;
      case GateKind::NOISE:
        params["gamma_prime"] = op.gamma_prime;
        params["p"] = op.p;
        break;
      default: break;
    }
    if (op.matrix) params["matrix"] = matrix_to_json(*op.matrix);
    if (!op.label.empty()) params["label"] = op.label;
    ops.push_back({{"kind", std::string(to_string(op.kind))}, {"qubits", op.qubits}, {"params", params}});
  }
  return {{"schema", kCircuitSchema}, {"n_qubits", prog.n_qubits}, {"ops", ops}};
}

inline CircuitProgram circuit_from_json(const nlohmann::json& j) {
  try {
    if (j.value("schema", 0) != kCircuitSchema) fail(ErrorKind::ConfigError, "unsupported circuit schema");
    CircuitProgram prog;
    prog.n_qubits = j.at("n_qubits").get<int>();
    for (const auto& o : j.at("ops")) {
      GateOp op;
      op.kind = gate_kind_from(o.at("kind").get<std::string>());
      op.qubits = o.at("qubits").get<std::vector<int>>();
      const auto params = o.value("params", nlohmann::json::object());
      op.angle = params.value("theta", 0.0);
      op.lambda = params.value("lambda", 0.0);
      const std::string variant = params.value("variant", std::string("unitary"));
      if (variant != "unitary" && variant != "literal") fail(ErrorKind::ConfigError, "unknown CLAMBDA variant");
      op.variant = variant == "unitary" ? LambdaVariant::unitary : LambdaVariant::literal;
      op.gamma_prime = params.value("gamma_prime", 0.0);
      op.p = params.value("p", 0.0);
      op.label = params.value("label", std::string());
      if (params.contains("matrix")) op.matrix = matrix_from_json(params["matrix"]);
      prog.ops.push_back(std::move(op));
    }
    prog.validate();
    return prog;
  } catch (const nlohmann::json::exception& e) {
    fail(ErrorKind::ConfigError, std::string("circuit JSON: ") + e.what());
  }
}

}  // namespace qotto
