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

// Two-time sigma_z correlations across the cycle and the three-time
// Leggett-Garg combination K = C12 + C23 - C13.

#pragma once

#include <algorithm>
#include <functional>
#include <vector>

#include "qotto/engine.hpp"

namespace qotto {

/// Measurement instants: start of expansion, end of expansion, end of compression.
enum class LgiTime { t1 = 0, t2 = 1, t3 = 2 };

enum class LgiScheme {
  collapse,     // project at the earlier time, average over outcomes
  symmetrized,  // Tr[O_j Phi(1/2 {O_i, rho_i})]
};

using StateMap = std::function<DensityMatrix(const DensityMatrix&)>;

/// The pieces that define the correlations: the t1 state and the two propagation legs.
struct LgiDynamics {
  DensityMatrix rho1;
  StateMap leg12;  // t1 -> t2
  StateMap leg23;  // t2 -> t3
};

inline LgiDynamics cycle_dynamics(const CycleModel& m) {
  return {m.rho_c, [&m](const DensityMatrix& r) { return m.expand(r); },
          [&m](const DensityMatrix& r) { return m.compress(m.hot_stroke(r)); }};
}

namespace detail {

inline DensityMatrix state_at(const LgiDynamics& d, LgiTime t) {
  DensityMatrix r = d.rho1;
  if (t >= LgiTime::t2) r = d.leg12(r);
  if (t >= LgiTime::t3) r = d.leg23(r);
  return r;
}

inline DensityMatrix evolve(const LgiDynamics& d, LgiTime from, LgiTime to, DensityMatrix r) {
  if (from < LgiTime::t2 && to >= LgiTime::t2) r = d.leg12(r);
  if (from < LgiTime::t3 && to >= LgiTime::t3) r = d.leg23(r);
  return r;
}

// Linear extension of a state map to a Hermitian operator: split it into
// positive and negative parts and push each through as a normalized state.
inline ComplexMatrix evolve_operator(const LgiDynamics& d, LgiTime from, LgiTime to, const ComplexMatrix& x) {
  const auto e = herm_eig(x);
  std::vector<double> pos(e.values.size()), neg(e.values.size());
  double tp = 0.0, tn = 0.0;
  for (std::size_t k = 0; k < e.values.size(); ++k) {
    pos[k] = std::max(e.values[k], 0.0);
    neg[k] = std::max(-e.values[k], 0.0);
    tp += pos[k];
    tn += neg[k];
  }
  ComplexMatrix out(x.dim());
  auto part = [&](const std::vector<double>& w, double total, double sign) {
    if (total <= 0.0) return;
    std::vector<cplx> c(w.size());
    for (std::size_t k = 0; k < w.size(); ++k) c[k] = w[k] / total;
    DensityMatrix r(e.vectors * ComplexMatrix::diagonal(std::span<const cplx>(c)) * e.vectors.adjoint());
    out += (sign * total) * evolve(d, from, to, r).mat();
  };
  part(pos, tp, 1.0);
  part(neg, tn, -1.0);
  return out;
}

}  // namespace detail

/// C(t_i, t_j) for O = sigma_z.
inline double two_time_correlation(const LgiDynamics& d, LgiTime ti, LgiTime tj,
                                   LgiScheme scheme = LgiScheme::collapse) {
  if (ti > tj) fail(ErrorKind::TimeOrdering, "two_time_correlation needs t_i <= t_j");
  if (ti == tj) return 1.0;
  const DensityMatrix ri = detail::state_at(d, ti);
  const ComplexMatrix sz = pauli(Axis::z);
  if (scheme == LgiScheme::symmetrized) {
    const ComplexMatrix anti = 0.5 * (sz * ri.mat() + ri.mat() * sz);
    return trace_product(sz, detail::evolve_operator(d, ti, tj, anti)).real();
  }
  double c = 0.0;
  for (std::size_t k = 0; k < 2; ++k) {
    const double a = k == 0 ? 1.0 : -1.0;
    const double pa = ri(k, k).real();
    if (pa < 1e-15) continue;
    const DensityMatrix collapsed = DensityMatrix::basis_state(2, k);
    c += a * pa * expectation(detail::evolve(d, ti, tj, collapsed), sz);
  }
  return c;
}

struct LgiResult {
  double c12 = 0.0, c23 = 0.0, c13 = 0.0;
  double k = 0.0;
  bool violated = false;
};

inline constexpr double kLgiTol = 1e-9;

inline LgiResult lgi_k(const LgiDynamics& d, LgiScheme scheme = LgiScheme::collapse) {
  LgiResult r;
  r.c12 = two_time_correlation(d, LgiTime::t1, LgiTime::t2, scheme);
  r.c23 = two_time_correlation(d, LgiTime::t2, LgiTime::t3, scheme);
  r.c13 = two_time_correlation(d, LgiTime::t1, LgiTime::t3, scheme);
  r.k = r.c12 + r.c23 - r.c13;
  r.violated = r.k > 1.0 + kLgiTol;
  return r;
}

inline LgiResult lgi_k(const CycleParams& params, LgiScheme scheme = LgiScheme::collapse) {
  const CycleModel m = build_cycle_model(params);
  return lgi_k(cycle_dynamics(m), scheme);
}

/// K along a time axis where the stroke time and the noise exposure both equal t.
inline std::vector<LgiResult> lgi_scan(CycleParams params, const std::vector<double>& ts,
                                       LgiScheme scheme = LgiScheme::collapse) {
  std::vector<LgiResult> out;
  out.reserve(ts.size());
  for (double t : ts) {
    params.tau = t;
    params.t_noise = t;
    out.push_back(lgi_k(params, scheme));
  }
  return out;
}

/// Trapezoid-free violation measure: sum of max(0, K - 1) dt on a uniform grid.
inline double violation_area(const std::vector<double>& ts, const std::vector<double>& ks) {
  if (ts.size() < 2 || ts.size() != ks.size()) fail(ErrorKind::DimensionMismatch, "violation_area needs matching grids");
  const double dt = (ts.back() - ts.front()) / static_cast<double>(ts.size() - 1);
  double a = 0.0;
  for (double k : ks) a += std::max(0.0, k - 1.0);
  return a * dt;
}

inline double max_k(const std::vector<LgiResult>& rs) {
  double m = -3.0;
  for (const auto& r : rs) m = std::max(m, r.k);
  return m;
}

}  // namespace qotto
