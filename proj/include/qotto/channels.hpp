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

// Kraus channels: amplitude damping, dephasing, partial-swap thermalization.
// Matrices are written in a "channel basis" whose slot 0 is the ground state;
// apply() rotates into that basis and back.

#pragma once

#include <cmath>
#include <string>
#include <utility>
#include <vector>

#include "qotto/state.hpp"

namespace qotto {

inline constexpr double kCptpTol = 1e-10;
inline constexpr std::size_t kMaxKrausOps = 4;

/// Largest elementwise deviation of sum E^dagger E from the identity.
inline double cptp_defect(const std::vector<ComplexMatrix>& ops) {
  ComplexMatrix s(ops.front().dim());
  for (const auto& e : ops) s += e.adjoint() * e;
  return max_abs_diff(s, ComplexMatrix::identity(s.dim()));
}

class KrausChannel {
 public:
  KrausChannel(std::vector<ComplexMatrix> ops, std::string label) : label_(std::move(label)) {
    if (ops.empty()) fail(ErrorKind::NotCptp, label_ + ": no Kraus operators");
    const std::size_t dim = ops.front().dim();
    for (auto& e : ops) {
      if (e.dim() != dim) fail(ErrorKind::DimensionMismatch, label_ + ": Kraus operators differ in dim");
      // Exactly-zero operators carry no action; dropping them keeps the list short.
      if (e.frobenius_norm() != 0.0) ops_.push_back(std::move(e));
    }
    if (ops_.empty()) fail(ErrorKind::NotCptp, label_ + ": all Kraus operators vanish");
    if (ops_.size() > kMaxKrausOps) fail(ErrorKind::NotCptp, label_ + ": more than four Kraus operators");
    const double defect = cptp_defect(ops_);
    if (defect > kCptpTol) fail(ErrorKind::NotCptp, label_ + ": sum E^dagger E deviates by " + std::to_string(defect));
  }

  static KrausChannel identity(std::size_t dim) { return KrausChannel({ComplexMatrix::identity(dim)}, "identity"); }

  const std::vector<ComplexMatrix>& ops() const noexcept { return ops_; }
  const std::string& label() const noexcept { return label_; }
  std::size_t dim() const noexcept { return ops_.front().dim(); }

  /// True when every operator is an exact multiple of the identity, so the map is the identity.
  bool acts_as_identity() const {
    for (const auto& e : ops_) {
      for (std::size_t r = 0; r < e.dim(); ++r)
        for (std::size_t c = 0; c < e.dim(); ++c) {
          if (r != c && e(r, c) != cplx(0.0)) return false;
          if (r == c && e(r, c) != e(0, 0)) return false;
        }
    }
    return true;
  }

 private:
  std::vector<ComplexMatrix> ops_;
  std::string label_;
};

namespace detail {
inline void require_unit_interval(double v, const char* name) {
  if (!(v >= 0.0 && v <= 1.0)) fail(ErrorKind::ParamOutOfRange, std::string(name) + " must lie in [0, 1]");
}
}  // namespace detail

/// Decay toward slot 0 with strength gamma_prime.
inline KrausChannel amplitude_damping(double gamma_prime) {
  detail::require_unit_interval(gamma_prime, "gamma_prime");
  return KrausChannel({ComplexMatrix{{1.0, 0.0}, {0.0, std::sqrt(1.0 - gamma_prime)}},
                       ComplexMatrix{{0.0, std::sqrt(gamma_prime)}, {0.0, 0.0}}},
                      "amplitude_damping");
}

/// Scales coherences by sqrt(1 - p), populations untouched.
inline KrausChannel phase_damping(double p) {
  detail::require_unit_interval(p, "p");
  return KrausChannel({ComplexMatrix{{1.0, 0.0}, {0.0, std::sqrt(1.0 - p)}},
                       ComplexMatrix{{0.0, 0.0}, {0.0, std::sqrt(p)}}},
                      "phase_damping");
}

enum class SwapOrdering {
  reordered,      // slot-0 weight is the ground population, so lambda = 1 lands on the Gibbs state
  literal,  // slot-0 weight is p0 itself
};

/// Four-operator partial swap toward a thermal qubit with excited population p0.
/// lambda = 0 is the identity; lambda = 1 replaces the state outright.
inline KrausChannel partial_swap_thermalization(double lambda, double p0,
                                                SwapOrdering ordering = SwapOrdering::reordered) {
  detail::require_unit_interval(lambda, "lambda");
  detail::require_unit_interval(p0, "p0");
  const double q = ordering == SwapOrdering::reordered ? 1.0 - p0 : p0;
  const double a = std::sqrt(q), b = std::sqrt(1.0 - q);
  const double keep = std::sqrt(1.0 - lambda), move = std::sqrt(lambda);
  return KrausChannel({ComplexMatrix{{a, 0.0}, {0.0, a * keep}},
                       ComplexMatrix{{0.0, a * move}, {0.0, 0.0}},
                       ComplexMatrix{{b * keep, 0.0}, {0.0, b}},
                       ComplexMatrix{{0.0, 0.0}, {b * move, 0.0}}},
                      "partial_swap");
}

/// Excited population e^{-beta eps}/(e^{-beta eps} + e^{beta eps}) of a +-eps qubit.
inline double thermal_excited_population(double beta, double eps) { return 1.0 / (1.0 + std::exp(2.0 * beta * eps)); }

/// gamma' reached after exposure t at decay rate gamma.
inline double damping_strength(double gamma, double t) { return -std::expm1(-0.5 * gamma * t); }

enum class DephasingCalibration {
  sqrt_factor,  // sqrt(1 - p) = e^{-2 Gamma t}, the factor the Kraus pair actually applies
  linear,       // 1 - 2p = e^{-2 Gamma t}
};

/// Dephasing strength equivalent to rate Gamma acting for time t.
inline double dephasing_strength(double rate, double t, DephasingCalibration cal = DephasingCalibration::sqrt_factor) {
  if (cal == DephasingCalibration::sqrt_factor) return -std::expm1(-4.0 * rate * t);
  return -0.5 * std::expm1(-2.0 * rate * t);
}

namespace detail {
inline bool is_exact_identity(const ComplexMatrix& m) { return m == ComplexMatrix::identity(m.dim()); }

inline ComplexMatrix kraus_sum(const KrausChannel& ch, const ComplexMatrix& r) {
  ComplexMatrix out(r.dim());
  for (const auto& e : ch.ops()) out += e * r * e.adjoint();
  return out;
}
}  // namespace detail

/// Applies the channel with its matrices read in `basis` (columns = channel slots).
inline DensityMatrix apply(const KrausChannel& ch, const DensityMatrix& rho, const ComplexMatrix& basis) {
  if (ch.dim() != rho.dim() || basis.dim() != rho.dim()) fail(ErrorKind::DimensionMismatch, "channel, state, basis dims");
  if (ch.acts_as_identity()) return rho;
  ComplexMatrix out(rho.dim());
  if (detail::is_exact_identity(basis)) {
    out = detail::kraus_sum(ch, rho.mat());
  } else {
    if (!is_unitary(basis)) fail(ErrorKind::ParamOutOfRange, "channel basis is not unitary");
    out = basis * detail::kraus_sum(ch, basis.adjoint() * rho.mat() * basis) * basis.adjoint();
  }
  try {
    return DensityMatrix(std::move(out));
  } catch (const Error& e) {
    fail(ErrorKind::ChannelBrokeState, ch.label() + " produced an invalid state (" + e.what() + ")");
  }
}

/// Computational-basis application.
inline DensityMatrix apply(const KrausChannel& ch, const DensityMatrix& rho) {
  return apply(ch, rho, ComplexMatrix::identity(rho.dim()));
}

namespace detail {

// Column-stacked vec(E) for a qubit operator: index r + 2c.
inline ComplexMatrix choi_of(const std::vector<ComplexMatrix>& ops) {
  ComplexMatrix j(4);
  for (const auto& e : ops)
    for (std::size_t a = 0; a < 4; ++a)
      for (std::size_t b = 0; b < 4; ++b) j(a, b) += e(a % 2, a / 2) * std::conj(e(b % 2, b / 2));
  return j;
}

// Minimal Kraus set (at most four) from the Choi eigendecomposition.
inline std::vector<ComplexMatrix> canonical_kraus(const std::vector<ComplexMatrix>& ops) {
  const auto eig = herm_eig(choi_of(ops));
  std::vector<ComplexMatrix> out;
  for (std::size_t k = 4; k-- > 0;) {
    const double l = eig.values[k];
    if (l <= 1e-15) continue;
    ComplexMatrix e(2);
    for (std::size_t a = 0; a < 4; ++a) e(a % 2, a / 2) = std::sqrt(l) * eig.vectors(a, k);
    out.push_back(std::move(e));
  }
  return out;
}

}  // namespace detail

/// a after b: rho -> a(b(rho)). Products beyond four operators are
/// re-expressed through the Choi matrix (qubit channels only).
inline KrausChannel compose(const KrausChannel& a, const KrausChannel& b) {
  if (a.dim() != b.dim()) fail(ErrorKind::DimensionMismatch, "compose needs equal dims");
  std::vector<ComplexMatrix> ops;
  for (const auto& x : a.ops())
    for (const auto& y : b.ops()) {
      ComplexMatrix p = x * y;
      if (p.frobenius_norm() != 0.0) ops.push_back(std::move(p));
    }
  if (ops.size() > kMaxKrausOps) {
    if (a.dim() != 2) fail(ErrorKind::DimensionMismatch, "Kraus reduction is implemented for qubits only");
    ops = detail::canonical_kraus(ops);
  }
  return KrausChannel(std::move(ops), a.label() + "*" + b.label());
}

}  // namespace qotto
