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

// Density matrices, thermal states, and the entropy/coherence measures.

#pragma once

#include <array>
#include <cmath>
#include <string>
#include <utility>
#include <vector>

#include "qotto/linalg.hpp"

namespace qotto {

inline constexpr double kStateTol = 1e-9;

/// Hermitian, unit-trace, positive semidefinite matrix. Checked on construction.
class DensityMatrix {
 public:
  DensityMatrix() : DensityMatrix(basis_state(2, 0)) {}

  explicit DensityMatrix(ComplexMatrix m, double tol = kStateTol) : mat_(std::move(m)) {
    const double herm = hermiticity_defect(mat_);
    if (herm > tol) fail(ErrorKind::InvalidState, "hermiticity defect " + std::to_string(herm));
    // Symmetrize so downstream eigensolves see an exactly Hermitian matrix.
    mat_ = 0.5 * (mat_ + mat_.adjoint());
    const double tr = mat_.trace().real();
    if (std::abs(tr - 1.0) > tol) fail(ErrorKind::InvalidState, "trace " + std::to_string(tr));
    const double lo = herm_eig(mat_).values.front();
    if (lo < -tol) fail(ErrorKind::InvalidState, "negative eigenvalue " + std::to_string(lo));
  }

  static DensityMatrix basis_state(std::size_t dim, std::size_t k) {
    ComplexMatrix m(dim);
    m(k, k) = 1.0;
    return DensityMatrix(std::move(m));
  }

  static DensityMatrix maximally_mixed(std::size_t dim) {
    return DensityMatrix(ComplexMatrix::identity(dim) * (1.0 / static_cast<double>(dim)));
  }

  /// |psi><psi| for a (not necessarily normalized) state vector.
  static DensityMatrix pure(const std::vector<cplx>& psi) {
    double norm = 0.0;
    for (const auto& a : psi) norm += std::norm(a);
    if (norm == 0.0) fail(ErrorKind::InvalidState, "zero state vector");
    ComplexMatrix m(psi.size());
    for (std::size_t r = 0; r < psi.size(); ++r)
      for (std::size_t c = 0; c < psi.size(); ++c) m(r, c) = psi[r] * std::conj(psi[c]) / norm;
    return DensityMatrix(std::move(m));
  }

  const ComplexMatrix& mat() const noexcept { return mat_; }
  std::size_t dim() const noexcept { return mat_.dim(); }
  cplx operator()(std::size_t r, std::size_t c) const noexcept { return mat_(r, c); }

 private:
  ComplexMatrix mat_;
};

struct ThermalSpec {
  double beta;
  ComplexMatrix hamiltonian;
};

/// Tr(rho h), real part.
inline double expectation(const DensityMatrix& rho, const ComplexMatrix& h) { return trace_product(rho.mat(), h).real(); }

/// e^{-beta H}/Z. The spectrum is shifted by its minimum so large beta stays finite.
inline DensityMatrix gibbs(const ThermalSpec& spec) {
  if (!(spec.beta > 0.0)) fail(ErrorKind::ParamOutOfRange, "gibbs needs beta > 0");
  const auto e = herm_eig(spec.hamiltonian);
  const double e0 = e.values.front();
  double z = 0.0;
  for (double l : e.values) z += std::exp(-spec.beta * (l - e0));
  return DensityMatrix(apply_spectral(e, [&](double l) { return cplx(std::exp(-spec.beta * (l - e0)) / z); }));
}

namespace detail {
inline double entropy_of(const std::vector<double>& spectrum) {
  double s = 0.0;
  for (double l : spectrum)
    if (l > kLogFloor) s -= l * std::log(l);
  return s;
}
}  // namespace detail

/// Entropy in nats, with 0 ln 0 = 0.
inline double von_neumann_entropy(const DensityMatrix& rho) { return detail::entropy_of(herm_eig(rho.mat()).values); }

/// D(rho || sigma) = Tr rho ln rho - Tr rho ln sigma.
inline double relative_entropy(const DensityMatrix& rho, const DensityMatrix& sigma) {
  if (rho.dim() != sigma.dim()) fail(ErrorKind::DimensionMismatch, "relative_entropy operands differ in dim");
  const auto es = herm_eig(sigma.mat());
  for (std::size_t k = 0; k < es.values.size(); ++k) {
    if (es.values[k] >= kLogFloor) continue;
    const auto v = es.vectors.column(k);
    cplx w = 0.0;
    for (std::size_t r = 0; r < v.size(); ++r)
      for (std::size_t c = 0; c < v.size(); ++c) w += std::conj(v[r]) * rho(r, c) * v[c];
    if (w.real() > kStateTol) fail(ErrorKind::SupportMismatch, "rho has weight outside the support of sigma");
  }
  const double neg_s = -von_neumann_entropy(rho);
  const ComplexMatrix log_sigma = apply_spectral(es, [](double l) { return cplx(std::log(std::max(l, kLogFloor))); });
  return neg_s - trace_product(rho.mat(), log_sigma).real();
}

/// Ascending-energy eigenbasis of h as the columns of a unitary.
inline ComplexMatrix eigenbasis(const ComplexMatrix& h) { return herm_eig(h).vectors; }

/// rho written in the given basis: B^dagger rho B.
inline ComplexMatrix in_basis(const DensityMatrix& rho, const ComplexMatrix& basis) {
  return basis.adjoint() * rho.mat() * basis;
}

/// Populations of rho along the basis columns.
inline std::vector<double> populations(const DensityMatrix& rho, const ComplexMatrix& basis) {
  const ComplexMatrix r = in_basis(rho, basis);
  std::vector<double> p(r.dim());
  for (std::size_t k = 0; k < r.dim(); ++k) p[k] = r(k, k).real();
  return p;
}

/// Drops every coherence of rho in the given basis.
inline DensityMatrix dephase(const DensityMatrix& rho, const ComplexMatrix& basis) {
  const auto p = populations(rho, basis);
  std::vector<cplx> d(p.begin(), p.end());
  return DensityMatrix(basis * ComplexMatrix::diagonal(std::span<const cplx>(d)) * basis.adjoint());
}

/// Relative entropy of coherence, S(dephased) - S(rho).
inline double coherence_relent(const DensityMatrix& rho, const ComplexMatrix& basis) {
  if (!is_unitary(basis)) fail(ErrorKind::ParamOutOfRange, "coherence basis is not unitary");
  return detail::entropy_of(populations(rho, basis)) - von_neumann_entropy(rho);
}

/// The (ground, excited) element of a qubit state in the given basis.
inline cplx offdiag_coherence(const DensityMatrix& rho, const ComplexMatrix& basis) {
  if (rho.dim() != 2) fail(ErrorKind::DimensionMismatch, "offdiag_coherence is defined for one qubit");
  return in_basis(rho, basis)(0, 1);
}

/// (<sx>, <sy>, <sz>) of a qubit state.
inline std::array<double, 3> bloch_vector(const DensityMatrix& rho) {
  if (rho.dim() != 2) fail(ErrorKind::DimensionMismatch, "Bloch vector needs a qubit");
  return {expectation(rho, pauli(Axis::x)), expectation(rho, pauli(Axis::y)), expectation(rho, pauli(Axis::z))};
}

}  // namespace qotto
