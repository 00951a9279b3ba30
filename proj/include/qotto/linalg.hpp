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

// Dense complex matrices sized for one to four qubits (dim 2..16), with a
// deterministic Hermitian eigensolver and the exp/log built on top of it.

#pragma once

#include <algorithm>
#include <cmath>
#include <complex>
#include <cstddef>
#include <initializer_list>
#include <numeric>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "qotto/error.hpp"

namespace qotto {

using cplx = std::complex<double>;

inline constexpr cplx kI{0.0, 1.0};
inline constexpr std::size_t kMaxDim = 16;

constexpr bool is_supported_dim(std::size_t dim) {
  return dim == 2 || dim == 4 || dim == 8 || dim == 16;
}

/// Square complex matrix, row-major. dim is one of {2, 4, 8, 16}.
class ComplexMatrix {
 public:
  ComplexMatrix() : ComplexMatrix(2) {}

  explicit ComplexMatrix(std::size_t dim) : dim_(dim), data_(dim * dim) {
    if (!is_supported_dim(dim)) {
      fail(dim > kMaxDim ? ErrorKind::DimensionOverflow : ErrorKind::DimensionMismatch,
           "matrix dimension " + std::to_string(dim) + " not in {2,4,8,16}");
    }
  }

  ComplexMatrix(std::size_t dim, std::vector<cplx> entries) : ComplexMatrix(dim) {
    if (entries.size() != dim * dim) {
      fail(ErrorKind::DimensionMismatch, "entry count does not match dim^2");
    }
    data_ = std::move(entries);
  }

  /// Row-major nested initializer, e.g. {{1, 0}, {0, -1}}.
  ComplexMatrix(std::initializer_list<std::initializer_list<cplx>> rows) : ComplexMatrix(rows.size()) {
    std::size_t r = 0;
    for (const auto& row : rows) {
      if (row.size() != dim_) fail(ErrorKind::DimensionMismatch, "ragged matrix initializer");
      std::copy(row.begin(), row.end(), data_.begin() + static_cast<std::ptrdiff_t>(r * dim_));
      ++r;
    }
  }

  static ComplexMatrix identity(std::size_t dim) {
    ComplexMatrix m(dim);
    for (std::size_t i = 0; i < dim; ++i) m(i, i) = 1.0;
    return m;
  }

  static ComplexMatrix diagonal(std::span<const cplx> diag) {
    ComplexMatrix m(diag.size());
    for (std::size_t i = 0; i < diag.size(); ++i) m(i, i) = diag[i];
    return m;
  }

  static ComplexMatrix diagonal(std::span<const double> diag) {
    ComplexMatrix m(diag.size());
    for (std::size_t i = 0; i < diag.size(); ++i) m(i, i) = diag[i];
    return m;
  }

  std::size_t dim() const noexcept { return dim_; }
  std::span<const cplx> entries() const noexcept { return data_; }

  cplx& operator()(std::size_t r, std::size_t c) noexcept { return data_[r * dim_ + c]; }
  const cplx& operator()(std::size_t r, std::size_t c) const noexcept { return data_[r * dim_ + c]; }

  ComplexMatrix adjoint() const {
    ComplexMatrix out(dim_);
    for (std::size_t r = 0; r < dim_; ++r)
      for (std::size_t c = 0; c < dim_; ++c) out(c, r) = std::conj((*this)(r, c));
    return out;
  }

  cplx trace() const {
    cplx t = 0.0;
    for (std::size_t i = 0; i < dim_; ++i) t += (*this)(i, i);
    return t;
  }

  double frobenius_norm() const {
    double s = 0.0;
    for (const auto& v : data_) s += std::norm(v);
    return std::sqrt(s);
  }

  /// Column c as a vector.
  std::vector<cplx> column(std::size_t c) const {
    std::vector<cplx> v(dim_);
    for (std::size_t r = 0; r < dim_; ++r) v[r] = (*this)(r, c);
    return v;
  }

  ComplexMatrix& operator+=(const ComplexMatrix& o) {
    require_same_dim(o);
    for (std::size_t i = 0; i < data_.size(); ++i) data_[i] += o.data_[i];
    return *this;
  }
  ComplexMatrix& operator-=(const ComplexMatrix& o) {
    require_same_dim(o);
    for (std::size_t i = 0; i < data_.size(); ++i) data_[i] -= o.data_[i];
    return *this;
  }
  ComplexMatrix& operator*=(cplx s) {
    for (auto& v : data_) v *= s;
    return *this;
  }

  friend ComplexMatrix operator+(ComplexMatrix a, const ComplexMatrix& b) { return a += b; }
  friend ComplexMatrix operator-(ComplexMatrix a, const ComplexMatrix& b) { return a -= b; }
  friend ComplexMatrix operator-(ComplexMatrix a) { return a *= -1.0; }
  friend ComplexMatrix operator*(ComplexMatrix a, cplx s) { return a *= s; }
  friend ComplexMatrix operator*(cplx s, ComplexMatrix a) { return a *= s; }
  friend ComplexMatrix operator*(ComplexMatrix a, double s) { return a *= cplx(s); }
  friend ComplexMatrix operator*(double s, ComplexMatrix a) { return a *= cplx(s); }

  friend ComplexMatrix operator*(const ComplexMatrix& a, const ComplexMatrix& b) {
    a.require_same_dim(b);
    const std::size_t n = a.dim_;
    ComplexMatrix out(n);
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t k = 0; k < n; ++k) {
        const cplx aik = a(i, k);
        if (aik == cplx(0.0)) continue;
        for (std::size_t j = 0; j < n; ++j) out(i, j) += aik * b(k, j);
      }
    return out;
  }

  friend bool operator==(const ComplexMatrix&, const ComplexMatrix&) = default;

 private:
  void require_same_dim(const ComplexMatrix& o) const {
    if (o.dim_ != dim_) fail(ErrorKind::DimensionMismatch, "matrix dimensions differ");
  }

  std::size_t dim_;
  std::vector<cplx> data_;
};

/// Largest elementwise |a - b|.
inline double max_abs_diff(const ComplexMatrix& a, const ComplexMatrix& b) {
  if (a.dim() != b.dim()) fail(ErrorKind::DimensionMismatch, "matrix dimensions differ");
  double m = 0.0;
  for (std::size_t i = 0; i < a.entries().size(); ++i) m = std::max(m, std::abs(a.entries()[i] - b.entries()[i]));
  return m;
}

inline double hermiticity_defect(const ComplexMatrix& m) { return max_abs_diff(m, m.adjoint()); }

inline bool is_unitary(const ComplexMatrix& u, double tol = 1e-10) {
  return max_abs_diff(u * u.adjoint(), ComplexMatrix::identity(u.dim())) <= tol;
}

/// Tr(a b) without forming the product.
inline cplx trace_product(const ComplexMatrix& a, const ComplexMatrix& b) {
  if (a.dim() != b.dim()) fail(ErrorKind::DimensionMismatch, "matrix dimensions differ");
  cplx t = 0.0;
  for (std::size_t i = 0; i < a.dim(); ++i)
    for (std::size_t k = 0; k < a.dim(); ++k) t += a(i, k) * b(k, i);
  return t;
}

/// u m u^dagger
inline ComplexMatrix conjugate(const ComplexMatrix& u, const ComplexMatrix& m) { return u * m * u.adjoint(); }

enum class Axis { x, y, z };

inline ComplexMatrix pauli(Axis which) {
  switch (which) {
    case Axis::x: return ComplexMatrix{{0.0, 1.0}, {1.0, 0.0}};
    case Axis::y: return ComplexMatrix{{0.0, -kI}, {kI, 0.0}};
    case Axis::z: return ComplexMatrix{{1.0, 0.0}, {0.0, -1.0}};
  }
  return ComplexMatrix::identity(2);
}

inline ComplexMatrix kron(const ComplexMatrix& a, const ComplexMatrix& b) {
  const std::size_t n = a.dim() * b.dim();
  if (n > kMaxDim) fail(ErrorKind::DimensionOverflow, "kron result dimension " + std::to_string(n) + " exceeds 16");
  ComplexMatrix out(n);
  for (std::size_t ar = 0; ar < a.dim(); ++ar)
    for (std::size_t ac = 0; ac < a.dim(); ++ac) {
      const cplx s = a(ar, ac);
      if (s == cplx(0.0)) continue;
      for (std::size_t br = 0; br < b.dim(); ++br)
        for (std::size_t bc = 0; bc < b.dim(); ++bc) out(ar * b.dim() + br, ac * b.dim() + bc) = s * b(br, bc);
    }
  return out;
}

struct EigenDecomposition {
  std::vector<double> values;  // ascending
  ComplexMatrix vectors;       // column k pairs with values[k]
};

namespace detail {

inline constexpr double kHermitianTol = 1e-10;
inline constexpr double kJacobiTol = 1e-13;
inline constexpr int kJacobiMaxSweeps = 100;

inline double off_diagonal_norm(const ComplexMatrix& a) {
  double s = 0.0;
  for (std::size_t r = 0; r < a.dim(); ++r)
    for (std::size_t c = 0; c < a.dim(); ++c)
      if (r != c) s += std::norm(a(r, c));
  return std::sqrt(s);
}

// Rotate so the first component with non-negligible magnitude is real positive.
inline void fix_phase(ComplexMatrix& v, std::size_t col) {
  double scale = 0.0;
  for (std::size_t r = 0; r < v.dim(); ++r) scale = std::max(scale, std::abs(v(r, col)));
  for (std::size_t r = 0; r < v.dim(); ++r) {
    const double mag = std::abs(v(r, col));
    if (mag > 1e-12 * scale) {
      const cplx phase = std::conj(v(r, col)) / mag;
      for (std::size_t k = 0; k < v.dim(); ++k) v(k, col) *= phase;
      v(r, col) = mag;
      return;
    }
  }
}

inline bool lex_less(const ComplexMatrix& v, std::size_t a, std::size_t b) {
  for (std::size_t r = 0; r < v.dim(); ++r) {
    const cplx x = v(r, a), y = v(r, b);
    if (x.real() != y.real()) return x.real() > y.real();
    if (x.imag() != y.imag()) return x.imag() > y.imag();
  }
  return false;
}

}  // namespace detail

/// Cyclic complex Jacobi. Eigenvalues ascending; each eigenvector's first
/// non-negligible component is real positive; near-ties (1e-12) are broken
/// lexicographically on the phase-fixed vectors.
inline EigenDecomposition herm_eig(const ComplexMatrix& m) {
  const double defect = hermiticity_defect(m);
  if (defect > detail::kHermitianTol) {
    fail(ErrorKind::NotHermitian, "hermiticity defect " + std::to_string(defect));
  }
  const std::size_t n = m.dim();
  ComplexMatrix a = 0.5 * (m + m.adjoint());
  ComplexMatrix v = ComplexMatrix::identity(n);
  const double threshold = detail::kJacobiTol * std::max(1.0, a.frobenius_norm());

  int sweep = 0;
  while (detail::off_diagonal_norm(a) > threshold) {
    if (++sweep > detail::kJacobiMaxSweeps) fail(ErrorKind::ConvergenceFailure, "Jacobi sweeps exhausted");
    for (std::size_t p = 0; p + 1 < n; ++p) {
      for (std::size_t q = p + 1; q < n; ++q) {
        const cplx apq = a(p, q);
        const double mag = std::abs(apq);
        if (mag == 0.0) continue;
        const cplx phase = apq / mag;  // e^{i phi}
        const double theta = 0.5 * std::atan2(2.0 * mag, (a(q, q) - a(p, p)).real());
        const double c = std::cos(theta), s = std::sin(theta);
        // J acts on columns p, q: [c, s; -s e^{-i phi}, c e^{-i phi}]
        const cplx jpp = c, jpq = s, jqp = -s * std::conj(phase), jqq = c * std::conj(phase);
        for (std::size_t k = 0; k < n; ++k) {  // a <- a J
          const cplx akp = a(k, p), akq = a(k, q);
          a(k, p) = akp * jpp + akq * jqp;
          a(k, q) = akp * jpq + akq * jqq;
        }
        for (std::size_t k = 0; k < n; ++k) {  // a <- J^dagger a
          const cplx apk = a(p, k), aqk = a(q, k);
          a(p, k) = std::conj(jpp) * apk + std::conj(jqp) * aqk;
          a(q, k) = std::conj(jpq) * apk + std::conj(jqq) * aqk;
        }
        a(p, q) = 0.0;
        a(q, p) = 0.0;
        for (std::size_t k = 0; k < n; ++k) {  // v <- v J
          const cplx vkp = v(k, p), vkq = v(k, q);
          v(k, p) = vkp * jpp + vkq * jqp;
          v(k, q) = vkp * jpq + vkq * jqq;
        }
      }
    }
  }

  for (std::size_t k = 0; k < n; ++k) detail::fix_phase(v, k);

  std::vector<std::size_t> order(n);
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(), [&](std::size_t i, std::size_t j) {
    const double li = a(i, i).real(), lj = a(j, j).real();
    if (std::abs(li - lj) > 1e-12 * std::max(1.0, std::max(std::abs(li), std::abs(lj)))) return li < lj;
    return detail::lex_less(v, i, j);
  });

  EigenDecomposition out{std::vector<double>(n), ComplexMatrix(n)};
  for (std::size_t k = 0; k < n; ++k) {
    out.values[k] = a(order[k], order[k]).real();
    for (std::size_t r = 0; r < n; ++r) out.vectors(r, k) = v(r, order[k]);
  }
  return out;
}

/// V diag(f(lambda)) V^dagger
template <typename F>
ComplexMatrix apply_spectral(const EigenDecomposition& e, F&& f) {
  const std::size_t n = e.values.size();
  std::vector<cplx> d(n);
  for (std::size_t k = 0; k < n; ++k) d[k] = f(e.values[k]);
  return e.vectors * ComplexMatrix::diagonal(std::span<const cplx>(d)) * e.vectors.adjoint();
}

/// Matrix exponential for Hermitian or anti-Hermitian input.
inline ComplexMatrix mat_exp(const ComplexMatrix& m) {
  if (hermiticity_defect(m) <= detail::kHermitianTol) {
    return apply_spectral(herm_eig(m), [](double l) { return cplx(std::exp(l)); });
  }
  const ComplexMatrix h = -kI * m;  // m = i h
  if (hermiticity_defect(h) <= detail::kHermitianTol) {
    return apply_spectral(herm_eig(h), [](double l) { return std::exp(kI * l); });
  }
  fail(ErrorKind::NotHermitian, "mat_exp needs Hermitian or anti-Hermitian input");
}

/// exp(-i h t) for Hermitian h.
inline ComplexMatrix unitary_exp(const ComplexMatrix& h, double t) {
  return apply_spectral(herm_eig(h), [t](double l) { return std::exp(-kI * (l * t)); });
}

inline constexpr double kLogFloor = 1e-14;

/// Logarithm of a Hermitian PSD matrix. Eigenvalues below 1e-14 are clamped.
inline ComplexMatrix mat_log(const ComplexMatrix& m) {
  const auto e = herm_eig(m);
  if (e.values.front() < -1e-9) {
    fail(ErrorKind::NotPositive, "mat_log input has eigenvalue " + std::to_string(e.values.front()));
  }
  if (e.values.back() <= kLogFloor) fail(ErrorKind::SingularInput, "mat_log of a vanishing matrix");
  return apply_spectral(e, [](double l) { return cplx(std::log(std::max(l, kLogFloor))); });
}

}  // namespace qotto
