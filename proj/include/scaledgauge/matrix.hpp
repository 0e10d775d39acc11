#pragma once

#include <algorithm>
#include <cmath>
#include <complex>
#include <cstddef>
#include <initializer_list>
#include <vector>

#include "scaledgauge/error.hpp"
#include "scaledgauge/random.hpp"

namespace scaledgauge {

using HilbertVector = std::vector<std::complex<double>>;

/// Small dense square complex matrix, row-major.
class ComplexMatrix {
 public:
  using value_type = std::complex<double>;

  ComplexMatrix() = default;
  explicit ComplexMatrix(std::size_t n) : n_(n), data_(n * n, 0.0) {}
  ComplexMatrix(std::size_t n, std::initializer_list<value_type> rows) : n_(n), data_(rows) {
    if (data_.size() != n * n) throw Error(ErrorKind::kDimensionMismatch, "matrix initializer size");
  }

  static ComplexMatrix identity(std::size_t n) {
    ComplexMatrix m(n);
    for (std::size_t i = 0; i < n; ++i) m(i, i) = 1.0;
    return m;
  }

  std::size_t size() const { return n_; }

  value_type& operator()(std::size_t i, std::size_t j) { return data_[i * n_ + j]; }
  const value_type& operator()(std::size_t i, std::size_t j) const { return data_[i * n_ + j]; }

  ComplexMatrix adjoint() const {
    ComplexMatrix out(n_);
    for (std::size_t i = 0; i < n_; ++i)
      for (std::size_t j = 0; j < n_; ++j) out(i, j) = std::conj((*this)(j, i));
    return out;
  }

  value_type trace() const {
    value_type t = 0.0;
    for (std::size_t i = 0; i < n_; ++i) t += (*this)(i, i);
    return t;
  }

  friend ComplexMatrix operator*(const ComplexMatrix& a, const ComplexMatrix& b) {
    check_same(a, b);
    ComplexMatrix out(a.n_);
    for (std::size_t i = 0; i < a.n_; ++i)
      for (std::size_t k = 0; k < a.n_; ++k)
        for (std::size_t j = 0; j < a.n_; ++j) out(i, j) += a(i, k) * b(k, j);
    return out;
  }

  friend ComplexMatrix operator+(ComplexMatrix a, const ComplexMatrix& b) {
    check_same(a, b);
    for (std::size_t i = 0; i < a.data_.size(); ++i) a.data_[i] += b.data_[i];
    return a;
  }

  friend ComplexMatrix operator-(ComplexMatrix a, const ComplexMatrix& b) {
    check_same(a, b);
    for (std::size_t i = 0; i < a.data_.size(); ++i) a.data_[i] -= b.data_[i];
    return a;
  }

  friend ComplexMatrix operator*(value_type c, ComplexMatrix a) {
    for (auto& x : a.data_) x = c * x;
    return a;
  }

  friend HilbertVector operator*(const ComplexMatrix& a, const HilbertVector& v) {
    if (v.size() != a.n_) throw Error(ErrorKind::kDimensionMismatch, "matrix-vector size");
    HilbertVector out(a.n_, 0.0);
    for (std::size_t i = 0; i < a.n_; ++i)
      for (std::size_t j = 0; j < a.n_; ++j) out[i] += a(i, j) * v[j];
    return out;
  }

  friend bool operator==(const ComplexMatrix&, const ComplexMatrix&) = default;

  /// Largest entry magnitude.
  double max_abs() const {
    double m = 0.0;
    for (const auto& x : data_) m = std::max(m, std::abs(x));
    return m;
  }

 private:
  static void check_same(const ComplexMatrix& a, const ComplexMatrix& b) {
    if (a.n_ != b.n_) throw Error(ErrorKind::kDimensionMismatch, "matrix sizes differ");
  }

  std::size_t n_ = 0;
  std::vector<value_type> data_;
};

inline std::complex<double> determinant2(const ComplexMatrix& m) {
  return m(0, 0) * m(1, 1) - m(0, 1) * m(1, 0);
}

/// max |U^dagger U - I|.
inline double unitarity_defect(const ComplexMatrix& u) {
  return (u.adjoint() * u - ComplexMatrix::identity(u.size())).max_abs();
}

/// Haar-style random unitary: modified Gram-Schmidt on the columns of a
/// complex Gaussian matrix.
inline ComplexMatrix random_unitary(std::size_t n, Rng& rng) {
  ComplexMatrix q(n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) q(i, j) = rng.complex_normal();
  for (std::size_t j = 0; j < n; ++j) {
    // Re-orthogonalize once.
    for (int pass = 0; pass < 2; ++pass) {
      for (std::size_t k = 0; k < j; ++k) {
        std::complex<double> proj = 0.0;
        for (std::size_t i = 0; i < n; ++i) proj += std::conj(q(i, k)) * q(i, j);
        for (std::size_t i = 0; i < n; ++i) q(i, j) -= proj * q(i, k);
      }
    }
    double norm = 0.0;
    for (std::size_t i = 0; i < n; ++i) norm += std::norm(q(i, j));
    norm = std::sqrt(norm);
    for (std::size_t i = 0; i < n; ++i) q(i, j) /= norm;
  }
  return q;
}

/// Truncated Taylor series exp(M) = sum_{k < terms} M^k / k!.
inline ComplexMatrix matrix_exponential_series(const ComplexMatrix& m, int terms) {
  ComplexMatrix sum = ComplexMatrix::identity(m.size());
  ComplexMatrix term = ComplexMatrix::identity(m.size());
  for (int k = 1; k < terms; ++k) {
    term = (1.0 / k) * (term * m);
    sum = sum + term;
  }
  return sum;
}

}  // namespace scaledgauge
