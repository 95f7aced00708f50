#include "specsense/complex_matrix.hpp"

#include <algorithm>
#include <cmath>

#include "specsense/errors.hpp"

namespace specsense {

ComplexMatrix ComplexMatrix::identity(std::size_t n) {
  ComplexMatrix m(n, n);
  for (std::size_t i = 0; i < n; ++i) m(i, i) = 1.0;
  return m;
}

ComplexMatrix ComplexMatrix::diagonal(std::span<const double> diag) {
  ComplexMatrix m(diag.size(), diag.size());
  for (std::size_t i = 0; i < diag.size(); ++i) m(i, i) = diag[i];
  return m;
}

double ComplexMatrix::trace_real() const noexcept {
  double t = 0.0;
  const std::size_t n = std::min(rows_, cols_);
  for (std::size_t i = 0; i < n; ++i) t += (*this)(i, i).real();
  return t;
}

double ComplexMatrix::frobenius_norm_sq() const noexcept {
  double s = 0.0;
  for (const auto& z : entries_) s += std::norm(z);
  return s;
}

double ComplexMatrix::max_abs_entry() const noexcept {
  double m = 0.0;
  for (const auto& z : entries_) m = std::max(m, std::abs(z));
  return m;
}

bool ComplexMatrix::is_hermitian(double tol) const noexcept {
  if (rows_ != cols_) return false;
  const double bound = tol * max_abs_entry();
  for (std::size_t i = 0; i < rows_; ++i) {
    for (std::size_t j = i; j < cols_; ++j) {
      if (std::abs((*this)(i, j) - std::conj((*this)(j, i))) > bound)
        return false;
    }
  }
  return true;
}

ComplexMatrix matmul(const ComplexMatrix& a, const ComplexMatrix& b) {
  if (a.cols() != b.rows()) throw InvalidDims("matmul: inner dimensions differ");
  ComplexMatrix c(a.rows(), b.cols());
  for (std::size_t i = 0; i < a.rows(); ++i) {
    for (std::size_t k = 0; k < a.cols(); ++k) {
      const auto aik = a(i, k);
      if (aik == std::complex<double>{}) continue;
      for (std::size_t j = 0; j < b.cols(); ++j) c(i, j) += aik * b(k, j);
    }
  }
  return c;
}

ComplexMatrix gram(const ComplexMatrix& x) {
  const std::size_t k = x.rows();
  ComplexMatrix r(k, k);
  for (std::size_t i = 0; i < k; ++i) {
    for (std::size_t j = i; j < k; ++j) {
      std::complex<double> s = 0.0;
      for (std::size_t t = 0; t < x.cols(); ++t) s += x(i, t) * std::conj(x(j, t));
      if (i == j) s = {s.real(), 0.0};
      r(i, j) = s;
      r(j, i) = std::conj(s);
    }
  }
  return r;
}

ComplexMatrix scaled(const ComplexMatrix& a, double factor) {
  ComplexMatrix c = a;
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t j = 0; j < a.cols(); ++j) c(i, j) *= factor;
  return c;
}

double relative_frobenius_error(const ComplexMatrix& a, const ComplexMatrix& b) {
  if (a.rows() != b.rows() || a.cols() != b.cols())
    throw InvalidDims("relative_frobenius_error: shape mismatch");
  double num = 0.0;
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t j = 0; j < a.cols(); ++j) num += std::norm(a(i, j) - b(i, j));
  const double den = b.frobenius_norm_sq();
  if (den == 0.0) return std::sqrt(num);
  return std::sqrt(num / den);
}

}  // namespace specsense
