#pragma once

#include <complex>
#include <cstddef>
#include <span>
#include <vector>

namespace specsense {

// Dense complex matrix, row-major, value semantics. Sized for the small
// sensor arrays of this library (K <= 16); no view machinery, no BLAS.
class ComplexMatrix {
public:
  using value_type = std::complex<double>;

  ComplexMatrix() = default;
  ComplexMatrix(std::size_t rows, std::size_t cols)
      : rows_(rows), cols_(cols), entries_(rows * cols) {}

  static ComplexMatrix identity(std::size_t n);
  static ComplexMatrix diagonal(std::span<const double> diag);

  std::size_t rows() const noexcept { return rows_; }
  std::size_t cols() const noexcept { return cols_; }

  value_type& operator()(std::size_t r, std::size_t c) noexcept {
    return entries_[r * cols_ + c];
  }
  const value_type& operator()(std::size_t r, std::size_t c) const noexcept {
    return entries_[r * cols_ + c];
  }

  std::span<const value_type> entries() const noexcept { return entries_; }

  // Sum of real parts of the diagonal. For Hermitian input this is tr(A).
  double trace_real() const noexcept;

  // Sum of |a_ij|^2 = tr(A A^H); equals tr(A^2) when A is Hermitian.
  double frobenius_norm_sq() const noexcept;

  double max_abs_entry() const noexcept;

  // |a_ij - conj(a_ji)| <= tol * max|a| for all i, j (and square).
  bool is_hermitian(double tol = 1e-12) const noexcept;

  friend bool operator==(const ComplexMatrix&, const ComplexMatrix&) = default;

private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<value_type> entries_;
};

ComplexMatrix matmul(const ComplexMatrix& a, const ComplexMatrix& b);

// X X^H, built exactly Hermitian (upper triangle mirrored, real diagonal).
ComplexMatrix gram(const ComplexMatrix& x);

ComplexMatrix scaled(const ComplexMatrix& a, double factor);

// max_ij |a_ij - b_ij| relative Frobenius: ||a - b||_F / ||b||_F.
double relative_frobenius_error(const ComplexMatrix& a, const ComplexMatrix& b);

}  // namespace specsense
