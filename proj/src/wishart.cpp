#include "specsense/wishart.hpp"

#include <algorithm>
#include <cmath>
#include <functional>

#include "specsense/errors.hpp"

namespace specsense {

ComplexMatrix sample_standard_complex_gaussian(std::size_t rows,
                                               std::size_t cols,
                                               RngStream rng) {
  if (rows < 1 || cols < 1)
    throw InvalidDims("gaussian sample: dimensions must be >= 1");
  ComplexMatrix x(rows, cols);
  for (std::size_t i = 0; i < rows; ++i)
    for (std::size_t j = 0; j < cols; ++j) x(i, j) = rng.next_complex_gaussian();
  return x;
}

ComplexMatrix cholesky_lower(const ComplexMatrix& sigma) {
  if (sigma.rows() != sigma.cols())
    throw InvalidDims("cholesky: matrix must be square");
  const std::size_t n = sigma.rows();
  ComplexMatrix l(n, n);
  for (std::size_t j = 0; j < n; ++j) {
    double diag = sigma(j, j).real();
    for (std::size_t k = 0; k < j; ++k) diag -= std::norm(l(j, k));
    if (!(diag > 0.0) || !std::isfinite(diag))
      throw NotPositiveDefinite("cholesky: non-positive pivot at index " +
                                std::to_string(j));
    const double ljj = std::sqrt(diag);
    l(j, j) = ljj;
    for (std::size_t i = j + 1; i < n; ++i) {
      std::complex<double> s = sigma(i, j);
      for (std::size_t k = 0; k < j; ++k) s -= l(i, k) * std::conj(l(j, k));
      l(i, j) = s / ljj;
    }
  }
  return l;
}

ComplexMatrix sample_data_matrix(const ComplexMatrix& sigma,
                                 std::size_t n_samples, RngStream rng) {
  if (n_samples < 1) throw InvalidDims("sample_data_matrix: N must be >= 1");
  const ComplexMatrix l = cholesky_lower(sigma);
  const ComplexMatrix g =
      sample_standard_complex_gaussian(sigma.rows(), n_samples, rng);
  return matmul(l, g);
}

ComplexMatrix sample_covariance(const ComplexMatrix& x) { return gram(x); }

namespace {

// One complex Jacobi rotation zeroing w(p, q); w stays exactly Hermitian.
void jacobi_rotate(ComplexMatrix& w, std::size_t p, std::size_t q) {
  const std::complex<double> apq = w(p, q);
  const double m = std::abs(apq);
  if (m == 0.0) return;
  const std::complex<double> phase = apq / m;
  const double app = w(p, p).real();
  const double aqq = w(q, q).real();
  const double tau = (aqq - app) / (2.0 * m);
  const double t = (tau >= 0.0 ? 1.0 : -1.0) /
                   (std::abs(tau) + std::sqrt(1.0 + tau * tau));
  const double c = 1.0 / std::sqrt(1.0 + t * t);
  const double s = t * c;

  const std::size_t n = w.rows();
  for (std::size_t k = 0; k < n; ++k) {
    if (k == p || k == q) continue;
    const std::complex<double> wkp = w(k, p);
    const std::complex<double> wkq = w(k, q);
    const std::complex<double> nkp = c * wkp - s * std::conj(phase) * wkq;
    const std::complex<double> nkq = s * phase * wkp + c * wkq;
    w(k, p) = nkp;
    w(p, k) = std::conj(nkp);
    w(k, q) = nkq;
    w(q, k) = std::conj(nkq);
  }
  w(p, p) = c * c * app - 2.0 * s * c * m + s * s * aqq;
  w(q, q) = s * s * app + 2.0 * s * c * m + c * c * aqq;
  w(p, q) = 0.0;
  w(q, p) = 0.0;
}

double offdiag_norm(const ComplexMatrix& w) {
  double s = 0.0;
  for (std::size_t p = 0; p + 1 < w.rows(); ++p)
    for (std::size_t q = p + 1; q < w.rows(); ++q) s += std::norm(w(p, q));
  return std::sqrt(2.0 * s);
}

}  // namespace

std::vector<double> hermitian_eigenvalues(const ComplexMatrix& a) {
  if (!a.is_hermitian())
    throw NotHermitian("hermitian_eigenvalues: input fails Hermitian check");
  const std::size_t n = a.rows();

  // Exact symmetrization removes the tolerated 1e-12 asymmetry up front.
  ComplexMatrix w(n, n);
  for (std::size_t i = 0; i < n; ++i) {
    w(i, i) = a(i, i).real();
    for (std::size_t j = i + 1; j < n; ++j) {
      const std::complex<double> v = 0.5 * (a(i, j) + std::conj(a(j, i)));
      w(i, j) = v;
      w(j, i) = std::conj(v);
    }
  }

  const double scale = std::sqrt(w.frobenius_norm_sq());
  if (scale > 0.0) {
    const double tol = 1e-13 * scale;
    constexpr int kMaxSweeps = 100;
    int sweep = 0;
    while (offdiag_norm(w) > tol) {
      if (++sweep > kMaxSweeps)
        throw NoConvergence("hermitian_eigenvalues: Jacobi sweep limit");
      for (std::size_t p = 0; p + 1 < n; ++p)
        for (std::size_t q = p + 1; q < n; ++q) jacobi_rotate(w, p, q);
    }
  }

  std::vector<double> eigs(n);
  for (std::size_t i = 0; i < n; ++i) eigs[i] = w(i, i).real();
  std::sort(eigs.begin(), eigs.end(), std::greater<>());
  return eigs;
}

ComplexMatrix build_sigma_h1(
    std::size_t K, std::span<const double> snrs,
    const std::vector<std::vector<std::complex<double>>>& channels,
    double noise_power) {
  if (!(noise_power > 0.0))
    throw DomainError("build_sigma_h1: noise power must be > 0");
  if (snrs.size() != channels.size())
    throw InvalidDims("build_sigma_h1: one SNR per channel vector required");
  ComplexMatrix sigma = ComplexMatrix::identity(K);
  for (std::size_t u = 0; u < channels.size(); ++u) {
    const auto& h = channels[u];
    if (h.size() != K)
      throw InvalidDims("build_sigma_h1: channel vector has wrong length");
    if (!(snrs[u] >= 0.0)) throw DomainError("build_sigma_h1: SNR must be >= 0");
    double norm_sq = 0.0;
    for (const auto& z : h) norm_sq += std::norm(z);
    if (norm_sq == 0.0)
      throw ZeroChannel("build_sigma_h1: zero channel vector for user " +
                        std::to_string(u));
    const double w = snrs[u] / norm_sq;
    for (std::size_t i = 0; i < K; ++i) {
      sigma(i, i) += w * std::norm(h[i]);
      for (std::size_t j = i + 1; j < K; ++j) {
        const std::complex<double> v = w * h[i] * std::conj(h[j]);
        sigma(i, j) += v;
        sigma(j, i) += std::conj(v);
      }
    }
  }
  return scaled(sigma, noise_power);
}

ComplexMatrix random_unitary(std::size_t n, RngStream rng) {
  ComplexMatrix u = sample_standard_complex_gaussian(n, n, rng);
  // Modified Gram-Schmidt on columns, with one re-orthogonalization pass.
  for (std::size_t j = 0; j < n; ++j) {
    for (int pass = 0; pass < 2; ++pass) {
      for (std::size_t k = 0; k < j; ++k) {
        std::complex<double> proj = 0.0;
        for (std::size_t i = 0; i < n; ++i) proj += std::conj(u(i, k)) * u(i, j);
        for (std::size_t i = 0; i < n; ++i) u(i, j) -= proj * u(i, k);
      }
    }
    double norm_sq = 0.0;
    for (std::size_t i = 0; i < n; ++i) norm_sq += std::norm(u(i, j));
    if (norm_sq < 1e-24)
      throw DegenerateInput("random_unitary: numerically dependent columns");
    const double inv = 1.0 / std::sqrt(norm_sq);
    for (std::size_t i = 0; i < n; ++i) u(i, j) *= inv;
  }
  return u;
}

ComplexMatrix sigma_from_spectrum(std::span<const double> spectrum,
                                  RngStream rng) {
  const std::size_t k = spectrum.size();
  if (k == 0) throw InvalidDims("sigma_from_spectrum: empty spectrum");
  for (const double v : spectrum)
    if (!(v > 0.0)) throw DomainError("sigma_from_spectrum: entries must be > 0");
  const ComplexMatrix u = random_unitary(k, rng);
  ComplexMatrix sigma(k, k);
  for (std::size_t i = 0; i < k; ++i) {
    for (std::size_t j = i; j < k; ++j) {
      std::complex<double> s = 0.0;
      for (std::size_t t = 0; t < k; ++t)
        s += spectrum[t] * u(i, t) * std::conj(u(j, t));
      if (i == j) s = {s.real(), 0.0};
      sigma(i, j) = s;
      sigma(j, i) = std::conj(s);
    }
  }
  return sigma;
}

}  // namespace specsense
