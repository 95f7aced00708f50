#pragma once

#include <complex>
#include <cstdint>
#include <span>
#include <vector>

#include "specsense/complex_matrix.hpp"
#include "specsense/rng.hpp"

namespace specsense {

enum class Hypothesis { H0, H1 };

// K x N matrix of i.i.d. circularly-symmetric unit-variance complex
// Gaussians, drawn in row-major entry order from rng.
ComplexMatrix sample_standard_complex_gaussian(std::size_t rows,
                                               std::size_t cols,
                                               RngStream rng);

// Lower-triangular L with L L^H = sigma. Throws NotPositiveDefinite on any
// non-positive pivot.
ComplexMatrix cholesky_lower(const ComplexMatrix& sigma);

// X = L G with G standard complex Gaussian K x N, so E[X X^H] = N * sigma.
ComplexMatrix sample_data_matrix(const ComplexMatrix& sigma, std::size_t n_samples,
                                 RngStream rng);

// Sample covariance R = X X^H (Hermitian PSD by construction).
ComplexMatrix sample_covariance(const ComplexMatrix& x);

// Eigenvalues of a Hermitian matrix in descending order, by cyclic Jacobi
// rotations (converged when the off-diagonal Frobenius norm falls below
// 1e-13 * ||A||_F). Throws NotHermitian if the Hermitian check fails.
std::vector<double> hermitian_eigenvalues(const ComplexMatrix& a);

// Population covariance under H1:
//   sigma = noise_power * (I_K + sum_i snr_i * u_i u_i^H),  u_i = h_i / ||h_i||.
// SNRs are linear (not dB). K is explicit so the no-primary-user case still
// has a dimension. Throws ZeroChannel on a zero channel vector.
ComplexMatrix build_sigma_h1(
    std::size_t K, std::span<const double> snrs,
    const std::vector<std::vector<std::complex<double>>>& channels,
    double noise_power);

// Haar-ish unitary from Gram-Schmidt on a seeded Gaussian matrix. Used to
// realize a population covariance with a prescribed spectrum.
ComplexMatrix random_unitary(std::size_t n, RngStream rng);

// U diag(spectrum) U^H with U = random_unitary(K, rng); the detectors under
// study depend on sigma only through its eigenvalues.
ComplexMatrix sigma_from_spectrum(std::span<const double> spectrum, RngStream rng);

}  // namespace specsense
