#pragma once

#include <span>
#include <string>

#include "specsense/complex_matrix.hpp"
#include "specsense/wishart.hpp"

namespace specsense {

enum class DetectorKind {
  John,                    // T_J = tr(R^2) / tr(R)^2
  SphericalTest,           // T_ST = prod(eig) / (mean(eig))^K
  ScaledLargestEigenvalue, // T_SLE = max(eig) / sum(eig)
  EigenvalueRatio,         // T_ER = max(eig) / min(eig)
  LargestEigenvalue        // T_LE = max(eig) / noise_power
};

enum class Orientation { H1Above, H1Below };

// ST is the one statistic that shrinks under the alternative (it equals 1
// iff the spectrum is flat); everything else grows.
constexpr Orientation orientation(DetectorKind kind) noexcept {
  return kind == DetectorKind::SphericalTest ? Orientation::H1Below
                                             : Orientation::H1Above;
}

std::string detector_name(DetectorKind kind);

struct Statistic {
  double value = 0.0;
  DetectorKind kind = DetectorKind::John;
};

// John's statistic from matrix traces only — no eigendecomposition.
// Throws DegenerateInput when tr(R) = 0 (all-zero data).
Statistic t_john(const ComplexMatrix& r);

Statistic t_st(std::span<const double> eigs);
Statistic t_sle(std::span<const double> eigs);
Statistic t_er(std::span<const double> eigs);
Statistic t_le(std::span<const double> eigs, double noise_power);

// Thresholded decision with per-detector orientation; exact threshold
// equality goes to H0.
Hypothesis decide(const Statistic& stat, double threshold);

}  // namespace specsense
