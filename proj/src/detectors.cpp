#include "specsense/detectors.hpp"

#include <algorithm>
#include <cmath>

#include "specsense/errors.hpp"

namespace specsense {

std::string detector_name(DetectorKind kind) {
  switch (kind) {
    case DetectorKind::John: return "john";
    case DetectorKind::SphericalTest: return "st";
    case DetectorKind::ScaledLargestEigenvalue: return "sle";
    case DetectorKind::EigenvalueRatio: return "er";
    case DetectorKind::LargestEigenvalue: return "le";
  }
  return "unknown";
}

Statistic t_john(const ComplexMatrix& r) {
  const double trace = r.trace_real();
  if (trace <= 0.0) throw DegenerateInput("t_john: tr(R) = 0, all-zero data");
  // tr(R^2) = ||R||_F^2 for Hermitian R; no eigendecomposition involved.
  return {r.frobenius_norm_sq() / (trace * trace), DetectorKind::John};
}

namespace {

struct EigSummary {
  double sum = 0.0;
  double max = 0.0;
  double min = 0.0;
};

EigSummary summarize(std::span<const double> eigs) {
  if (eigs.empty()) throw DegenerateInput("detector: empty eigenvalue list");
  EigSummary s;
  s.max = eigs[0];
  s.min = eigs[0];
  for (const double e : eigs) {
    s.sum += e;
    s.max = std::max(s.max, e);
    s.min = std::min(s.min, e);
  }
  return s;
}

}  // namespace

Statistic t_st(std::span<const double> eigs) {
  const EigSummary s = summarize(eigs);
  if (s.sum <= 0.0) throw DegenerateInput("t_st: eigenvalue sum is zero");
  const double mean = s.sum / static_cast<double>(eigs.size());
  double ratio_product = 1.0;
  for (const double e : eigs) ratio_product *= std::max(e, 0.0) / mean;
  return {ratio_product, DetectorKind::SphericalTest};
}

Statistic t_sle(std::span<const double> eigs) {
  const EigSummary s = summarize(eigs);
  if (s.sum <= 0.0) throw DegenerateInput("t_sle: eigenvalue sum is zero");
  return {s.max / s.sum, DetectorKind::ScaledLargestEigenvalue};
}

Statistic t_er(std::span<const double> eigs) {
  const EigSummary s = summarize(eigs);
  if (s.min <= 0.0)
    throw DegenerateInput("t_er: smallest eigenvalue is zero (rank-deficient R, N < K?)");
  return {s.max / s.min, DetectorKind::EigenvalueRatio};
}

Statistic t_le(std::span<const double> eigs, double noise_power) {
  const EigSummary s = summarize(eigs);
  return {s.max / noise_power, DetectorKind::LargestEigenvalue};
}

Hypothesis decide(const Statistic& stat, double threshold) {
  const bool h1 = orientation(stat.kind) == Orientation::H1Above
                      ? stat.value > threshold
                      : stat.value < threshold;
  return h1 ? Hypothesis::H1 : Hypothesis::H0;
}

}  // namespace specsense
