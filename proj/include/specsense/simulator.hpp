#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <vector>

#include "specsense/beta_approx.hpp"
#include "specsense/complex_matrix.hpp"
#include "specsense/detectors.hpp"
#include "specsense/rng.hpp"

namespace specsense {

// One sensing experiment. SNRs are stored in dB (as presented) and converted
// to linear once, when the population covariance is built. If sigma_spectrum
// is present it pins sigma directly (entries >= noise_power, length K) and
// the SNR list is informational; otherwise channels are drawn from the
// scenario's stream.
struct Scenario {
  unsigned K = 0;
  unsigned N = 0;
  unsigned P = 0;
  std::vector<double> snrs_db;
  double noise_power = 1.0;
  std::optional<std::vector<double>> sigma_spectrum;
  std::uint64_t seed = 0;
  std::uint64_t trials = 0;
};

struct EstimateWithCI {
  double value = 0.0;
  double std_error = 0.0;  // sqrt(value * (1 - value) / trials)
  std::uint64_t trials = 0;
};

struct RocPoint {
  double target_pfa = 0.0;
  double threshold = 0.0;
  EstimateWithCI pfa;
  EstimateWithCI pd;
};

struct RocCurve {
  DetectorKind detector = DetectorKind::John;
  std::vector<RocPoint> points;
};

struct PfaCurveRow {
  double zeta = 0.0;
  double pfa_analytic = 0.0;
  double pfa_empirical = 0.0;
  double std_error = 0.0;
};

struct PfaCurve {
  std::vector<PfaCurveRow> rows;
  double average_abs_error = 0.0;
};

std::vector<double> snrs_linear(const Scenario& scenario);

// Population covariance for the scenario: pinned spectrum (unitary
// conjugation), noise-only identity, or channel realizations drawn from rng.
ComplexMatrix scenario_sigma(const Scenario& scenario, RngStream rng);

// H0 statistic of one detector for a fresh K x N draw with sigma = I.
double h0_statistic(DetectorKind kind, unsigned K, unsigned N, RngStream rng);

// Fraction of H0 draws (sigma = I, unit noise) decided H1 at the given
// threshold. Deterministic in (rng, trials) regardless of threads.
EstimateWithCI estimate_pfa_mc(DetectorKind kind, double threshold, unsigned K,
                               unsigned N, std::uint64_t trials, RngStream rng,
                               unsigned threads = 0);

// Detection probability under H1 with X = L G, L L^H = sigma.
EstimateWithCI estimate_pd_mc(DetectorKind kind, double threshold,
                              const ComplexMatrix& sigma, unsigned N,
                              std::uint64_t trials, RngStream rng,
                              unsigned threads = 0, double noise_power = 1.0);

// Orientation-aware empirical (1 - target) (or target) quantile of the H0
// statistic distribution. Throws InsufficientTrials when
// trials < 100 / target_pfa.
double empirical_threshold(DetectorKind kind, unsigned K, unsigned N,
                           double target_pfa, std::uint64_t trials,
                           RngStream rng, unsigned threads = 0);

// Full ROC: analytic thresholds for John's detector, a dedicated empirical
// calibration pool for the others, then P_fa / P_d estimation per grid
// point on fresh substreams.
RocCurve roc(DetectorKind kind, const Scenario& scenario,
             std::span<const double> pfa_grid, RngStream rng,
             unsigned threads = 0);

// Analytic-vs-simulated false alarm curve over a uniform zeta grid. One
// shared pool of H0 statistics serves every grid point.
PfaCurve pfa_curve_study(unsigned K, unsigned N, double zeta_lo, double zeta_hi,
                         unsigned grid_points, std::uint64_t trials,
                         RngStream rng, unsigned threads = 0);

// Average |analytic - empirical| false alarm probability over the grid.
double approximation_error_study(unsigned K, unsigned N, double zeta_lo,
                                 double zeta_hi, unsigned grid_points,
                                 std::uint64_t trials, RngStream rng,
                                 unsigned threads = 0);

}  // namespace specsense
