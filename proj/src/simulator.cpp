#include "specsense/simulator.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <thread>

#include "specsense/errors.hpp"
#include "specsense/moments.hpp"
#include "specsense/wishart.hpp"

namespace specsense {

namespace {

// Substream labels hung off a caller's stream; trial substreams hang off
// these in turn, keyed by trial index.
constexpr std::uint64_t kSigmaLabel = 1;
constexpr std::uint64_t kCalibrateLabel = 2;
constexpr std::uint64_t kPfaLabel = 3;
constexpr std::uint64_t kPdLabel = 4;
constexpr std::uint64_t kChannelLabel = 5;

unsigned resolve_threads(unsigned threads, std::uint64_t trials) {
  unsigned n = threads != 0 ? threads : std::thread::hardware_concurrency();
  n = std::max(1u, n);
  if (trials < n) n = static_cast<unsigned>(std::max<std::uint64_t>(1, trials));
  return n;
}

// Runs per_trial(i) for i in [0, trials) over a work-stealing block queue.
// Results must depend only on the trial index for thread-count invariance.
template <typename Fn>
void run_trials(std::uint64_t trials, unsigned threads, Fn&& per_trial) {
  const unsigned n_threads = resolve_threads(threads, trials);
  if (n_threads == 1) {
    for (std::uint64_t i = 0; i < trials; ++i) per_trial(i);
    return;
  }
  constexpr std::uint64_t kBlock = 512;
  std::atomic<std::uint64_t> next{0};
  auto worker = [&] {
    while (true) {
      const std::uint64_t begin = next.fetch_add(kBlock);
      if (begin >= trials) return;
      const std::uint64_t end = std::min(begin + kBlock, trials);
      for (std::uint64_t i = begin; i < end; ++i) per_trial(i);
    }
  };
  std::vector<std::thread> pool;
  pool.reserve(n_threads);
  for (unsigned t = 0; t < n_threads; ++t) pool.emplace_back(worker);
  for (auto& th : pool) th.join();
}

double statistic_from_data(DetectorKind kind, const ComplexMatrix& x,
                           double noise_power) {
  const ComplexMatrix r = sample_covariance(x);
  if (kind == DetectorKind::John) return t_john(r).value;
  const std::vector<double> eigs = hermitian_eigenvalues(r);
  switch (kind) {
    case DetectorKind::SphericalTest: return t_st(eigs).value;
    case DetectorKind::ScaledLargestEigenvalue: return t_sle(eigs).value;
    case DetectorKind::EigenvalueRatio: return t_er(eigs).value;
    case DetectorKind::LargestEigenvalue: return t_le(eigs, noise_power).value;
    case DetectorKind::John: break;
  }
  throw DomainError("statistic_from_data: unknown detector");
}

void check_mc_preconditions(DetectorKind kind, unsigned K, unsigned N,
                            std::uint64_t trials) {
  if (trials < 1) throw InvalidDims("monte carlo: trials must be >= 1");
  if (K < 1 || N < 1) throw InvalidDims("monte carlo: need K, N >= 1");
  if (kind == DetectorKind::EigenvalueRatio && N < K)
    throw InvalidDims("monte carlo: ER detector requires N >= K");
}

EstimateWithCI proportion_estimate(std::uint64_t hits, std::uint64_t trials) {
  const double p =
      static_cast<double>(hits) / static_cast<double>(trials);
  return {p, std::sqrt(p * (1.0 - p) / static_cast<double>(trials)), trials};
}

std::vector<double> h0_statistic_pool(DetectorKind kind, unsigned K,
                                      unsigned N, std::uint64_t trials,
                                      const RngStream& rng, unsigned threads) {
  std::vector<double> pool(trials);
  run_trials(trials, threads, [&](std::uint64_t i) {
    pool[i] = h0_statistic(kind, K, N, rng.substream(i));
  });
  return pool;
}

// Empirical quantile matched to decide()'s strict comparisons: pick the
// order statistic so the fraction strictly beyond it is floor(target * n)/n.
double quantile_threshold(std::vector<double>& pool, Orientation orient,
                          double target) {
  const std::uint64_t n = pool.size();
  auto tail = static_cast<std::uint64_t>(target * static_cast<double>(n));
  tail = std::min(tail, n - 1);
  const std::uint64_t index =
      orient == Orientation::H1Above ? n - 1 - tail : tail;
  std::nth_element(pool.begin(), pool.begin() + static_cast<std::ptrdiff_t>(index),
                   pool.end());
  return pool[static_cast<std::ptrdiff_t>(index)];
}

}  // namespace

std::vector<double> snrs_linear(const Scenario& scenario) {
  std::vector<double> linear(scenario.snrs_db.size());
  for (std::size_t i = 0; i < linear.size(); ++i)
    linear[i] = std::pow(10.0, scenario.snrs_db[i] / 10.0);
  return linear;
}

ComplexMatrix scenario_sigma(const Scenario& scenario, RngStream rng) {
  if (scenario.K < 1) throw InvalidDims("scenario: K must be >= 1");
  if (!(scenario.noise_power > 0.0))
    throw DomainError("scenario: noise power must be > 0");
  if (scenario.sigma_spectrum) {
    const auto& spectrum = *scenario.sigma_spectrum;
    if (spectrum.size() != scenario.K)
      throw InvalidDims("scenario: sigma_spectrum length must equal K");
    double min_entry = spectrum[0];
    for (const double v : spectrum) min_entry = std::min(min_entry, v);
    if (!(min_entry > 0.0) ||
        std::abs(min_entry - scenario.noise_power) >
            1e-9 * scenario.noise_power)
      throw DomainError(
          "scenario: smallest sigma_spectrum entry must equal noise_power");
    return sigma_from_spectrum(spectrum, rng.substream(kSigmaLabel));
  }
  if (scenario.P != scenario.snrs_db.size())
    throw InvalidDims("scenario: P must equal the number of SNR entries");
  if (scenario.P == 0)
    return scaled(ComplexMatrix::identity(scenario.K), scenario.noise_power);

  // One channel realization per scenario, drawn from a named substream.
  RngStream channel_rng = rng.substream(kChannelLabel);
  std::vector<std::vector<std::complex<double>>> channels(scenario.P);
  for (auto& h : channels) {
    h.resize(scenario.K);
    for (auto& z : h) z = channel_rng.next_complex_gaussian();
  }
  return build_sigma_h1(scenario.K, snrs_linear(scenario), channels,
                        scenario.noise_power);
}

double h0_statistic(DetectorKind kind, unsigned K, unsigned N, RngStream rng) {
  return statistic_from_data(
      kind, sample_standard_complex_gaussian(K, N, rng), 1.0);
}

EstimateWithCI estimate_pfa_mc(DetectorKind kind, double threshold, unsigned K,
                               unsigned N, std::uint64_t trials, RngStream rng,
                               unsigned threads) {
  check_mc_preconditions(kind, K, N, trials);
  std::atomic<std::uint64_t> hits{0};
  run_trials(trials, threads, [&](std::uint64_t i) {
    const Statistic stat{h0_statistic(kind, K, N, rng.substream(i)), kind};
    if (decide(stat, threshold) == Hypothesis::H1)
      hits.fetch_add(1, std::memory_order_relaxed);
  });
  return proportion_estimate(hits.load(), trials);
}

EstimateWithCI estimate_pd_mc(DetectorKind kind, double threshold,
                              const ComplexMatrix& sigma, unsigned N,
                              std::uint64_t trials, RngStream rng,
                              unsigned threads, double noise_power) {
  check_mc_preconditions(kind, static_cast<unsigned>(sigma.rows()), N, trials);
  const ComplexMatrix chol = cholesky_lower(sigma);
  std::atomic<std::uint64_t> hits{0};
  run_trials(trials, threads, [&](std::uint64_t i) {
    const ComplexMatrix g = sample_standard_complex_gaussian(
        sigma.rows(), N, rng.substream(i));
    const Statistic stat{
        statistic_from_data(kind, matmul(chol, g), noise_power), kind};
    if (decide(stat, threshold) == Hypothesis::H1)
      hits.fetch_add(1, std::memory_order_relaxed);
  });
  return proportion_estimate(hits.load(), trials);
}

double empirical_threshold(DetectorKind kind, unsigned K, unsigned N,
                           double target_pfa, std::uint64_t trials,
                           RngStream rng, unsigned threads) {
  if (!(target_pfa > 0.0) || !(target_pfa < 1.0))
    throw DomainError("empirical_threshold: target outside (0, 1)");
  check_mc_preconditions(kind, K, N, trials);
  if (static_cast<double>(trials) < 100.0 / target_pfa)
    throw InsufficientTrials(
        "empirical_threshold: need at least 100/target_pfa trials");
  std::vector<double> pool = h0_statistic_pool(kind, K, N, trials, rng, threads);
  return quantile_threshold(pool, orientation(kind), target_pfa);
}

RocCurve roc(DetectorKind kind, const Scenario& scenario,
             std::span<const double> pfa_grid, RngStream rng,
             unsigned threads) {
  if (pfa_grid.empty()) throw DomainError("roc: empty P_fa grid");
  for (std::size_t i = 0; i < pfa_grid.size(); ++i) {
    if (!(pfa_grid[i] > 0.0) || !(pfa_grid[i] < 1.0))
      throw DomainError("roc: P_fa grid values must lie in (0, 1)");
    if (i > 0 && !(pfa_grid[i] > pfa_grid[i - 1]))
      throw DomainError("roc: P_fa grid must be strictly increasing");
  }
  const ComplexMatrix sigma = scenario_sigma(scenario, rng);

  std::vector<double> thresholds(pfa_grid.size());
  if (kind == DetectorKind::John) {
    const BetaFit fit = fit_tj_h0(scenario.K, scenario.N);
    for (std::size_t i = 0; i < pfa_grid.size(); ++i)
      thresholds[i] = threshold_for_pfa(pfa_grid[i], fit);
  } else {
    // One calibration pool per detector; every grid threshold is a quantile
    // of the same pool.
    const auto calib_trials = std::max<std::uint64_t>(
        scenario.trials,
        static_cast<std::uint64_t>(std::ceil(100.0 / pfa_grid.front())));
    std::vector<double> pool =
        h0_statistic_pool(kind, scenario.K, scenario.N, calib_trials,
                          rng.substream(kCalibrateLabel), threads);
    for (std::size_t i = 0; i < pfa_grid.size(); ++i)
      thresholds[i] = quantile_threshold(pool, orientation(kind), pfa_grid[i]);
  }

  RocCurve curve{kind, {}};
  curve.points.reserve(pfa_grid.size());
  for (std::size_t i = 0; i < pfa_grid.size(); ++i) {
    RocPoint point;
    point.target_pfa = pfa_grid[i];
    point.threshold = thresholds[i];
    point.pfa = estimate_pfa_mc(kind, thresholds[i], scenario.K, scenario.N,
                                scenario.trials,
                                rng.substream(kPfaLabel).substream(i), threads);
    point.pd = estimate_pd_mc(kind, thresholds[i], sigma, scenario.N,
                              scenario.trials,
                              rng.substream(kPdLabel).substream(i), threads,
                              scenario.noise_power);
    curve.points.push_back(point);
  }
  return curve;
}

PfaCurve pfa_curve_study(unsigned K, unsigned N, double zeta_lo, double zeta_hi,
                         unsigned grid_points, std::uint64_t trials,
                         RngStream rng, unsigned threads) {
  if (grid_points < 2) throw DomainError("pfa curve: need at least 2 grid points");
  if (!(zeta_lo >= 1.0 / static_cast<double>(K)) || !(zeta_lo < zeta_hi) ||
      !(zeta_hi <= 1.0))
    throw DomainError("pfa curve: need 1/K <= zeta_lo < zeta_hi <= 1");
  const BetaFit fit = fit_tj_h0(K, N);

  // One shared sample of T_J draws serves the whole zeta grid.
  std::vector<double> pool =
      h0_statistic_pool(DetectorKind::John, K, N, trials, rng, threads);
  std::sort(pool.begin(), pool.end());

  PfaCurve curve;
  curve.rows.reserve(grid_points);
  double total_error = 0.0;
  for (unsigned g = 0; g < grid_points; ++g) {
    PfaCurveRow row;
    row.zeta = zeta_lo + (zeta_hi - zeta_lo) * static_cast<double>(g) /
                             static_cast<double>(grid_points - 1);
    row.pfa_analytic = pfa(row.zeta, fit);
    const auto above = static_cast<std::uint64_t>(
        pool.end() - std::upper_bound(pool.begin(), pool.end(), row.zeta));
    row.pfa_empirical =
        static_cast<double>(above) / static_cast<double>(trials);
    row.std_error = std::sqrt(row.pfa_empirical * (1.0 - row.pfa_empirical) /
                              static_cast<double>(trials));
    total_error += std::abs(row.pfa_analytic - row.pfa_empirical);
    curve.rows.push_back(row);
  }
  curve.average_abs_error = total_error / static_cast<double>(grid_points);
  return curve;
}

double approximation_error_study(unsigned K, unsigned N, double zeta_lo,
                                 double zeta_hi, unsigned grid_points,
                                 std::uint64_t trials, RngStream rng,
                                 unsigned threads) {
  return pfa_curve_study(K, N, zeta_lo, zeta_hi, grid_points, trials, rng,
                         threads)
      .average_abs_error;
}

}  // namespace specsense
