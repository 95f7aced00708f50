#include <doctest.h>

#include <cmath>
#include <cstdint>
#include <vector>

#include "specsense/beta_approx.hpp"
#include "specsense/errors.hpp"
#include "specsense/simulator.hpp"
#include "specsense/wishart.hpp"
#include "test_support.hpp"

using namespace specsense;

namespace {

Scenario identity_scenario(unsigned K, unsigned N, std::uint64_t trials,
                           std::uint64_t seed) {
  Scenario s;
  s.K = K;
  s.N = N;
  s.P = 0;
  s.noise_power = 1.0;
  s.seed = seed;
  s.trials = trials;
  return s;
}

Scenario spectrum_scenario(const std::vector<double>& spectrum, unsigned N,
                           std::uint64_t trials, std::uint64_t seed,
                           double noise_power = 1.0) {
  Scenario s;
  s.K = static_cast<unsigned>(spectrum.size());
  s.N = N;
  s.noise_power = noise_power;
  s.sigma_spectrum = spectrum;
  s.seed = seed;
  s.trials = trials;
  return s;
}

bool identical_curves(const RocCurve& a, const RocCurve& b) {
  if (a.points.size() != b.points.size()) return false;
  for (std::size_t i = 0; i < a.points.size(); ++i) {
    if (a.points[i].threshold != b.points[i].threshold) return false;
    if (a.points[i].pfa.value != b.points[i].pfa.value) return false;
    if (a.points[i].pd.value != b.points[i].pd.value) return false;
  }
  return true;
}

}  // namespace

TEST_SUITE("simulator") {

TEST_CASE("pfa estimates at the support endpoints") {
  const EstimateWithCI at_max =
      estimate_pfa_mc(DetectorKind::John, 1.0, 4, 20, 2000, RngStream(3, 0));
  CHECK(at_max.value == 0.0);
  const EstimateWithCI at_min =
      estimate_pfa_mc(DetectorKind::John, 0.25, 4, 20, 2000, RngStream(3, 1));
  CHECK(at_min.value == 1.0);
  CHECK(at_min.std_error == 0.0);
  CHECK(at_min.trials == 2000);
}

TEST_CASE("analytic threshold achieves its target rate (K=8, N=100)") {
  const double zeta = threshold_for_pfa(0.05, fit_tj_h0(8, 100));
  const EstimateWithCI est = estimate_pfa_mc(DetectorKind::John, zeta, 8, 100,
                                             100000, RngStream(271828, 0));
  CHECK(std::abs(est.value - 0.05) <= 4.0 * est.std_error);
}

TEST_CASE("estimate results do not depend on the thread count") {
  const double zeta = threshold_for_pfa(0.2, fit_tj_h0(4, 20));
  const EstimateWithCI one =
      estimate_pfa_mc(DetectorKind::John, zeta, 4, 20, 20000, RngStream(5, 5), 1);
  const EstimateWithCI two =
      estimate_pfa_mc(DetectorKind::John, zeta, 4, 20, 20000, RngStream(5, 5), 2);
  const EstimateWithCI four =
      estimate_pfa_mc(DetectorKind::John, zeta, 4, 20, 20000, RngStream(5, 5), 4);
  CHECK(one.value == two.value);
  CHECK(one.value == four.value);
}

TEST_CASE("under sigma = I the detection probability equals the false alarm rate") {
  const unsigned K = 4;
  const unsigned N = 50;
  const double target = 0.1;
  const double zeta = threshold_for_pfa(target, fit_tj_h0(K, N));
  const EstimateWithCI pd =
      estimate_pd_mc(DetectorKind::John, zeta, ComplexMatrix::identity(K), N,
                     50000, RngStream(13, 13));
  CHECK(std::abs(pd.value - target) <= 4.0 * pd.std_error);
}

TEST_CASE("low-SNR scenario beats chance at the P_fa = 0.5 point") {
  const ComplexMatrix sigma =
      sigma_from_spectrum(test_support::kSpectrumLowSnr, RngStream(1, 1));
  const double zeta = threshold_for_pfa(0.5, fit_tj_h0(4, 400));
  const EstimateWithCI pd = estimate_pd_mc(DetectorKind::John, zeta, sigma, 400,
                                           10000, RngStream(17, 0));
  CHECK(pd.value > 0.5 + 3.0 * pd.std_error);
}

TEST_CASE("empirical threshold matches the analytic inversion for John") {
  const unsigned K = 8;
  const unsigned N = 100;
  const double target = 0.1;
  const double analytic = threshold_for_pfa(target, fit_tj_h0(K, N));
  const double empirical = empirical_threshold(DetectorKind::John, K, N, target,
                                               200000, RngStream(42, 42));
  CHECK(std::abs(empirical - analytic) <= 2e-3);
}

TEST_CASE("target 0.5 returns the empirical median") {
  const unsigned K = 2;
  const unsigned N = 8;
  const std::uint64_t trials = 4001;
  const RngStream rng(77, 1);
  const double thr = empirical_threshold(DetectorKind::ScaledLargestEigenvalue,
                                         K, N, 0.5, trials, rng);
  std::vector<double> pool(trials);
  for (std::uint64_t i = 0; i < trials; ++i)
    pool[i] = h0_statistic(DetectorKind::ScaledLargestEigenvalue, K, N,
                           rng.substream(i));
  std::uint64_t below = 0;
  for (const double v : pool)
    if (v < thr) ++below;
  CHECK(std::abs(static_cast<double>(below) / trials - 0.5) <= 1e-3);
}

TEST_CASE("ST threshold self-consistency on a fresh stream") {
  const unsigned K = 4;
  const unsigned N = 50;
  const double target = 0.1;
  const double thr = empirical_threshold(DetectorKind::SphericalTest, K, N,
                                         target, 100000, RngStream(600, 1));
  const EstimateWithCI est = estimate_pfa_mc(DetectorKind::SphericalTest, thr,
                                             K, N, 100000, RngStream(600, 2));
  CHECK(std::abs(est.value - target) <= 4.0 * est.std_error);
}

TEST_CASE("empirical threshold demands enough tail resolution") {
  CHECK_THROWS_AS(empirical_threshold(DetectorKind::John, 4, 20, 0.01, 5000,
                                      RngStream(1, 0)),
                  InsufficientTrials);
  CHECK_THROWS_AS(empirical_threshold(DetectorKind::John, 4, 20, 0.0, 5000,
                                      RngStream(1, 0)),
                  DomainError);
}

TEST_CASE("ER estimation requires N >= K") {
  CHECK_THROWS_AS(estimate_pfa_mc(DetectorKind::EigenvalueRatio, 2.0, 8, 4, 100,
                                  RngStream(0, 0)),
                  InvalidDims);
}

TEST_CASE("identity-spectrum ROC lies on the diagonal") {
  const Scenario scenario = identity_scenario(4, 50, 20000, 2024);
  const std::vector<double> grid{0.1, 0.3, 0.5};
  for (const DetectorKind kind :
       {DetectorKind::John, DetectorKind::SphericalTest,
        DetectorKind::LargestEigenvalue}) {
    const RocCurve curve =
        roc(kind, scenario, grid, RngStream(scenario.seed));
    REQUIRE(curve.points.size() == grid.size());
    for (std::size_t i = 0; i < grid.size(); ++i) {
      const auto& pt = curve.points[i];
      const double band =
          4.0 * std::hypot(pt.pd.std_error, std::sqrt(grid[i] * (1 - grid[i]) /
                                                      scenario.trials));
      REQUIRE(std::abs(pt.pd.value - grid[i]) <= band);
      REQUIRE(std::abs(pt.pfa.value - grid[i]) <= band);
    }
  }
}

TEST_CASE("ROC is bit-reproducible and thread-count independent") {
  const Scenario scenario =
      spectrum_scenario(test_support::kSpectrumHighSnr, 50, 20000, 99);
  const std::vector<double> grid{0.1, 0.3};
  const RocCurve a =
      roc(DetectorKind::SphericalTest, scenario, grid, RngStream(scenario.seed), 1);
  const RocCurve b =
      roc(DetectorKind::SphericalTest, scenario, grid, RngStream(scenario.seed), 2);
  const RocCurve c =
      roc(DetectorKind::SphericalTest, scenario, grid, RngStream(scenario.seed), 4);
  CHECK(identical_curves(a, b));
  CHECK(identical_curves(a, c));
}

TEST_CASE("joint rescaling of sigma and noise power leaves scale-free ROCs unchanged") {
  const double c = 4.0;  // power of two: rescaling is exact in floating point
  std::vector<double> scaled_spec = test_support::kSpectrumHighSnr;
  for (double& v : scaled_spec) v *= c;
  const Scenario base =
      spectrum_scenario(test_support::kSpectrumHighSnr, 50, 10000, 31);
  const Scenario scaled_scenario = spectrum_scenario(scaled_spec, 50, 10000, 31, c);
  const std::vector<double> grid{0.1, 0.25};
  for (const DetectorKind kind :
       {DetectorKind::John, DetectorKind::SphericalTest,
        DetectorKind::ScaledLargestEigenvalue, DetectorKind::EigenvalueRatio}) {
    const RocCurve a = roc(kind, base, grid, RngStream(base.seed));
    const RocCurve b = roc(kind, scaled_scenario, grid, RngStream(base.seed));
    REQUIRE(a.points.size() == b.points.size());
    for (std::size_t i = 0; i < a.points.size(); ++i) {
      REQUIRE(a.points[i].pfa.value == b.points[i].pfa.value);
      REQUIRE(a.points[i].pd.value == b.points[i].pd.value);
    }
  }
}

TEST_CASE("ROC grid validation") {
  const Scenario scenario = identity_scenario(4, 50, 1000, 1);
  CHECK_THROWS_AS(roc(DetectorKind::John, scenario, std::vector<double>{},
                      RngStream(1)),
                  DomainError);
  CHECK_THROWS_AS(roc(DetectorKind::John, scenario,
                      std::vector<double>{0.2, 0.1}, RngStream(1)),
                  DomainError);
  CHECK_THROWS_AS(roc(DetectorKind::John, scenario,
                      std::vector<double>{0.0, 0.1}, RngStream(1)),
                  DomainError);
}

TEST_CASE("scenario_sigma validates the spectrum against the noise power") {
  Scenario s = spectrum_scenario({2.0, 1.5, 1.2, 1.0}, 50, 100, 1);
  CHECK_NOTHROW(scenario_sigma(s, RngStream(1)));
  s.noise_power = 2.0;
  CHECK_THROWS_AS(scenario_sigma(s, RngStream(1)), DomainError);
  Scenario wrong_len = spectrum_scenario({2.0, 1.0}, 50, 100, 1);
  wrong_len.K = 4;
  CHECK_THROWS_AS(scenario_sigma(wrong_len, RngStream(1)), InvalidDims);
}

TEST_CASE("channel-route scenario sigma is reproducible and PD") {
  Scenario s;
  s.K = 4;
  s.N = 50;
  s.P = 3;
  s.snrs_db = {-6.0, -5.0, -4.0};
  s.noise_power = 1.0;
  s.seed = 23;
  s.trials = 100;
  const ComplexMatrix sigma1 = scenario_sigma(s, RngStream(s.seed));
  const ComplexMatrix sigma2 = scenario_sigma(s, RngStream(s.seed));
  CHECK(sigma1 == sigma2);
  const auto eigs = hermitian_eigenvalues(sigma1);
  CHECK(eigs.back() >= 1.0 - 1e-9);  // >= noise floor
  double total = 0.0;
  for (const double snr : snrs_linear(s)) total += snr;
  CHECK(sigma1.trace_real() == doctest::Approx(4.0 + total).epsilon(1e-12));
}

TEST_CASE("pfa curve study: grid structure, determinism, error scale") {
  const PfaCurve curve =
      pfa_curve_study(8, 100, 0.125, 0.3, 40, 20000, RngStream(512), 2);
  REQUIRE(curve.rows.size() == 40);
  CHECK(curve.rows.front().zeta == 0.125);
  CHECK(curve.rows.front().pfa_analytic == 1.0);
  CHECK(curve.rows.back().zeta == doctest::Approx(0.3).epsilon(1e-15));
  // average error is bounded by binomial noise at this trial count
  CHECK(curve.average_abs_error < 0.01);
  CHECK(approximation_error_study(8, 100, 0.125, 0.3, 40, 20000,
                                  RngStream(512), 1) ==
        curve.average_abs_error);

  // adjacent grid points see near-identical errors (shared pool, continuity)
  const PfaCurve tight =
      pfa_curve_study(8, 100, 0.14, 0.1401, 2, 20000, RngStream(513), 2);
  CHECK(std::abs(std::abs(tight.rows[0].pfa_analytic -
                          tight.rows[0].pfa_empirical) -
                 std::abs(tight.rows[1].pfa_analytic -
                          tight.rows[1].pfa_empirical)) <= 2e-3);
}

TEST_CASE("pfa curve study rejects a bad grid") {
  CHECK_THROWS_AS(pfa_curve_study(8, 100, 0.1, 0.3, 10, 100, RngStream(1)),
                  DomainError);
  CHECK_THROWS_AS(pfa_curve_study(8, 100, 0.2, 0.2, 10, 100, RngStream(1)),
                  DomainError);
  CHECK_THROWS_AS(pfa_curve_study(8, 100, 0.125, 0.3, 1, 100, RngStream(1)),
                  DomainError);
}

}  // TEST_SUITE
