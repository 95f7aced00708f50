#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <random>
#include <vector>

#include "specsense/detectors.hpp"
#include "specsense/errors.hpp"
#include "specsense/rng.hpp"
#include "specsense/wishart.hpp"

using namespace specsense;

TEST_SUITE("detectors") {

TEST_CASE("t_john closed forms") {
  CHECK(t_john(ComplexMatrix::identity(4)).value ==
        doctest::Approx(0.25).epsilon(1e-14));

  // rank-1: single draw column
  const ComplexMatrix x =
      sample_standard_complex_gaussian(3, 1, RngStream(8, 1));
  CHECK(t_john(sample_covariance(x)).value ==
        doctest::Approx(1.0).epsilon(1e-12));

  CHECK(t_john(ComplexMatrix::diagonal(std::vector<double>{3.0, 1.0})).value ==
        doctest::Approx(0.625).epsilon(1e-14));
}

TEST_CASE("t_john rejects all-zero data") {
  CHECK_THROWS_AS(t_john(ComplexMatrix(2, 2)), DegenerateInput);
}

TEST_CASE("t_st closed forms") {
  CHECK(t_st(std::vector<double>{2.5, 2.5, 2.5}).value ==
        doctest::Approx(1.0).epsilon(1e-14));
  CHECK(t_st(std::vector<double>{2.0, 0.0}).value == 0.0);
  CHECK(t_st(std::vector<double>{3.0, 1.0}).value ==
        doctest::Approx(0.75).epsilon(1e-14));
  CHECK_THROWS_AS(t_st(std::vector<double>{0.0, 0.0}), DegenerateInput);
}

TEST_CASE("t_sle closed forms") {
  CHECK(t_sle(std::vector<double>{1.0, 1.0, 1.0, 1.0}).value ==
        doctest::Approx(0.25).epsilon(1e-14));
  CHECK(t_sle(std::vector<double>{5.0, 0.0, 0.0}).value == 1.0);
  CHECK(t_sle(std::vector<double>{3.0, 1.0}).value ==
        doctest::Approx(0.75).epsilon(1e-14));
}

TEST_CASE("t_er closed forms and rank guard") {
  CHECK(t_er(std::vector<double>{2.0, 2.0}).value == 1.0);
  CHECK(t_er(std::vector<double>{4.0, 2.0}).value == 2.0);
  CHECK(t_er(std::vector<double>{3.0, 2.0, 1.0}).value == 3.0);
  CHECK_THROWS_AS(t_er(std::vector<double>{2.0, 0.0}), DegenerateInput);
}

TEST_CASE("t_le normalizes by the noise power") {
  CHECK(t_le(std::vector<double>{3.0, 1.0}, 1.0).value == 3.0);
  CHECK(t_le(std::vector<double>{3.0, 1.0}, 2.0).value == 1.5);
  CHECK(t_le(std::vector<double>{0.0, 0.0}, 1.0).value == 0.0);
}

TEST_CASE("decision orientation and tie-break") {
  CHECK(decide({0.30, DetectorKind::John}, 0.25) == Hypothesis::H1);
  CHECK(decide({0.20, DetectorKind::John}, 0.25) == Hypothesis::H0);
  CHECK(decide({0.25, DetectorKind::John}, 0.25) == Hypothesis::H0);  // tie
  CHECK(decide({0.9, DetectorKind::SphericalTest}, 0.5) == Hypothesis::H0);
  CHECK(decide({0.4, DetectorKind::SphericalTest}, 0.5) == Hypothesis::H1);
  CHECK(decide({0.5, DetectorKind::SphericalTest}, 0.5) == Hypothesis::H0);
}

TEST_CASE("statistics are scale invariant and route-consistent on Wishart draws") {
  const double c = 3.0;  // deliberately not a power of two
  for (int rep = 0; rep < 400; ++rep) {
    RngStream rng(555, static_cast<std::uint64_t>(rep));
    const unsigned K = 2 + rep % 7;
    const unsigned N = K + 1 + rep % 16;
    const ComplexMatrix r =
        sample_covariance(sample_standard_complex_gaussian(K, N, rng));
    const ComplexMatrix rc = scaled(r, c);
    const auto eigs = hermitian_eigenvalues(r);
    const auto eigs_c = hermitian_eigenvalues(rc);

    const double tj = t_john(r).value;
    REQUIRE(std::abs(t_john(rc).value - tj) <= 1e-12 * tj);

    const double st = t_st(eigs).value;
    REQUIRE(std::abs(t_st(eigs_c).value - st) <= 1e-12 * std::max(st, 1e-300));

    const double sle = t_sle(eigs).value;
    REQUIRE(std::abs(t_sle(eigs_c).value - sle) <= 1e-12 * sle);

    const double er = t_er(eigs).value;
    REQUIRE(std::abs(t_er(eigs_c).value - er) <= 1e-12 * er);

    // trace route vs eigenvalue route for John's statistic
    double sum = 0.0;
    double sum_sq = 0.0;
    for (const double e : eigs) {
      sum += e;
      sum_sq += e * e;
    }
    REQUIRE(std::abs(tj - sum_sq / (sum * sum)) <= 1e-10 * tj);
  }
}

TEST_CASE("support bounds hold over random draws") {
  for (int rep = 0; rep < 2000; ++rep) {
    RngStream rng(808, static_cast<std::uint64_t>(rep));
    const unsigned K = 2 + rep % 7;
    const unsigned N = K + rep % 24;
    const ComplexMatrix r =
        sample_covariance(sample_standard_complex_gaussian(K, N, rng));
    const double tj = t_john(r).value;
    REQUIRE(tj >= 1.0 / static_cast<double>(K));
    REQUIRE(tj <= 1.0);
    const auto eigs = hermitian_eigenvalues(r);
    const double st = t_st(eigs).value;
    REQUIRE(st >= 0.0);
    REQUIRE(st <= 1.0 + 1e-12);
    REQUIRE(t_er(eigs).value >= 1.0);
    const double sle = t_sle(eigs).value;
    REQUIRE(sle >= 1.0 / static_cast<double>(K));
    REQUIRE(sle <= 1.0);
  }
}

TEST_CASE("statistics ignore eigenvalue ordering") {
  std::vector<double> eigs{5.5, 3.25, 1.125, 0.875};
  std::vector<double> shuffled = eigs;
  std::mt19937 gen(99);
  for (int rep = 0; rep < 20; ++rep) {
    std::shuffle(shuffled.begin(), shuffled.end(), gen);
    CHECK(t_st(shuffled).value ==
          doctest::Approx(t_st(eigs).value).epsilon(1e-12));
    CHECK(t_sle(shuffled).value == t_sle(eigs).value);
    CHECK(t_er(shuffled).value == t_er(eigs).value);
    CHECK(t_le(shuffled, 2.0).value == t_le(eigs, 2.0).value);
  }
}

}  // TEST_SUITE
