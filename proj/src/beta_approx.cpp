#include "specsense/beta_approx.hpp"

#include <cmath>
#include <string>

#include "specsense/errors.hpp"
#include "specsense/moments.hpp"

namespace specsense {

namespace {

void check_fit_inputs(const ExactRational& m1, const ExactRational& m2,
                      unsigned K) {
  if (K < 2) throw DegenerateMoments("beta fit: K must be >= 2");
  if (!(m1 > ExactRational(1, K) && m1 < 1))
    throw DegenerateMoments("beta fit: M1 outside (1/K, 1)");
  if (!(m2 > m1 * m1))
    throw DegenerateMoments("beta fit: M2 <= M1^2 (zero/negative variance)");
  if (!(m2 < m1))
    throw DegenerateMoments("beta fit: M2 >= M1 violates T_J support");
}

}  // namespace

BetaFit fit_generalized_beta(const ExactRational& m1, const ExactRational& m2,
                             unsigned K) {
  check_fit_inputs(m1, m2, K);
  const ExactRational km1 = ExactRational(K) * m1;
  const ExactRational shared = km1 - ExactRational(K) * m2 + m1 - 1;
  const ExactRational variance = m2 - m1 * m1;
  const ExactRational alpha =
      (km1 - 1) * shared / (ExactRational(K - 1) * K * variance);
  const ExactRational beta = (m1 - 1) * shared / (ExactRational(K - 1) * -variance);
  BetaFit fit{to_double(alpha), to_double(beta), K, to_double(m1), to_double(m2)};
  if (!(fit.alpha > 0.0) || !(fit.beta > 0.0))
    throw DegenerateMoments("beta fit: non-positive alpha or beta");
  return fit;
}

BetaFit fit_generalized_beta(double m1, double m2, unsigned K) {
  // Exact rationals from the doubles keep the two entry points consistent.
  return fit_generalized_beta(ExactRational(m1), ExactRational(m2), K);
}

BetaFit fit_tj_h0(unsigned K, unsigned N) {
  return fit_generalized_beta(moment_tj(1, K, N), moment_tj(2, K, N), K);
}

double generalized_beta_moment(const BetaFit& fit, unsigned m) {
  // (1/K^m) sum_i C(m,i) (K-1)^i (alpha)_i / (alpha+beta)_i
  double sum = 0.0;
  double binom = 1.0;       // C(m, i)
  double km1_pow = 1.0;     // (K-1)^i
  double poch_ratio = 1.0;  // (alpha)_i / (alpha+beta)_i
  for (unsigned i = 0; i <= m; ++i) {
    sum += binom * km1_pow * poch_ratio;
    binom *= static_cast<double>(m - i) / static_cast<double>(i + 1);
    km1_pow *= static_cast<double>(fit.K - 1);
    poch_ratio *= (fit.alpha + i) / (fit.alpha + fit.beta + i);
  }
  return sum / std::pow(static_cast<double>(fit.K), m);
}

namespace {

// Continued fraction for the regularized incomplete beta (modified Lentz).
double beta_continued_fraction(double a, double b, double x) {
  constexpr int kMaxIter = 2000;
  constexpr double kEps = 1e-16;
  constexpr double kTiny = 1e-300;

  const double qab = a + b;
  const double qap = a + 1.0;
  const double qam = a - 1.0;
  double c = 1.0;
  double d = 1.0 - qab * x / qap;
  if (std::abs(d) < kTiny) d = kTiny;
  d = 1.0 / d;
  double h = d;
  for (int it = 1; it <= kMaxIter; ++it) {
    const double m = it;
    const double m2 = 2.0 * m;
    double aa = m * (b - m) * x / ((qam + m2) * (a + m2));
    d = 1.0 + aa * d;
    if (std::abs(d) < kTiny) d = kTiny;
    c = 1.0 + aa / c;
    if (std::abs(c) < kTiny) c = kTiny;
    d = 1.0 / d;
    h *= d * c;
    aa = -(a + m) * (qab + m) * x / ((a + m2) * (qap + m2));
    d = 1.0 + aa * d;
    if (std::abs(d) < kTiny) d = kTiny;
    c = 1.0 + aa / c;
    if (std::abs(c) < kTiny) c = kTiny;
    d = 1.0 / d;
    const double del = d * c;
    h *= del;
    if (std::abs(del - 1.0) < kEps) return h;
  }
  throw NoConvergence("incomplete beta: continued fraction stalled at a=" +
                      std::to_string(a) + ", b=" + std::to_string(b));
}

void check_beta_domain(double x, double a, double b) {
  if (!(x >= 0.0) || !(x <= 1.0))
    throw DomainError("incomplete beta: x outside [0, 1]");
  if (!(a > 0.0) || !(b > 0.0))
    throw DomainError("incomplete beta: a, b must be > 0");
}

}  // namespace

double regularized_incomplete_beta(double x, double a, double b) {
  check_beta_domain(x, a, b);
  if (x == 0.0) return 0.0;
  if (x == 1.0) return 1.0;
  const double log_front = std::lgamma(a + b) - std::lgamma(a) -
                           std::lgamma(b) + a * std::log(x) +
                           b * std::log1p(-x);
  const double front = std::exp(log_front);
  if (x < (a + 1.0) / (a + b + 2.0))
    return front * beta_continued_fraction(a, b, x) / a;
  return 1.0 - front * beta_continued_fraction(b, a, 1.0 - x) / b;
}

double incomplete_beta_lower(double x, double a, double b) {
  check_beta_domain(x, a, b);
  const double log_beta =
      std::lgamma(a) + std::lgamma(b) - std::lgamma(a + b);
  return regularized_incomplete_beta(x, a, b) * std::exp(log_beta);
}

namespace {

double pfa_unchecked(double zeta, const BetaFit& fit) {
  const double x = static_cast<double>(fit.K) * (1.0 - zeta) /
                   static_cast<double>(fit.K - 1);
  return regularized_incomplete_beta(std::clamp(x, 0.0, 1.0), fit.beta,
                                     fit.alpha);
}

}  // namespace

double cdf_tj_approx(double y, const BetaFit& fit) {
  const double support_lo = 1.0 / static_cast<double>(fit.K);
  if (y < support_lo)
    throw DomainError("cdf_tj_approx: y below support point 1/K");
  if (y >= 1.0) return 1.0;
  return 1.0 - pfa_unchecked(y, fit);
}

double pfa(double zeta, const BetaFit& fit) {
  const double support_lo = 1.0 / static_cast<double>(fit.K);
  if (zeta < support_lo || zeta > 1.0)
    throw DomainError("pfa: threshold outside [1/K, 1]");
  return pfa_unchecked(zeta, fit);
}

double threshold_for_pfa(double target, const BetaFit& fit) {
  if (!(target > 0.0) || !(target < 1.0))
    throw DomainError("threshold_for_pfa: target outside (0, 1)");
  double lo = 1.0 / static_cast<double>(fit.K);
  double hi = 1.0;
  double mid = 0.5 * (lo + hi);
  for (int it = 0; it < 200; ++it) {
    mid = 0.5 * (lo + hi);
    const double p = pfa_unchecked(mid, fit);
    if (std::abs(p - target) <= 1e-12) return mid;
    if (p > target)
      lo = mid;
    else
      hi = mid;
  }
  if (std::abs(pfa_unchecked(mid, fit) - target) <= 1e-10) return mid;
  throw NoConvergence("threshold_for_pfa: bisection failed; broken fit?");
}

}  // namespace specsense
