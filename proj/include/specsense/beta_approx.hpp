#pragma once

#include "specsense/exact_rational.hpp"

namespace specsense {

// Two-moment fit of the generalized Beta density on [1/K, 1].
struct BetaFit {
  double alpha = 0.0;
  double beta = 0.0;
  unsigned K = 0;
  double m1 = 0.0;  // moments used for the fit, kept for round-trip checks
  double m2 = 0.0;
};

// Closed-form (alpha, beta) from the first two moments. Throws
// DegenerateMoments unless K >= 2, 1/K < M1 < 1 and M1^2 < M2 < M1.
BetaFit fit_generalized_beta(double m1, double m2, unsigned K);

// Same fit evaluated in exact rational arithmetic before conversion; avoids
// the M2 - M1^2 cancellation when the variance is tiny.
BetaFit fit_generalized_beta(const ExactRational& m1, const ExactRational& m2,
                             unsigned K);

// Convenience: exact M_1, M_2 of T_J under H0 at (K, N), then the fit above.
BetaFit fit_tj_h0(unsigned K, unsigned N);

// m-th moment of the fitted generalized Beta variable (binomial expansion in
// Pochhammer ratios).
double generalized_beta_moment(const BetaFit& fit, unsigned m);

// Regularized I_x(a, b) by the standard continued fraction with the symmetry
// switch at x = (a+1)/(a+b+2).
double regularized_incomplete_beta(double x, double a, double b);

// Unregularized lower incomplete Beta B(x; a, b); complete Beta restored in
// log space. Throws DomainError outside 0 <= x <= 1, a > 0, b > 0.
double incomplete_beta_lower(double x, double a, double b);

// Approximate CDF of T_J under H0: F(y) = 1 - I_{K(1-y)/(K-1)}(beta, alpha)
// for y in [1/K, 1], clamped to 1 for y >= 1. Throws DomainError if y < 1/K.
double cdf_tj_approx(double y, const BetaFit& fit);

// False alarm probability P_fa(zeta) = 1 - F(zeta); zeta must lie in
// [1/K, 1].
double pfa(double zeta, const BetaFit& fit);

// Inverts pfa by bisection on [1/K, 1]; |pfa(zeta) - target| <= 1e-10 or
// NoConvergence after 200 iterations.
double threshold_for_pfa(double target, const BetaFit& fit);

}  // namespace specsense
