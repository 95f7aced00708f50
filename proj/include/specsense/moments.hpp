#pragma once

#include <span>
#include <utility>
#include <vector>

#include "specsense/errors.hpp"
#include "specsense/exact_rational.hpp"

namespace specsense {

// Non-negative integers a_1..a_K with sum m; one term of the moment sum.
using Composition = std::vector<unsigned>;

namespace detail {
template <typename Fn>
void compositions_rec(Composition& a, std::size_t index, unsigned remaining,
                      Fn&& fn) {
  if (index + 1 == a.size()) {
    a[index] = remaining;
    fn(const_cast<const Composition&>(a));
    return;
  }
  for (unsigned v = 0; v <= remaining; ++v) {
    a[index] = v;
    compositions_rec(a, index + 1, remaining - v, fn);
  }
}
}  // namespace detail

// Streams all C(m+K-1, K-1) compositions of m into K parts, in the nested
// "normal sums" order a_1 = 0..m, a_2 = 0..m-a_1, ..., with a_K taking the
// remainder. O(K) memory; the visited span is only valid during the call.
template <typename Fn>
void for_each_composition(unsigned m, unsigned K, Fn&& fn) {
  if (K == 0) throw InvalidDims("compositions: K must be >= 1");
  Composition a(K, 0);
  detail::compositions_rec(a, 0, m, fn);
}

BigInt composition_count(unsigned m, unsigned K);

// E[(sum_i lambda_i^2)^m] under H0: composition sum with the signed
// Vandermonde-style product and exact integer-argument gamma factors.
// Throws InvalidDims if K > N or K = 0.
ExactRational moment_sum_lambda_sq(unsigned m, unsigned K, unsigned N);

// E[(sum_i lambda_i)^(2m)] = Gamma(2m+KN)/Gamma(KN), the rising factorial
// (KN)(KN+1)...(KN+2m-1).
ExactRational moment_trace_power(unsigned m, unsigned K, unsigned N);

// M_m, the m-th moment of T_J under H0; exact rational in [K^-m, 1].
ExactRational moment_tj(unsigned m, unsigned K, unsigned N);

// E[prod_i lambda_i^(2 a_i)] by the explicit K! permutation sum of integer
// gamma determinants. Oracle only: throws TooLarge for K > 6.
ExactRational monomial_moment_lemma1(const Composition& a, unsigned K,
                                     unsigned N);

// Both sides of the gamma determinant identity
//   det[Gamma(b_i + j - 1)]_{i,j} = prod_{i<j}(b_j - b_i) * prod_i Gamma(b_i):
// first the determinant by exact fraction-free (Bareiss) elimination, then
// the closed-form product, for equality testing. Requires all b_i >= 1.
std::pair<ExactRational, ExactRational> gamma_determinant_lemma2(
    std::span<const unsigned> b);

}  // namespace specsense
