#include "specsense/moments.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include <boost/multiprecision/integer.hpp>

namespace specsense {

double to_double(const ExactRational& value) {
  using boost::multiprecision::msb;
  BigInt num = boost::multiprecision::numerator(value);
  BigInt den = boost::multiprecision::denominator(value);
  if (num == 0) return 0.0;
  const bool negative = num < 0;
  if (negative) num = -num;
  // Scale so the integer quotient carries ~96 bits; the dropped remainder is
  // then far below one ulp of the 53-bit result.
  const long shift =
      96 - (static_cast<long>(msb(num)) - static_cast<long>(msb(den)));
  if (shift > 0)
    num <<= shift;
  else
    den <<= -shift;
  const double q = BigInt(num / den).convert_to<double>();
  const double result = std::ldexp(q, static_cast<int>(-shift));
  return negative ? -result : result;
}

BigInt factorial_big(unsigned n) {
  BigInt f = 1;
  for (unsigned i = 2; i <= n; ++i) f *= i;
  return f;
}

namespace {

std::vector<BigInt> factorial_table(unsigned max_n) {
  std::vector<BigInt> fact(max_n + 1);
  fact[0] = 1;
  for (unsigned i = 1; i <= max_n; ++i) fact[i] = fact[i - 1] * i;
  return fact;
}

// Exact determinant by fraction-free (Bareiss) elimination with row pivoting.
BigInt bareiss_determinant(std::vector<std::vector<BigInt>> m) {
  const std::size_t n = m.size();
  if (n == 0) return 1;
  BigInt prev = 1;
  int sign = 1;
  for (std::size_t k = 0; k + 1 < n; ++k) {
    if (m[k][k] == 0) {
      std::size_t pivot = k + 1;
      while (pivot < n && m[pivot][k] == 0) ++pivot;
      if (pivot == n) return 0;
      std::swap(m[k], m[pivot]);
      sign = -sign;
    }
    for (std::size_t i = k + 1; i < n; ++i) {
      for (std::size_t j = k + 1; j < n; ++j) {
        m[i][j] = (m[i][j] * m[k][k] - m[i][k] * m[k][j]) / prev;
      }
      m[i][k] = 0;
    }
    prev = m[k][k];
  }
  return sign * m[n - 1][n - 1];
}

BigInt constant_c_denominator(unsigned K, unsigned N,
                              const std::vector<BigInt>& fact) {
  BigInt d = 1;
  for (unsigned i = 1; i <= K; ++i) d *= fact[N - i] * fact[K - i];
  return d;
}

}  // namespace

BigInt composition_count(unsigned m, unsigned K) {
  if (K == 0) throw InvalidDims("composition_count: K must be >= 1");
  // C(m + K - 1, K - 1)
  BigInt num = 1;
  for (unsigned i = 1; i <= K - 1; ++i) {
    num *= (m + i);
    num /= i;
  }
  return num;
}

ExactRational moment_sum_lambda_sq(unsigned m, unsigned K, unsigned N) {
  if (K < 1 || N < K)
    throw InvalidDims("moment_sum_lambda_sq: need N >= K >= 1");
  const auto fact = factorial_table(2 * m + N);
  const BigInt m_fact = fact[m];

  BigInt sum = 0;
  for_each_composition(m, K, [&](const Composition& a) {
    BigInt term = m_fact;
    for (const unsigned ai : a) term /= fact[ai];  // exact multinomial
    for (unsigned i = 0; i < K; ++i) {
      for (unsigned j = i + 1; j < K; ++j) {
        term *= 2 * static_cast<int>(a[j]) - 2 * static_cast<int>(a[i]) +
                static_cast<int>(j - i);
      }
    }
    for (unsigned i = 0; i < K; ++i) term *= fact[2 * a[i] + N - K + i];
    sum += term;
  });
  return ExactRational(sum, constant_c_denominator(K, N, fact));
}

ExactRational moment_trace_power(unsigned m, unsigned K, unsigned N) {
  if (K < 1 || N < 1) throw InvalidDims("moment_trace_power: need K, N >= 1");
  BigInt r = 1;
  const BigInt kn = BigInt(K) * N;
  for (unsigned t = 0; t < 2 * m; ++t) r *= kn + t;
  return ExactRational(r);
}

ExactRational moment_tj(unsigned m, unsigned K, unsigned N) {
  if (K < 1 || N < K) throw InvalidDims("moment_tj: need N >= K >= 1");
  return moment_sum_lambda_sq(m, K, N) / moment_trace_power(m, K, N);
}

ExactRational monomial_moment_lemma1(const Composition& a, unsigned K,
                                     unsigned N) {
  if (K > 6) throw TooLarge("monomial_moment_lemma1: K! sum limited to K <= 6");
  if (K < 1 || N < K)
    throw InvalidDims("monomial_moment_lemma1: need N >= K >= 1");
  if (a.size() != K)
    throw InvalidDims("monomial_moment_lemma1: composition length != K");

  const unsigned m = std::accumulate(a.begin(), a.end(), 0u);
  const auto fact = factorial_table(2 * m + N + K);

  std::vector<unsigned> perm(K);
  std::iota(perm.begin(), perm.end(), 0u);

  BigInt sum = 0;
  do {
    std::vector<std::vector<BigInt>> mat(K, std::vector<BigInt>(K));
    for (unsigned i = 0; i < K; ++i)
      for (unsigned j = 0; j < K; ++j)
        mat[i][j] = fact[2 * a[perm[i]] + N - K + i + j];  // Gamma(x) = (x-1)!
    sum += bareiss_determinant(std::move(mat));
  } while (std::next_permutation(perm.begin(), perm.end()));

  return ExactRational(sum, constant_c_denominator(K, N, fact) * fact[K]);
}

std::pair<ExactRational, ExactRational> gamma_determinant_lemma2(
    std::span<const unsigned> b) {
  const std::size_t k = b.size();
  unsigned max_b = 1;
  for (const unsigned bi : b) {
    if (bi < 1) throw DomainError("gamma_determinant_lemma2: b_i must be >= 1");
    max_b = std::max(max_b, bi);
  }
  const auto fact = factorial_table(max_b + static_cast<unsigned>(k));

  std::vector<std::vector<BigInt>> mat(k, std::vector<BigInt>(k));
  for (std::size_t i = 0; i < k; ++i)
    for (std::size_t j = 0; j < k; ++j) mat[i][j] = fact[b[i] + j - 1];
  const BigInt det = bareiss_determinant(std::move(mat));

  BigInt rhs = 1;
  for (std::size_t i = 0; i < k; ++i) {
    for (std::size_t j = i + 1; j < k; ++j)
      rhs *= BigInt(b[j]) - BigInt(b[i]);
    rhs *= fact[b[i] - 1];
  }
  return {ExactRational(det), ExactRational(rhs)};
}

}  // namespace specsense
