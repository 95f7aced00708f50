#pragma once

#include <boost/multiprecision/cpp_int.hpp>

namespace specsense {

using BigInt = boost::multiprecision::cpp_int;

// Arbitrary-precision rational, always reduced, denominator > 0 (the
// backing type canonicalizes on construction and after every operation).
using ExactRational = boost::multiprecision::cpp_rational;

// Safe conversion for rationals whose numerator/denominator separately
// overflow double (e.g. ratios of large factorials): scales both by a power
// of two before dividing.
double to_double(const ExactRational& value);

// n! as an exact big integer.
BigInt factorial_big(unsigned n);

}  // namespace specsense
