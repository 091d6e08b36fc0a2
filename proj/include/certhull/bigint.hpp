#pragma once

#include <boost/multiprecision/cpp_int.hpp>

namespace certhull {

using BigInt = boost::multiprecision::cpp_int;

BigInt factorial(unsigned n);
BigInt falling_factorial(unsigned n, unsigned k);  // n! / (n-k)!
BigInt power(unsigned base, unsigned exponent);

/// log2 of a positive integer; exact for powers of two, otherwise to double precision.
double log2_big(const BigInt& v);

}  // namespace certhull
