#include "certhull/bigint.hpp"

#include <cmath>
#include <stdexcept>

namespace certhull {

BigInt factorial(unsigned n) { return falling_factorial(n, n); }

BigInt falling_factorial(unsigned n, unsigned k) {
  if (k > n) return 0;
  BigInt out = 1;
  for (unsigned i = n - k + 1; i <= n; ++i) out *= i;
  return out;
}

BigInt power(unsigned base, unsigned exponent) { return boost::multiprecision::pow(BigInt(base), exponent); }

double log2_big(const BigInt& v) {
  if (v <= 0) throw std::domain_error("log2_big: non-positive argument");
  const auto bits = boost::multiprecision::msb(v);
  if (bits < 60) return std::log2(static_cast<double>(v.convert_to<unsigned long long>()));
  // keep the top 60 bits and account for the shift
  const auto shift = bits - 59;
  const BigInt top = v >> shift;
  return std::log2(static_cast<double>(top.convert_to<unsigned long long>())) +
         static_cast<double>(shift);
}

}  // namespace certhull
