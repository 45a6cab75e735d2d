#pragma once

#include <boost/multiprecision/cpp_int.hpp>

#include <cstdint>
#include <string>

namespace e1forge {

using BigInt = boost::multiprecision::number<boost::multiprecision::cpp_int_backend<>,
                                             boost::multiprecision::et_off>;
using Rational = boost::multiprecision::number<boost::multiprecision::cpp_rational_backend,
                                               boost::multiprecision::et_off>;

/// Largest odd divisor of |n| (0 maps to 0).
inline BigInt odd_part(BigInt n) {
  if (n < 0) n = -n;
  if (n == 0) return n;
  const auto tz = boost::multiprecision::lsb(n);
  return n >> tz;
}

inline BigInt pow2(unsigned e) { return BigInt(1) << e; }

inline BigInt ipow(BigInt base, unsigned e) { return boost::multiprecision::pow(base, e); }

inline Rational rpow(const Rational& base, unsigned e) {
  Rational r = 1;
  Rational b = base;
  while (e != 0) {
    if (e & 1U) r *= b;
    b *= b;
    e >>= 1;
  }
  return r;
}

inline std::string to_decimal(const BigInt& n) { return n.str(); }

inline std::string to_decimal(const Rational& r) {
  if (boost::multiprecision::denominator(r) == 1) return boost::multiprecision::numerator(r).str();
  return boost::multiprecision::numerator(r).str() + "/" + boost::multiprecision::denominator(r).str();
}

/// ceil(a / b) for positive b.
inline BigInt ceil_div(const BigInt& a, const BigInt& b) {
  BigInt q = a / b;
  if (q * b != a && (a > 0)) ++q;
  return q;
}

}  // namespace e1forge
