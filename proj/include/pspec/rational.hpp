#pragma once

#include <boost/multiprecision/gmp.hpp>

#include <string>
#include <string_view>

namespace pspec {

// Exact rational scalar. Expression templates are disabled so that the type
// behaves like an ordinary value in generic (Scalar-templated) code.
using Rational = boost::multiprecision::number<boost::multiprecision::gmp_rational,
                                               boost::multiprecision::et_off>;
using Integer = boost::multiprecision::number<boost::multiprecision::gmp_int,
                                              boost::multiprecision::et_off>;

inline Rational make_rational(long long num, long long den = 1) {
  return Rational(Integer(num), Integer(den));
}

inline Integer numerator_of(const Rational& x) { return boost::multiprecision::numerator(x); }
inline Integer denominator_of(const Rational& x) { return boost::multiprecision::denominator(x); }

// Serialized as "num/den" (the denominator is always written, "18/1").
std::string to_string(const Rational& x);
Rational parse_rational(std::string_view text);

inline double to_double(const Rational& x) { return x.convert_to<double>(); }

// x^e for any integer e; throws RangeError on 0^negative.
Rational pow_int(const Rational& x, int e);

inline int sign(const Rational& x) { return x.sign(); }

// Generic scalar helpers, so templated code can be written once for both
// double and Rational.
template <class Scalar>
Scalar pow_int_generic(const Scalar& x, int e) {
  Scalar result(1);
  Scalar base = x;
  bool invert = e < 0;
  unsigned int u = invert ? static_cast<unsigned int>(-e) : static_cast<unsigned int>(e);
  while (u) {
    if (u & 1U) result *= base;
    base *= base;
    u >>= 1U;
  }
  if (invert) result = Scalar(1) / result;
  return result;
}

}  // namespace pspec
