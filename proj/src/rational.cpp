#include "pspec/rational.hpp"

#include "pspec/errors.hpp"

#include <string>

namespace pspec {

std::string to_string(const Rational& x) {
  return numerator_of(x).str() + "/" + denominator_of(x).str();
}

Rational parse_rational(std::string_view text) {
  const std::string s(text);
  const auto slash = s.find('/');
  try {
    if (slash == std::string::npos) return Rational(Integer(s));
    Integer num(s.substr(0, slash));
    Integer den(s.substr(slash + 1));
    if (den == 0) throw RangeError("parse_rational: zero denominator");
    return Rational(num, den);
  } catch (const std::runtime_error&) {
    throw InvariantError("parse_rational: malformed rational '" + s + "'");
  }
}

Rational pow_int(const Rational& x, int e) {
  if (e < 0 && x == 0) throw RangeError("pow_int: zero to a negative power");
  return pow_int_generic(x, e);
}

}  // namespace pspec
