#pragma once

/**
 * @file rational.hpp
 * @brief Exact rational arithmetic used throughout the library.
 *
 * All core computation happens in arbitrary-precision rationals so that
 * sign tests and probability sums are exact. Values are kept in lowest
 * terms with a positive denominator (boost::multiprecision::cpp_rational
 * guarantees both).
 */

#include <boost/multiprecision/cpp_int.hpp>

#include <string>
#include <string_view>

namespace metadice {

using Integer = boost::multiprecision::cpp_int;
using Rational = boost::multiprecision::cpp_rational;

/// Builds num/den, normalizing the sign of the denominator. Throws
/// std::invalid_argument on a zero denominator.
Rational make_rational(Integer num, Integer den);

/// Parses "5", "-7/3", "0". Whitespace is not accepted.
Rational parse_rational(std::string_view text);

/// Formats as "5" (denominator 1) or "-7/3".
std::string to_string(const Rational& q);

double to_double(const Rational& q);

/// -1, 0 or +1.
int sign_of(const Rational& q);

/// Exact base^exp for small nonnegative exponents.
Rational rational_pow(const Rational& base, unsigned exp);

/// Shortest float formatting with the given number of significant digits.
std::string decimal_string(double value, int significant_digits);

}  // namespace metadice
