#pragma once

#include <string>
#include <string_view>

#include <boost/multiprecision/cpp_int.hpp>

namespace qplane {

/// Arbitrary-precision exact rational. Spectral endpoints, step-function
/// breakpoints and q itself live here so that every topological comparison
/// is exact.
using Rational = boost::multiprecision::cpp_rational;
using BigInt = boost::multiprecision::cpp_int;

/// Parses "p/q", a plain integer, or a finite decimal ("0.52" -> 13/25).
/// Throws ModelError on malformed input.
Rational parse_rational(std::string_view text);

std::string to_string(const Rational& r);
double to_double(const Rational& r);

/// base^exponent for any integer exponent; base must be nonzero when
/// exponent < 0.
Rational pow(const Rational& base, int exponent);

/// Exact square root when r is the square of a rational, otherwise false.
bool exact_sqrt(const Rational& r, Rational& root);

}  // namespace qplane
