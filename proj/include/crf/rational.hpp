#pragma once

#include <boost/multiprecision/cpp_int.hpp>

#include <string>
#include <string_view>

namespace crf {

// All probability arithmetic is exact; no floating point is used anywhere
// an equality verdict depends on.
using Rational = boost::multiprecision::cpp_rational;
using BigInt = boost::multiprecision::cpp_int;

// "p" for integers, "p/q" otherwise. Always lowest terms.
std::string rational_text(const Rational& r);

// Always "p/q", even for integers ("3/1").
std::string rational_fraction(const Rational& r);

// Accepts a decimal integer or "p/q" with q > 0. Throws Error{ParseError}.
Rational parse_rational(std::string_view token);

}  // namespace crf
