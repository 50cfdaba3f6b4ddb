#pragma once

#include <boost/multiprecision/cpp_int.hpp>

#include <string>
#include <string_view>

namespace mds {

using Integer = boost::multiprecision::cpp_int;
using Rational = boost::multiprecision::cpp_rational;

inline Rational make_rational(long long num, long long den = 1) { return Rational(num, den); }

Integer floor(const Rational& r);
Integer ceil(const Rational& r);
bool is_integer(const Rational& r);

/// "n" or "n/d", canonical.
std::string to_string(const Rational& r);

/// Accepts "n", "-n", "n/d". Throws Error(ParseError).
Rational parse_rational(std::string_view text);

}  // namespace mds
