#pragma once

#include <cstdint>
#include <string>
#include <string_view>

#include <boost/rational.hpp>

namespace boost {

// Under C++20 the reversed candidate boost provides for (int, rational) calls
// itself forever; these exact matches win overload resolution instead.
inline bool operator==(const rational<std::int64_t>& a, int b) {
    return a.denominator() == 1 && a.numerator() == b;
}

}  // namespace boost

namespace hier {

// Exact scalar used for weights, costs, estimates and budgets.
using Rational = boost::rational<std::int64_t>;

// Accepts "12", "-3.25", "7/4". Throws Error(Syntax) on malformed text.
Rational parse_rational(std::string_view text);

// Terminating fractions print as decimals ("2.9"), others as "p/q".
std::string to_string(const Rational& value);

double to_double(const Rational& value);

// floor/ceil of a rational.
std::int64_t floor_int(const Rational& value);
std::int64_t ceil_int(const Rational& value);

// Smallest multiple of `step` that is >= value; step must be positive.
Rational round_up_to(const Rational& value, const Rational& step);

// Euclidean length rounded to the nearest micro-unit.
Rational rounded_sqrt(const Rational& squared);

}  // namespace hier
