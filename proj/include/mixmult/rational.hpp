#pragma once

#include <string>
#include <string_view>

#include <boost/multiprecision/cpp_int.hpp>

namespace mixmult
{

using Integer = boost::multiprecision::cpp_int;
using Rational = boost::multiprecision::cpp_rational;

// "p/q" in lowest terms, or "n" when the denominator is 1.
std::string to_string(const Rational &q);
std::string to_string(const Integer &n);

// Accepts "n", "-n", "p/q". Throws InputError on anything else or a zero denominator.
Rational parse_rational(std::string_view text);

Integer factorial(unsigned n);
Integer binomial(unsigned n, unsigned k);

Rational pow(const Rational &base, unsigned exponent);

} // namespace mixmult
