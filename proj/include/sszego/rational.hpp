#pragma once

#include <gmpxx.h>

#include <string>
#include <string_view>

namespace sszego {

// Arbitrary precision integers and rationals. mpq_class keeps values in
// lowest terms with a positive denominator after every arithmetic operation.
using Integer = mpz_class;
using Rational = mpq_class;

// num/den in lowest terms; mpq_class's two-argument constructor does not
// reduce, and GMP arithmetic assumes reduced operands.
Rational fraction(const Integer& num, const Integer& den);

// Binomial coefficient C(n, k); zero when k < 0 or k > n.
Rational binomial(long n, long k);
Integer binomial_integer(long n, long k);

// "p" for integers, "p/q" otherwise.
std::string to_string(const Rational& r);

// Accepts an optionally signed integer or "num/den". Throws ParseError.
Rational parse_rational(std::string_view text);

int sign(const Rational& r);
Rational abs(const Rational& r);
Rational pow(const Rational& base, unsigned long exponent);

}  // namespace sszego
