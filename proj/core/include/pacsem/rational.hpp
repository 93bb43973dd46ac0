#pragma once

#include <gmpxx.h>

#include <string>
#include <string_view>

namespace pacsem {

// Exact arithmetic everywhere: witnessing and basis decisions must not
// depend on rounding.
using Rational = mpq_class;
using Integer = mpz_class;

// Accepts "7", "-3/4" and decimal forms like "0.05"; the result is in
// lowest terms. Throws InputError on malformed text.
Rational parse_rational(std::string_view text);
Integer parse_integer(std::string_view text);

// "p/q" in lowest terms, or "p" when the denominator is 1.
std::string to_string(const Rational& q);
// Always "p/q", including "1/1".
std::string to_fraction_string(const Rational& q);
std::string to_string(const Integer& z);

Rational rational_min(const Rational& a, const Rational& b);
Rational rational_max(const Rational& a, const Rational& b);

// floor(q) as an integer.
Integer floor_of(const Rational& q);

}  // namespace pacsem
