#pragma once

#include <boost/multiprecision/gmp.hpp>

#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

namespace perioscope {

using Integer = boost::multiprecision::mpz_int;
using Rational = boost::multiprecision::mpq_rational;

using RationalVector = std::vector<Rational>;

// "num/den" always, including integers ("5/1"), so that golden files diff cleanly.
std::string to_fraction_string(const Rational& x);

// Human-oriented form: integers print bare, everything else as num/den.
std::string to_display_string(const Rational& x);

// Accepts "a", "-a", "a/b"; throws std::invalid_argument otherwise.
Rational parse_rational(std::string_view text);

inline Integer numerator_of(const Rational& x) { return boost::multiprecision::numerator(x); }
inline Integer denominator_of(const Rational& x) { return boost::multiprecision::denominator(x); }

inline bool is_integer(const Rational& x) { return denominator_of(x) == 1; }

Rational abs(const Rational& x);

// Exact x^k for k >= 0; 0^0 = 1.
Rational pow(const Rational& base, unsigned exponent);

double to_double(const Rational& x);

}  // namespace perioscope
