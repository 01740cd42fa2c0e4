#include "perioscope/rational.hpp"

#include <cmath>
#include <stdexcept>

namespace perioscope {

std::string to_fraction_string(const Rational& x) {
  return numerator_of(x).str() + "/" + denominator_of(x).str();
}

std::string to_display_string(const Rational& x) {
  if (is_integer(x)) return numerator_of(x).str();
  return to_fraction_string(x);
}

namespace {

Integer parse_integer(std::string_view text, std::string_view whole) {
  std::size_t pos = 0;
  if (!text.empty() && (text[0] == '-' || text[0] == '+')) pos = 1;
  if (pos == text.size()) throw std::invalid_argument("bad rational: '" + std::string(whole) + "'");
  for (std::size_t k = pos; k < text.size(); ++k) {
    if (text[k] < '0' || text[k] > '9')
      throw std::invalid_argument("bad rational: '" + std::string(whole) + "'");
  }
  std::string digits(text.substr(text[0] == '+' ? 1 : 0));
  return Integer(digits);
}

}  // namespace

Rational parse_rational(std::string_view text) {
  while (!text.empty() && text.front() == ' ') text.remove_prefix(1);
  while (!text.empty() && text.back() == ' ') text.remove_suffix(1);
  const auto slash = text.find('/');
  if (slash == std::string_view::npos) return Rational(parse_integer(text, text));
  Integer num = parse_integer(text.substr(0, slash), text);
  Integer den = parse_integer(text.substr(slash + 1), text);
  if (den == 0) throw std::invalid_argument("zero denominator: '" + std::string(text) + "'");
  return Rational(num, den);
}

Rational abs(const Rational& x) { return x < 0 ? Rational(-x) : x; }

Rational pow(const Rational& base, unsigned exponent) {
  Rational result(1);
  Rational b = base;
  while (exponent != 0) {
    if (exponent & 1u) result *= b;
    exponent >>= 1;
    if (exponent != 0) b *= b;
  }
  return result;
}

double to_double(const Rational& x) { return x.convert_to<double>(); }

}  // namespace perioscope
