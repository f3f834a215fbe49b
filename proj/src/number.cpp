#include "toric/number.hpp"

#include <limits>
#include <stdexcept>

namespace toric {

namespace {

bool is_integer_literal(std::string_view text) {
  if (text.empty()) return false;
  std::size_t start = (text[0] == '-' || text[0] == '+') ? 1 : 0;
  if (start == text.size()) return false;
  for (std::size_t i = start; i < text.size(); ++i)
    if (text[i] < '0' || text[i] > '9') return false;
  return true;
}

}  // namespace

Integer parse_integer(std::string_view text) {
  if (!is_integer_literal(text))
    throw std::invalid_argument("not an integer: '" + std::string(text) + "'");
  std::string digits(text[0] == '+' ? text.substr(1) : text);
  return Integer(digits, 10);
}

Rational parse_rational(std::string_view text) {
  auto slash = text.find('/');
  if (slash == std::string_view::npos) return Rational(parse_integer(text));
  Integer num = parse_integer(text.substr(0, slash));
  std::string_view den_text = text.substr(slash + 1);
  if (!den_text.empty() && den_text[0] == '-')
    throw std::invalid_argument("negative denominator in '" + std::string(text) + "'");
  Integer den = parse_integer(den_text);
  if (den == 0) throw std::invalid_argument("zero denominator in '" + std::string(text) + "'");
  Rational q(num, den);
  q.canonicalize();
  return q;
}

std::string to_string(const Integer& value) { return value.get_str(10); }

std::string to_string(const Rational& value) {
  Rational q = value;
  q.canonicalize();
  return q.get_str(10);
}

Rational power(const Rational& base, const Integer& exponent) {
  if (!Integer(abs(exponent)).fits_ulong_p())
    throw std::overflow_error("exponent out of range");
  if (exponent < 0 && base == 0) throw std::domain_error("zero raised to a negative power");
  unsigned long e = exponent >= 0 ? exponent.get_ui() : Integer(-exponent).get_ui();
  Integer num, den;
  mpz_pow_ui(num.get_mpz_t(), base.get_num_mpz_t(), e);
  mpz_pow_ui(den.get_mpz_t(), base.get_den_mpz_t(), e);
  Rational result = exponent >= 0 ? Rational(num, den) : Rational(den, num);
  result.canonicalize();
  return result;
}

}  // namespace toric
