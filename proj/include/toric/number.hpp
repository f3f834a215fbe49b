#pragma once

#include <gmpxx.h>

#include <string>
#include <string_view>

namespace toric {

using Integer = mpz_class;
using Rational = mpq_class;

// Accepts "p", "-p" or "p/q" with q != 0. The result is canonicalized.
Rational parse_rational(std::string_view text);
Integer parse_integer(std::string_view text);

std::string to_string(const Integer& value);
// Canonical "p" or "p/q" form.
std::string to_string(const Rational& value);

// x^e for integer e; x must be nonzero when e < 0.
Rational power(const Rational& base, const Integer& exponent);

}  // namespace toric
