#pragma once

#include <gmpxx.h>

#include <cstdint>
#include <stdexcept>
#include <string>

namespace lds {

using Rational = mpq_class;
using Integer = mpz_class;

/// Exact conversion of a finite double (every finite double is a dyadic
/// rational).
Rational rational_from_double(double x);

/// Parses a plain decimal string ("0.75", "-1.5e-3" is not accepted, only
/// [sign]digits[.digits]) into an exact rational. Locale independent.
Rational rational_from_decimal(const std::string& s);

/// Decimal expansion of q with `digits` significant digits, round to nearest,
/// ties away from zero. No exponent notation, no locale dependence.
std::string decimal_string(const Rational& q, int digits);

inline int sign_of(const Rational& q) { return sgn(q); }

}  // namespace lds
