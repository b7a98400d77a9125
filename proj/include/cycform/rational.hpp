#pragma once

#include <gmpxx.h>

#include <string>
#include <string_view>

namespace cycform {

using Rational = mpq_class;

/// Canonical text form: "p" or "p/q" with q > 0.
std::string to_string(const Rational& value);

/// Accepts "p", "-p", "p/q". Throws std::invalid_argument on anything else.
Rational parse_rational(std::string_view text);

/// Sign as a Rational; exponent parity decides.
inline Rational sign_pow(long exponent) { return (exponent % 2 == 0) ? Rational(1) : Rational(-1); }

inline int parity_sign(long exponent) { return (exponent % 2 == 0) ? 1 : -1; }

}  // namespace cycform
