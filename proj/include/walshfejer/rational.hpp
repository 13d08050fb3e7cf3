#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>

#include <gmpxx.h>

namespace walshfejer {

using Rational = mpq_class;
using Integer = mpz_class;

/// Numeric carrier for fractional powers. On x86-64 this is the 80-bit
/// extended type with a 64-bit mantissa.
using Real = long double;

/// Relative tolerance used wherever a fractional power forces numeric mode.
inline constexpr Real kRelativeTolerance = 1e-12L;

Rational parse_rational(std::string_view text);

/// Always `<numerator>/<denominator>`, also for integers.
std::string to_fraction_string(const Rational& q);

Real to_real(const Rational& q);

Rational pow2(std::int64_t exponent);

/// x^(1/k) when it is rational, for x >= 0 and k >= 1.
std::optional<Rational> exact_root(const Rational& x, unsigned long k);

/// x^q when it is rational, for x >= 0. 0 raised to a negative power is empty.
std::optional<Rational> exact_pow(const Rational& x, const Rational& q);

Real real_pow(const Rational& x, const Rational& q);

bool approx_equal(Real a, Real b, Real rel = kRelativeTolerance);

/// floor(q) as a signed 64-bit integer.
std::int64_t floor_to_int(const Rational& q);

}  // namespace walshfejer
