#pragma once

// Exact integer fast paths: a vector of rationals is rescaled by the lcm of its
// denominators so that transforms and sums can run on machine integers.

#include <cstdint>
#include <optional>
#include <span>
#include <vector>

#include "walshfejer/rational.hpp"

namespace walshfejer::detail {

struct ScaledIntegers {
  Integer denominator;              // common denominator D
  std::vector<std::int64_t> values;  // values[i] = D * q[i]
};

/// Rescales q to integers, provided sum_i |D q_i| * headroom < 2^62.
std::optional<ScaledIntegers> scale_to_int64(std::span<const Rational> q,
                                             std::uint64_t headroom = 1);

Integer from_int128(__int128 v);

inline Rational from_int64(std::int64_t v) { return Rational(static_cast<long>(v)); }

}  // namespace walshfejer::detail
