#pragma once

#include <gmpxx.h>

#include <cstdint>
#include <limits>
#include <string>
#include <string_view>
#include <vector>

namespace hypcoh {

/// Exact rational, always canonical (reduced, positive denominator).
using Rational = mpq_class;

/// Vector in the finite-dimensional coefficient space (sup norm).
using Coeff = std::vector<Rational>;

/// Graph distance; `kInfinity` encodes different components.
using Distance = std::uint32_t;
inline constexpr Distance kInfinity = std::numeric_limits<Distance>::max();

/// Formats as "num/den" (denominator always printed).
std::string to_string(const Rational& q);
std::string distance_string(Distance d);

/// Parses "num/den", "num" or a decimal-free integer. Throws ParseError.
Rational parse_rational(std::string_view text);

Rational abs(const Rational& q);
/// Canonical n/d.
Rational ratio(long n, long d);

/// Sup norm of a coefficient vector.
Rational sup_norm(const Coeff& v);
bool is_zero(const Coeff& v);

}  // namespace hypcoh
