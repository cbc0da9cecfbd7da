#pragma once

#include <gmpxx.h>

#include <cstdint>
#include <string>
#include <string_view>

namespace cuspmass {

/// Exact rational scalar used by every identity check in the library.
using Rational = mpq_class;

/// Parses "a", "-a", "a/b" (b != 0). Whitespace is not accepted.
/// Throws std::invalid_argument on malformed input.
Rational parse_rational(std::string_view text);

/// Canonical "a/b" form with b >= 1 and gcd(a, b) = 1, e.g. "1/1", "-3/2".
std::string to_fraction_string(const Rational& q);

/// Shortest form: "3/2", "-2", "0".
std::string to_short_string(const Rational& q);

inline Rational make_rational(std::int64_t num, std::int64_t den = 1) {
  Rational q(mpz_class(static_cast<long>(num)), mpz_class(static_cast<long>(den)));
  q.canonicalize();
  return q;
}

inline bool is_integer(const Rational& q) { return q.get_den() == 1; }

}  // namespace cuspmass
