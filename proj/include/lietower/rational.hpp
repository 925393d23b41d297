#pragma once

#include <gmpxx.h>

#include <string>
#include <string_view>

namespace lietower {

// Exact rational scalar. mpq_class keeps values canonical: lowest terms,
// positive denominator, no rounding anywhere.
using Rational = mpq_class;

inline std::string to_string(const Rational& q) { return q.get_str(); }

// mpq_class(p, q) does not canonicalize on its own; this does.
inline Rational frac(long num, long den) {
  Rational q(num, den);
  q.canonicalize();
  return q;
}

// Parses "p", "-p" or "p/q"; canonicalizes.
Rational rational_from_string(std::string_view s);

}  // namespace lietower
