#pragma once

#include <gmpxx.h>

#include <string>

#include "lring/error.hpp"

namespace lring {

using Rational = mpq_class;
using Integer = mpz_class;

inline bool is_zero(const Rational& q) { return sgn(q) == 0; }
inline bool is_one(const Rational& q) { return q == 1; }
inline bool is_integer(const Rational& q) { return q.get_den() == 1; }

inline Integer factorial(unsigned n) {
  Integer r = 1;
  for (unsigned k = 2; k <= n; ++k) r *= k;
  return r;
}

/// binom(c, n) = c(c-1)...(c-n+1)/n! for arbitrary rational c.
inline Rational binom_falling(const Rational& c, int n) {
  if (n < 0) throw domain_error("binom: negative n");
  Rational acc = 1;
  for (int j = 0; j < n; ++j) acc *= c - j;
  Rational r = acc / Rational(factorial(static_cast<unsigned>(n)));
  r.canonicalize();
  return r;
}

/// binom(c+n-1, n) = c(c+1)...(c+n-1)/n!.
inline Rational binom_rising(const Rational& c, int n) {
  if (n < 0) throw domain_error("binom: negative n");
  Rational acc = 1;
  for (int j = 0; j < n; ++j) acc *= c + j;
  Rational r = acc / Rational(factorial(static_cast<unsigned>(n)));
  r.canonicalize();
  return r;
}

inline std::string to_string(const Rational& q) { return q.get_str(); }

}  // namespace lring
