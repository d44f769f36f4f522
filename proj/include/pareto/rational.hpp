#ifndef PARETO_RATIONAL_HPP
#define PARETO_RATIONAL_HPP

#include <gmpxx.h>

#include <cstddef>
#include <string>

namespace pareto {

/// Exact rational scalar used by every geometric predicate.
using Rational = mpq_class;

/// Parses "n/d" or "n" (optionally signed). Throws Error(InvalidInput).
Rational parse_rational(const std::string& text);

/// Canonical "n/d" form; the denominator is always printed, "3/1" for 3.
std::string to_string(const Rational& q);

/// Converts a double to a rational. The result is the exact binary value
/// whenever its denominator is at most 2^53; otherwise it is rounded to the
/// nearest multiple of 2^-53.
Rational from_double(double x);

/// Rounds x to the nearest multiple of 2^-bits (ties away from zero).
Rational quantize(double x, int bits);

inline double to_double(const Rational& q) { return q.get_d(); }

inline Rational abs(const Rational& q) { return q < 0 ? Rational(-q) : q; }

inline const Rational& min(const Rational& a, const Rational& b) { return b < a ? b : a; }
inline const Rational& max(const Rational& a, const Rational& b) { return a < b ? b : a; }

struct RationalHash {
  std::size_t operator()(const Rational& q) const;
};

}  // namespace pareto

#endif  // PARETO_RATIONAL_HPP
