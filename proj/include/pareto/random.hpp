#ifndef PARETO_RANDOM_HPP
#define PARETO_RANDOM_HPP

#include <cstdint>
#include <random>

#include "pareto/rational.hpp"

namespace pareto {

/// Seeded generator with distributions written out by hand, so a seed gives
/// the same stream on every standard library.
class Rng {
public:
  explicit Rng(std::uint64_t seed) : engine_(seed) {}

  std::uint64_t next() { return engine_(); }

  /// Uniform integer in [0, n); n > 0.
  std::uint64_t below(std::uint64_t n) {
    const std::uint64_t limit = UINT64_MAX - UINT64_MAX % n;
    std::uint64_t x;
    do {
      x = engine_();
    } while (x >= limit);
    return x % n;
  }

  /// Uniform integer in [lo, hi].
  long between(long lo, long hi) { return lo + static_cast<long>(below(static_cast<std::uint64_t>(hi - lo) + 1)); }

  /// Uniform double in [0, 1) with 53 random bits.
  double uniform() { return static_cast<double>(engine_() >> 11) * 0x1.0p-53; }

  /// Rational k / 2^bits with k uniform in [1, 2^bits - 1]; strictly inside (0, 1).
  Rational open_unit(int bits = 20) {
    mpz_class den = 1;
    den <<= bits;
    Rational q(mpz_class(static_cast<unsigned long>(below((1ul << bits) - 1) + 1)), den);
    q.canonicalize();
    return q;
  }

private:
  std::mt19937_64 engine_;
};

}  // namespace pareto

#endif  // PARETO_RANDOM_HPP
