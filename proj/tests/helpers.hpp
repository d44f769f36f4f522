#ifndef PARETO_TEST_HELPERS_HPP
#define PARETO_TEST_HELPERS_HPP

#include <random>
#include <vector>

#include "pareto/bicomplex.hpp"
#include "pareto/plane.hpp"

namespace testing {

inline pareto::Rational Q(long n, long d = 1) {
  pareto::Rational q(n, d);
  q.canonicalize();
  return q;
}

inline pareto::PlanePoint P(const pareto::Rational& a, const pareto::Rational& b) { return {a, b}; }

inline pareto::Rational random_rational(std::mt19937_64& rng, long range = 1000, long den = 97) {
  std::uniform_int_distribution<long> num(-range * den, range * den);
  std::uniform_int_distribution<long> d(1, den);
  return Q(num(rng), d(rng));
}

// Octahedron: vertices +x,-x,+y,-y,+z,-z.
inline std::vector<pareto::Simplex> octahedron_triangles() {
  return {{0, 2, 4}, {2, 1, 4}, {1, 3, 4}, {3, 0, 4}, {2, 0, 5}, {1, 2, 5}, {3, 1, 5}, {0, 3, 5}};
}

// n x n flat torus, two triangles per square.
inline std::vector<pareto::Simplex> torus_triangles(int n) {
  std::vector<pareto::Simplex> tris;
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) {
      int a = i * n + j, b = ((i + 1) % n) * n + j, c = ((i + 1) % n) * n + (j + 1) % n, d = i * n + (j + 1) % n;
      tris.push_back({a, b, c});
      tris.push_back({a, c, d});
    }
  return tris;
}

// Generic-looking fields on m vertices: f_i and g_i from a fixed permutation.
inline void generic_fields(std::size_t m, std::uint64_t seed, std::vector<pareto::Rational>& f,
                           std::vector<pareto::Rational>& g) {
  std::mt19937_64 rng(seed);
  f.clear();
  g.clear();
  for (std::size_t i = 0; i < m; ++i) {
    f.push_back(Q(static_cast<long>(rng() % 1000000), 1000));
    g.push_back(Q(static_cast<long>(rng() % 1000000), 1000));
  }
}

}  // namespace testing

#endif
