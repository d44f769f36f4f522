#ifndef PARETO_PLANE_HPP
#define PARETO_PLANE_HPP

#include <compare>
#include <ostream>
#include <vector>

#include "pareto/rational.hpp"

namespace pareto {

/// A point c = (a, b) of the parameter plane; a is the f-coordinate and b the
/// g-coordinate.
struct PlanePoint {
  Rational a;
  Rational b;

  friend bool operator==(const PlanePoint& p, const PlanePoint& q) { return p.a == q.a && p.b == q.b; }
  friend bool operator!=(const PlanePoint& p, const PlanePoint& q) { return !(p == q); }
};

/// Lexicographic (a, then b); used only for containers, not the product order.
struct PlanePointLess {
  bool operator()(const PlanePoint& p, const PlanePoint& q) const {
    return p.a < q.a || (p.a == q.a && p.b < q.b);
  }
};

std::ostream& operator<<(std::ostream& os, const PlanePoint& p);

enum class Order { Less, Greater, Equal, Incomparable };

/// Product order on the plane.
Order cmp_product(const PlanePoint& p, const PlanePoint& q);

/// p precedes q componentwise (p == q allowed).
inline bool precedes(const PlanePoint& p, const PlanePoint& q) { return p.a <= q.a && p.b <= q.b; }

/// p precedes q strictly in both coordinates.
inline bool strictly_precedes(const PlanePoint& p, const PlanePoint& q) { return p.a < q.a && p.b < q.b; }

inline Rational natural_height(const PlanePoint& p) { return p.a + p.b; }

/// Chart turned by 45 degrees: t is the natural height, x = b - a. Increasing
/// curves become graphs x(t) with Lipschitz constant below one.
struct RotatedPoint {
  Rational t;
  Rational x;

  friend bool operator==(const RotatedPoint& p, const RotatedPoint& q) { return p.t == q.t && p.x == q.x; }
};

inline RotatedPoint rotate45(const PlanePoint& p) { return {p.a + p.b, p.b - p.a}; }

inline PlanePoint unrotate45(const RotatedPoint& r) {
  return {Rational((r.t - r.x) / 2), Rational((r.t + r.x) / 2)};
}

/// Closed axis-aligned square [lo, hi]^2 enclosing everything of interest.
struct Box {
  Rational lo;
  Rational hi;

  PlanePoint lower_corner() const { return {lo, lo}; }
  PlanePoint upper_corner() const { return {hi, hi}; }
  bool contains(const PlanePoint& p) const { return lo <= p.a && p.a <= hi && lo <= p.b && p.b <= hi; }
  bool interior(const PlanePoint& p) const { return lo < p.a && p.a < hi && lo < p.b && p.b < hi; }
};

/// Square box [min - m, max + m]^2 around the given coordinates with margin
/// m = (max - min) / 16 (or 1 when all values coincide).
Box enclosing_box(const std::vector<Rational>& values);

/// Sign of the cross product (q - p) x (r - p).
int orient2d(const PlanePoint& p, const PlanePoint& q, const PlanePoint& r);

}  // namespace pareto

#endif  // PARETO_PLANE_HPP
