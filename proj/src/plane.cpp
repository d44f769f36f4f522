#include "pareto/plane.hpp"

#include <algorithm>

#include "pareto/error.hpp"

namespace pareto {

std::ostream& operator<<(std::ostream& os, const PlanePoint& p) {
  return os << "(" << to_string(p.a) << ", " << to_string(p.b) << ")";
}

Order cmp_product(const PlanePoint& p, const PlanePoint& q) {
  if (p == q) return Order::Equal;
  if (p.a <= q.a && p.b <= q.b) return Order::Less;
  if (p.a >= q.a && p.b >= q.b) return Order::Greater;
  return Order::Incomparable;
}

Box enclosing_box(const std::vector<Rational>& values) {
  if (values.empty()) throw Error(ErrorKind::InvalidInput, "enclosing_box of no values");
  auto [lo, hi] = std::minmax_element(values.begin(), values.end());
  Rational range = *hi - *lo;
  Rational margin = range > 0 ? Rational(range / 16) : Rational(1);
  return {*lo - margin, *hi + margin};
}

int orient2d(const PlanePoint& p, const PlanePoint& q, const PlanePoint& r) {
  Rational d = (q.a - p.a) * (r.b - p.b) - (q.b - p.b) * (r.a - p.a);
  return sgn(d);
}

}  // namespace pareto
