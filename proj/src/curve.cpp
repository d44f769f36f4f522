#include "pareto/curve.hpp"

#include <algorithm>
#include <sstream>

#include "pareto/error.hpp"

namespace pareto {

MonotoneCurve::MonotoneCurve(std::vector<PlanePoint> vertices) : vertices_(std::move(vertices)) {
  if (vertices_.size() < 2) throw Error(ErrorKind::InvalidInput, "curve needs at least two vertices");
  for (std::size_t i = 0; i + 1 < vertices_.size(); ++i) {
    if (!strictly_precedes(vertices_[i], vertices_[i + 1])) {
      std::ostringstream os;
      os << "curve vertices " << i << " and " << i + 1 << " are not strictly increasing: " << vertices_[i]
         << " -> " << vertices_[i + 1];
      throw Error(ErrorKind::InvalidInput, os.str());
    }
  }
}

namespace {

// Index i of the leg [v_i, v_{i+1}] whose key range contains value.
template <class Key>
std::size_t find_leg(const std::vector<PlanePoint>& v, const Rational& value, Key key) {
  if (value < key(v.front()) || value > key(v.back()))
    throw Error(ErrorKind::OutOfDomain, "value " + to_string(value) + " outside curve range");
  auto it = std::lower_bound(v.begin(), v.end(), value,
                             [&](const PlanePoint& p, const Rational& x) { return key(p) < x; });
  std::size_t j = static_cast<std::size_t>(it - v.begin());
  return j == 0 ? 0 : j - 1;
}

PlanePoint lerp(const PlanePoint& p, const PlanePoint& q, const Rational& s) {
  return {p.a + s * (q.a - p.a), p.b + s * (q.b - p.b)};
}

}  // namespace

PlanePoint MonotoneCurve::eval(const Rational& t) const {
  auto h = [](const PlanePoint& p) { return natural_height(p); };
  std::size_t i = find_leg(vertices_, t, h);
  const PlanePoint& p = vertices_[i];
  const PlanePoint& q = vertices_[i + 1];
  Rational s = (t - h(p)) / (h(q) - h(p));
  return lerp(p, q, s);
}

Rational MonotoneCurve::height_at_f(const Rational& a) const { return natural_height({a, g_at_f(a)}); }

Rational MonotoneCurve::height_at_g(const Rational& b) const { return natural_height({f_at_g(b), b}); }

Rational MonotoneCurve::g_at_f(const Rational& a) const {
  std::size_t i = find_leg(vertices_, a, [](const PlanePoint& p) { return p.a; });
  const PlanePoint& p = vertices_[i];
  const PlanePoint& q = vertices_[i + 1];
  return p.b + (a - p.a) * (q.b - p.b) / (q.a - p.a);
}

Rational MonotoneCurve::f_at_g(const Rational& b) const {
  std::size_t i = find_leg(vertices_, b, [](const PlanePoint& p) { return p.b; });
  const PlanePoint& p = vertices_[i];
  const PlanePoint& q = vertices_[i + 1];
  return p.a + (b - p.b) * (q.a - p.a) / (q.b - p.b);
}

Rational MonotoneCurve::x_at(const Rational& t) const {
  PlanePoint p = eval(t);
  return p.b - p.a;
}

bool MonotoneCurve::passes_through(const PlanePoint& p) const {
  if (p.a < vertices_.front().a || p.a > vertices_.back().a) return false;
  return g_at_f(p.a) == p.b;
}

MonotoneCurve straight_curve(const PlanePoint& p, const PlanePoint& q) { return MonotoneCurve({p, q}); }

std::vector<CurveHit> segment_curve_intersections(const MonotoneCurve& curve,
                                                  std::span<const PlanePoint> polyline) {
  std::vector<CurveHit> hits;
  const auto& cv = curve.vertices();
  for (std::size_t j = 0; j + 1 < polyline.size(); ++j) {
    const PlanePoint& q0 = polyline[j];
    const PlanePoint& q1 = polyline[j + 1];
    Rational ea = q1.a - q0.a, eb = q1.b - q0.b;
    if (ea == 0 && eb == 0) continue;
    for (std::size_t i = 0; i + 1 < cv.size(); ++i) {
      const PlanePoint& p0 = cv[i];
      const PlanePoint& p1 = cv[i + 1];
      // Cheap rejection on bounding boxes.
      if (max(q0.a, q1.a) < p0.a || min(q0.a, q1.a) > p1.a) continue;
      if (max(q0.b, q1.b) < p0.b || min(q0.b, q1.b) > p1.b) continue;
      Rational da = p1.a - p0.a, db = p1.b - p0.b;
      Rational denom = da * eb - db * ea;
      Rational wa = q0.a - p0.a, wb = q0.b - p0.b;
      if (denom == 0) {
        // Parallel legs: only possible when the polyline leg has positive slope.
        if (wa * db - wb * da == 0)
          throw Error(ErrorKind::DegenerateContact, "polyline leg overlaps the curve");
        continue;
      }
      Rational s = (wa * eb - wb * ea) / denom;
      Rational u = (wa * db - wb * da) / denom;
      if (s < 0 || s > 1 || u < 0 || u > 1) continue;
      PlanePoint hit = lerp(p0, p1, s);
      hits.push_back({natural_height(hit), hit});
    }
  }
  std::sort(hits.begin(), hits.end(), [](const CurveHit& x, const CurveHit& y) { return x.t < y.t; });
  hits.erase(std::unique(hits.begin(), hits.end(), [](const CurveHit& x, const CurveHit& y) { return x.t == y.t; }),
             hits.end());
  return hits;
}

}  // namespace pareto
