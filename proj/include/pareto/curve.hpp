#ifndef PARETO_CURVE_HPP
#define PARETO_CURVE_HPP

#include <span>
#include <vector>

#include "pareto/plane.hpp"

namespace pareto {

/// Strictly increasing polyline in the (f, g)-plane, parameterized by natural
/// height t = a + b. Consecutive vertices increase strictly in both
/// coordinates, so every coordinate is a strictly increasing function of t.
class MonotoneCurve {
public:
  MonotoneCurve() = default;
  /// Throws Error(InvalidInput) unless there are at least two vertices and
  /// they increase strictly in both coordinates.
  explicit MonotoneCurve(std::vector<PlanePoint> vertices);

  const std::vector<PlanePoint>& vertices() const { return vertices_; }
  Rational h_min() const { return natural_height(vertices_.front()); }
  Rational h_max() const { return natural_height(vertices_.back()); }
  const PlanePoint& front() const { return vertices_.front(); }
  const PlanePoint& back() const { return vertices_.back(); }

  /// Point at natural height t. Throws Error(OutOfDomain).
  PlanePoint eval(const Rational& t) const;

  /// Natural height at which the f-coordinate equals a. Throws OutOfDomain.
  Rational height_at_f(const Rational& a) const;
  /// Natural height at which the g-coordinate equals b. Throws OutOfDomain.
  Rational height_at_g(const Rational& b) const;
  /// g-coordinate of the curve above f = a. Throws OutOfDomain.
  Rational g_at_f(const Rational& a) const;
  /// f-coordinate of the curve at g = b. Throws OutOfDomain.
  Rational f_at_g(const Rational& b) const;

  /// x = b - a of the curve at natural height t (rotated chart).
  Rational x_at(const Rational& t) const;

  bool passes_through(const PlanePoint& p) const;

  friend bool operator==(const MonotoneCurve&, const MonotoneCurve&) = default;

private:
  std::vector<PlanePoint> vertices_;
};

/// Straight increasing segment from p to q (p strictly below q).
MonotoneCurve straight_curve(const PlanePoint& p, const PlanePoint& q);

/// Point on curve and its natural height.
struct CurveHit {
  Rational t;
  PlanePoint point;
};

/// Intersections of an increasing curve with a polyline whose legs are
/// axis-parallel or of strictly negative slope, sorted by t. Touching the
/// polyline at one of its corners counts once. Throws DegenerateContact when
/// a leg overlaps the curve along a sub-segment.
std::vector<CurveHit> segment_curve_intersections(const MonotoneCurve& curve,
                                                  std::span<const PlanePoint> polyline);

}  // namespace pareto

#endif  // PARETO_CURVE_HPP
