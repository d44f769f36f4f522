#ifndef PARETO_CURVES_HPP
#define PARETO_CURVES_HPP

#include <optional>
#include <vector>

#include "pareto/bicomplex.hpp"
#include "pareto/curve.hpp"
#include "pareto/grid.hpp"
#include "pareto/random.hpp"

namespace pareto {

/// Crossing of a curve with a grid segment.
struct HitEvent {
  Rational t;
  PlanePoint point;
  int segment = -1;
  int index = -1;

  friend bool operator==(const HitEvent&, const HitEvent&) = default;
};

/// All crossings sorted by natural height. Throws ObstacleHit or
/// DoublePointHit when the curve passes exactly through one, and
/// DegenerateContact when it passes through any other segment endpoint.
std::vector<HitEvent> crossings(const MonotoneCurve& c, const ParetoGrid& G);

struct LabeledBar {
  int dim = 0;
  HitEvent birth;
  std::optional<HitEvent> death;  // nullopt: alive at the top of the box

  friend bool operator==(const LabeledBar&, const LabeledBar&) = default;
};

struct LabeledDiagram {
  std::vector<LabeledBar> bars;
  friend bool operator==(const LabeledDiagram&, const LabeledDiagram&) = default;
};

/// Persistence of the curve filtration (cut at the curve's end when the curve
/// stops before the whole complex has entered) with every bar endpoint matched to the
/// crossing at its height. Throws UnmatchedEndpoint when a bar endpoint has
/// no crossing or a crossing carries no endpoint, IndexInconsistent when a
/// dim-k bar is not born on an index-k segment and killed on an index-(k+1)
/// segment.
LabeledDiagram labeled_diagram(const BifilteredComplex& K, const MonotoneCurve& c, const ParetoGrid& G);

/// Obstacles as a chain: indices into a list of obstacle locations, sorted by
/// natural height (equivalently by the product order).
using Chain = std::vector<int>;

/// Obstacles the curve passes above: its g-value over a_o exceeds b_o.
/// Throws ObstacleHit when the curve passes through an obstacle.
std::vector<int> above_set(const MonotoneCurve& c, const std::vector<PlanePoint>& obstacles);

/// Bend points of the infimum of the curve's component: the above-set
/// obstacles with no other above-set obstacle to their upper left.
Chain marker_of(const MonotoneCurve& c, const std::vector<PlanePoint>& obstacles);

/// Piecewise-linear function x(t) in the rotated chart.
struct RotatedGraph {
  std::vector<Rational> t;
  std::vector<Rational> x;

  Rational eval(const Rational& s) const;
  MonotoneCurve to_curve() const;
};

RotatedGraph pointwise_max(const RotatedGraph& f, const RotatedGraph& g);
RotatedGraph pointwise_min(const RotatedGraph& f, const RotatedGraph& g);
RotatedGraph to_graph(const MonotoneCurve& c);

/// Explicit lower and upper curves of the component with the given marker,
/// built with tents of slope 1 - eps around the obstacles. Every curve whose
/// rotated graph lies between them has this marker.
struct ComponentBand {
  Chain chain;
  Rational eps;
  RotatedGraph lower;
  RotatedGraph upper;
};

/// Throws InvalidInput when the obstacles in `chain` are not pairwise
/// comparable, EpsilonTooLarge when no eps in the halving schedule works.
ComponentBand component_band(const Chain& chain, const std::vector<PlanePoint>& obstacles, const Box& box,
                             Rational eps = Rational(1, 8), int halvings = 40);

/// The lower curve of the band: max of the box-bottom envelope and the tents
/// x_k + eps - (1 - eps)|t - t_k| over the chain.
MonotoneCurve realize_chain(const Chain& chain, const std::vector<PlanePoint>& obstacles, const Box& box,
                            Rational eps = Rational(1, 8), int halvings = 40);

/// Random Lipschitz curve clamped into the band.
MonotoneCurve random_curve_in(const ComponentBand& band, Rng& rng);

/// Clamps a curve into the band.
MonotoneCurve clamp_to_band(const MonotoneCurve& c, const ComponentBand& band);

/// Every chain of the obstacle set, including the empty one, sorted by size
/// and then lexicographically.
std::vector<Chain> enumerate_chains(const std::vector<PlanePoint>& obstacles);

std::vector<PlanePoint> obstacle_locations(const ParetoGrid& G);

/// How segments are glued into branches at a double point.
enum class Gluing { Straight, Kiss };

struct AugmentedPairing {
  /// Parallel to G.double_points.
  std::vector<Gluing> gluing;
  /// Branch id of each segment: the smallest segment id in its class.
  std::vector<int> branch;
};

/// Branches for fixed gluings: segments are joined through every degree-2
/// node that is not a reversal corner, and through double points as glued.
std::vector<int> branches(const ParetoGrid& G, const std::vector<Gluing>& gluing);

/// Decides each same-index double point from two probe curves of the
/// component, one on each side. Mixed-index double points stay straight.
/// Throws LabelMismatch when neither gluing matches the probe diagrams.
AugmentedPairing augment_at_double_points(const BifilteredComplex& K, const ParetoGrid& G, const Chain& component);

struct BarLabel {
  int dim;
  int birth;
  int death;  // -1 for an essential bar

  auto operator<=>(const BarLabel&) const = default;
};

std::vector<BarLabel> bar_labels(const LabeledDiagram& d, const AugmentedPairing& pairing);

/// Bijection d1 -> d2 matching bars by label; within one label, by order of
/// birth height. Throws LabelMismatch when the label multisets differ.
std::vector<int> identify(const LabeledDiagram& d1, const LabeledDiagram& d2, const AugmentedPairing& pairing);

/// Probe curve past p: lower box corner, p - (r, r), then p + (-r/2, r/2)
/// when `above` (p + (r/2, -r/2) otherwise), p + (r, r), upper box corner.
MonotoneCurve detour_curve(const Box& box, const PlanePoint& p, const Rational& r, bool above);

/// Half the smallest positive distance from p to a vertex value line, capped
/// by the distance to the box edge.
Rational clearance(const BifilteredComplex& K, const Box& box, const PlanePoint& p);

struct CrossingDelta {
  /// The curve that carries the extra bar: true for the one above the obstacle.
  bool extra_above = false;
  LabeledBar bar;
};

/// Compares the labeled diagrams of two curves passing below and above the
/// obstacle. Throws DeltaMismatch unless they differ by exactly one bar of
/// dimension index(lower) born and killed on the obstacle's two branches.
CrossingDelta obstacle_crossing_delta(const BifilteredComplex& K, const ParetoGrid& G, const Obstacle& o,
                                      const MonotoneCurve& c_low, const MonotoneCurve& c_high);

/// Curve between the box corners through c1 and then c2. Coordinates outside
/// the box are first moved inside, beyond the extreme vertex values. When c1
/// and c2 share a coordinate, c2 is nudged up-right within its slice cell.
MonotoneCurve curve_through(const BifilteredComplex& K, const PlanePoint& c1, const PlanePoint& c2);

/// Number of labeled dim-k bars alive over [height(c1), height(c2)] on a
/// curve through both points. When the curve meets a grid node, waypoints are
/// inserted on the outer legs (NoAvoidingCurve after 64 attempts). Throws
/// NotComparable unless c1 precedes c2.
int rank_via_curve(const BifilteredComplex& K, const ParetoGrid& G, const PlanePoint& c1, const PlanePoint& c2,
                   int k);

}  // namespace pareto

#endif  // PARETO_CURVES_HPP
