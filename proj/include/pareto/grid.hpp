#ifndef PARETO_GRID_HPP
#define PARETO_GRID_HPP

#include <array>
#include <optional>
#include <vector>

#include "pareto/bicomplex.hpp"
#include "pareto/plane.hpp"
#include "pareto/random.hpp"

namespace pareto {

/// Bifiltered closed triangulated surface with cyclic vertex links.
class SurfaceComplex {
public:
  /// Throws NotManifold unless every edge lies in exactly two triangles and
  /// every vertex link is one cycle; DegenerateTriangle when an image triangle
  /// in the (f, g)-plane has zero area.
  explicit SurfaceComplex(BifilteredComplex K);

  const BifilteredComplex& complex() const { return K_; }
  std::size_t num_vertices() const { return K_.num_vertices(); }
  const std::vector<std::array<int, 3>>& triangles() const { return triangles_; }
  /// Edges (u < v) with the two opposite vertices of their triangles.
  struct EdgeStar {
    int u, v, w1, w2;
  };
  const std::vector<EdgeStar>& edges() const { return edges_; }
  /// Neighbours of v in cyclic order around v.
  const std::vector<int>& link_cycle(int v) const { return links_[static_cast<std::size_t>(v)]; }
  PlanePoint image(int v) const { return {K_.f(v), K_.g(v)}; }

private:
  BifilteredComplex K_;
  std::vector<std::array<int, 3>> triangles_;
  std::vector<EdgeStar> edges_;
  std::vector<std::vector<int>> links_;
};

/// Edges whose two incident triangles fold over each other in the image:
/// both opposite vertices map to the same side of the edge's image line.
/// Throws DegenerateTriangle on a zero-area image triangle.
std::vector<std::array<int, 2>> fold_edges(const SurfaceComplex& S);

/// Same test on any triangulated patch; only edges in exactly two triangles
/// are considered.
std::vector<std::array<int, 2>> fold_edges(const BifilteredComplex& K);

struct ParetoChain {
  std::vector<int> vertices;       // along increasing f
  std::vector<PlanePoint> points;  // images of the vertices
};

/// Maximal chains of fold edges with negative image slope. Chains break where
/// the fold set branches or where the image direction reverses.
std::vector<ParetoChain> pareto_chains(const SurfaceComplex& S, const std::vector<std::array<int, 2>>& folds);

enum class Field { F, G };

struct CriticalVertex {
  int vertex;
  int index;
};

/// Vertices whose lower link has nontrivial reduced homology. Throws
/// NonMorseVertex when the lower link is not a homology sphere or acyclic.
std::vector<CriticalVertex> critical_vertices(const BifilteredComplex& K, Field field);

enum class SegmentKind { Pareto, VerticalRay, HorizontalRay };

struct GridSegment {
  int id = -1;
  SegmentKind kind = SegmentKind::Pareto;
  /// Pareto: from the upper-left end to the lower-right end, legs
  /// axis-parallel with weakly negative slope. Rays: from the origin toward
  /// the box edge.
  std::vector<PlanePoint> points;
  /// Set by assign_index.
  std::optional<int> index;
  /// Dimension of the cell attached when the segment is crossed, read off the
  /// link of the vertex whose value line carries the segment.
  int link_index = -1;

  friend bool operator==(const GridSegment&, const GridSegment&) = default;
};

/// Vertical ray from every f-critical vertex and horizontal ray from every
/// g-critical vertex, clipped at the box edge, carrying the vertex index.
std::vector<GridSegment> extension_rays(const BifilteredComplex& K, const std::vector<CriticalVertex>& crit_f,
                                        const std::vector<CriticalVertex>& crit_g, const Box& box);

/// One maximal interval of a vertex value line along which crossing the line
/// changes the slice homology. Vertical pieces lie on a = f(vertex) with b in
/// [lo, hi]; horizontal pieces on b = g(vertex) with a in [lo, hi].
struct LocusPiece {
  bool vertical = true;
  int vertex = -1;
  Rational fixed;
  Rational lo;
  Rational hi;
  int index = -1;
};

/// Exact locus in the box where slices of the surface change homology. Throws
/// AttachLawViolation when some crossing would attach more than one cell.
std::vector<LocusPiece> change_locus(const SurfaceComplex& S, const Box& box);

enum class Direction { Up = 0, Down = 1, Left = 2, Right = 3 };

/// Segment endpoint with the incident segment in each axis direction.
struct GridNode {
  PlanePoint point;
  std::array<int, 4> segment{-1, -1, -1, -1};

  int at(Direction d) const { return segment[static_cast<std::size_t>(d)]; }
  int degree() const;
  friend bool operator==(const GridNode&, const GridNode&) = default;
};

enum class ObstacleKind { Cusp, Pseudocusp };

struct Obstacle {
  PlanePoint location;
  ObstacleKind kind = ObstacleKind::Cusp;
  int lower = -1;
  int upper = -1;

  friend bool operator==(const Obstacle&, const Obstacle&) = default;
};

struct DoublePoint {
  PlanePoint point;
  int up = -1, down = -1, left = -1, right = -1;

  friend bool operator==(const DoublePoint&, const DoublePoint&) = default;
};

/// Point where an extension ray continues a Pareto segment with the same
/// index. Vertical joins continue upward, horizontal joins to the right.
struct SmoothJoin {
  PlanePoint point;
  bool vertical = true;
  int pareto = -1;
  int ray = -1;

  friend bool operator==(const SmoothJoin&, const SmoothJoin&) = default;
};

struct ParetoGrid {
  Box box;
  std::vector<GridSegment> segments;
  std::vector<GridNode> nodes;  // sorted by point
  std::vector<Obstacle> obstacles;
  std::vector<DoublePoint> double_points;
  std::vector<SmoothJoin> joins;

  const GridNode* node_at(const PlanePoint& p) const;
  bool is_ray(int segment) const { return segments[static_cast<std::size_t>(segment)].kind != SegmentKind::Pareto; }
  int index_of(int segment) const;

  friend bool operator==(const ParetoGrid& x, const ParetoGrid& y) {
    return x.box.lo == y.box.lo && x.box.hi == y.box.hi && x.segments == y.segments && x.nodes == y.nodes &&
           x.obstacles == y.obstacles && x.double_points == y.double_points && x.joins == y.joins;
  }
};

/// Splits the locus into segments at double points, index changes, reversal
/// corners and ray/Pareto junctions. Throws GenericityViolation on
/// overlapping pieces or T-junctions.
ParetoGrid split_segments(const std::vector<LocusPiece>& pieces, const Box& box);

/// Straddling probe pair around one point of a segment.
struct Probe {
  PlanePoint lower;
  PlanePoint upper;
  std::vector<int> betti_lower;
  std::vector<int> betti_upper;
  std::optional<int> index;  // nullopt when the attach law fails
};

/// At least three probe pairs along the segment, each offset by the exact
/// clearance to every other vertex value line.
std::vector<Probe> probe_segment(const ParetoGrid& G, const BifilteredComplex& K, int segment);

/// Attached cell dimension implied by two Betti vectors, or nullopt when
/// they do not differ in exactly one entry by exactly one.
std::optional<int> attach_index(const std::vector<int>& before, const std::vector<int>& after);

/// Sets every segment index from homology probes. Throws AttachLawViolation
/// or IndexInconsistent with the offending segment in the message.
void assign_index(ParetoGrid& G, const BifilteredComplex& K, int threads = 1);

/// Fills obstacles and smooth joins from the indexed segments. Throws
/// IndexJumpViolation when adjacent segments differ by more than one.
void detect_obstacles(ParetoGrid& G);

/// The whole pipeline on a surface.
ParetoGrid build_grid(const SurfaceComplex& S, int threads = 1);

/// Point location in the complement of the grid inside the box.
class ComplementLocator {
public:
  explicit ComplementLocator(const ParetoGrid& G);

  /// Throws OnGrid when p lies on a segment, OutOfDomain outside the box.
  int component(const PlanePoint& p) const;
  int num_components() const { return num_components_; }
  /// Random point strictly inside a random cell of the component.
  PlanePoint sample(int component, Rng& rng) const;

private:
  std::vector<Rational> xs_, ys_;
  std::vector<char> vblock_, hblock_;  // vblock_[i*ny+j]: line x_i blocks cell row j
  std::vector<int> cell_component_;
  std::vector<std::vector<int>> component_cells_;
  int num_components_ = 0;
  std::size_t nx_ = 0, ny_ = 0;
};

int complement_component(const ParetoGrid& G, const PlanePoint& p);

}  // namespace pareto

#endif  // PARETO_GRID_HPP
