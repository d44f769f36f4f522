#ifndef PARETO_CUBING_HPP
#define PARETO_CUBING_HPP

#include <array>
#include <cstdint>
#include <optional>
#include <utility>
#include <vector>

#include "pareto/curves.hpp"

namespace pareto {

/// Obstacle locations inside a box. Throws GenericityViolation when two
/// share an a-coordinate, a b-coordinate or a natural height, and
/// OutOfDomain when one is not strictly inside the box. At most 64.
struct ObstaclePoset {
  ObstaclePoset() = default;
  ObstaclePoset(std::vector<PlanePoint> obstacles, Box box);

  std::vector<PlanePoint> obstacles;
  Box box;
};

/// Random poset of n obstacles with coordinates k/2^20 inside the box.
ObstaclePoset random_poset(int n, const Box& box, Rng& rng);

/// Cube of the obstacle complex. Its vertices are the components reached from
/// `top` by dropping any subset of `directions` from the set of obstacles the
/// curves pass above. `directions` is a subset of the top vertex's marker.
struct Cube {
  int top = 0;
  Chain directions;
  int dim() const { return static_cast<int>(directions.size()); }

  friend bool operator==(const Cube&, const Cube&) = default;
};

struct Cubing {
  /// Markers of the components, in enumerate_chains order.
  std::vector<Chain> vertices;
  /// Bitmask of the obstacles passed above, per vertex.
  std::vector<std::uint64_t> above;
  /// Sorted by dimension, then top vertex, then directions.
  std::vector<Cube> cubes;
  /// Edge length in the direction of each obstacle; empty until assigned.
  std::vector<Rational> edge_length;

  int vertex_of(const Chain& marker) const;
  int vertex_of_above(std::uint64_t above) const;
  /// Vertex ids of a cube, sorted.
  std::vector<int> cube_vertices(const Cube& c) const;
  std::size_t count(int dim) const;

  friend bool operator==(const Cubing&, const Cubing&) = default;
};

/// The complex dual to the stratification of increasing curves by the
/// obstacles they pass through.
Cubing build_cubing(const ObstaclePoset& P);

/// Every face of every cube is a cube.
bool face_closed(const Cubing& C);

/// Vertex and three directions whose edges pairwise span squares but no
/// 3-cube.
struct GromovWitness {
  int vertex = 0;
  std::array<int, 3> directions{};
};

/// Checks the link condition on the stored cubes; nullopt when it holds.
std::optional<GromovWitness> gromov_check(const Cubing& C);

int euler_characteristic(const Cubing& C);

/// Length of the edges in direction o: the smallest min(|da|, |db|) over the
/// obstacles comparable to o, or o's distance to the box when none is.
Cubing edge_lengths(Cubing C, const ObstaclePoset& P);

/// Vertex of the component containing the curve (its marker).
int locate_component(const Cubing& C, const ObstaclePoset& P, const MonotoneCurve& c);

/// Two curves identical away from obstacle o, on either side of it: the lower
/// one in the edge's bottom component, the upper one in its top component.
/// `eps` bounds how far from o they separate; it is halved until both curves
/// land in their components (EpsilonTooLarge after 40 halvings).
std::pair<MonotoneCurve, MonotoneCurve> edge_crossing_curves(const Cubing& C, const ObstaclePoset& P,
                                                             const Cube& edge, const Rational& eps);

}  // namespace pareto

#endif  // PARETO_CUBING_HPP
