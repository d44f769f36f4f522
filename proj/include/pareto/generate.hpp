#ifndef PARETO_GENERATE_HPP
#define PARETO_GENERATE_HPP

#include <array>
#include <cstdint>
#include <string>
#include <vector>

#include "pareto/bicomplex.hpp"
#include "pareto/grid.hpp"

namespace pareto {

/// Mesh with two vertex fields. `coords` is optional and only used for
/// pictures; `triangles` describes a surface, `simplices` any other complex.
struct MeshDocument {
  std::vector<std::array<double, 3>> coords;
  std::vector<Rational> f;
  std::vector<Rational> g;
  std::vector<std::array<int, 3>> triangles;
  std::vector<Simplex> simplices;

  bool is_surface() const { return simplices.empty(); }
  friend bool operator==(const MeshDocument&, const MeshDocument&) = default;
};

BifilteredComplex to_complex(const MeshDocument& mesh);
SurfaceComplex to_surface(const MeshDocument& mesh);

enum class SurfaceKind { Sphere, Torus, Bean, RandomMorse };

SurfaceKind parse_surface_kind(const std::string& name);
std::string to_string(SurfaceKind kind);
int default_resolution(SurfaceKind kind);

/// Deterministic in (kind, resolution, seed). The fields are two linear
/// projections of an embedding plus a small seeded perturbation, rounded to
/// multiples of 2^-32. Throws InvalidInput for resolution < 3 and
/// GenericityUnreachable when no retry yields a valid Pareto grid.
MeshDocument generate_surface(SurfaceKind kind, int resolution, std::uint64_t seed);

/// Octahedron with each face split into res^2 triangles, pushed to the unit
/// sphere.
void octahedral_sphere(int res, std::vector<std::array<double, 3>>& coords,
                       std::vector<std::array<int, 3>>& triangles);

/// Tunable shape of the bean: the sphere is stretched along x, bent by
/// y += bend * x^2 and viewed along angles (theta, phi).
struct BeanShape {
  double stretch = 1.6;
  double bend = 0.8;
  double theta = 1.5;
  double phi = 2.4;
};
MeshDocument bean_surface(int resolution, std::uint64_t seed, const BeanShape& shape);

}  // namespace pareto

#endif  // PARETO_GENERATE_HPP
