#include "pareto/generate.hpp"

#include <cmath>
#include <map>

#include "pareto/error.hpp"
#include "pareto/random.hpp"

namespace pareto {

namespace {

using Vec3 = std::array<double, 3>;

double dot(const Vec3& x, const Vec3& y) { return x[0] * y[0] + x[1] * y[1] + x[2] * y[2]; }

Vec3 normalized(const Vec3& x) {
  double n = std::sqrt(dot(x, x));
  return {x[0] / n, x[1] / n, x[2] / n};
}

constexpr int kFieldBits = 32;
constexpr double kNoise = 1e-7;
constexpr int kAttempts = 16;

void project(MeshDocument& mesh, const Vec3& d1, const Vec3& d2, Rng& rng) {
  mesh.f.clear();
  mesh.g.clear();
  for (const auto& p : mesh.coords) {
    double nf = kNoise * (2 * rng.uniform() - 1);
    double ng = kNoise * (2 * rng.uniform() - 1);
    mesh.f.push_back(quantize(dot(p, d1) + nf, kFieldBits));
    mesh.g.push_back(quantize(dot(p, d2) + ng, kFieldBits));
  }
}

// Everything short of the homology probes: genericity, manifold checks,
// Morse vertices and a clean split of the change locus.
bool acceptable(const MeshDocument& mesh) {
  try {
    SurfaceComplex S = to_surface(mesh);
    critical_vertices(S.complex(), Field::F);
    critical_vertices(S.complex(), Field::G);
    Box box = enclosing_box(S.complex().all_values());
    split_segments(change_locus(S, box), box);
    return true;
  } catch (const Error&) {
    return false;
  }
}

std::uint64_t attempt_seed(std::uint64_t seed, int attempt) {
  return seed + static_cast<std::uint64_t>(attempt) * 0x9E3779B97F4A7C15ull;
}

template <class Build>
MeshDocument with_retries(const char* what, std::uint64_t seed, Build build) {
  for (int attempt = 0; attempt < kAttempts; ++attempt) {
    Rng rng(attempt_seed(seed, attempt));
    MeshDocument mesh = build(rng);
    if (acceptable(mesh)) return mesh;
  }
  throw Error(ErrorKind::GenericityUnreachable,
              std::string(what) + ": no generic fields after " + std::to_string(kAttempts) + " attempts");
}

void torus_mesh(int n, double R, double r, MeshDocument& mesh) {
  const double two_pi = 2 * std::acos(-1.0);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) {
      double u = two_pi * i / n, v = two_pi * j / n;
      mesh.coords.push_back({(R + r * std::cos(v)) * std::cos(u), (R + r * std::cos(v)) * std::sin(u), r * std::sin(v)});
    }
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) {
      int a = i * n + j, b = ((i + 1) % n) * n + j, c = ((i + 1) % n) * n + (j + 1) % n, d = i * n + (j + 1) % n;
      mesh.triangles.push_back({a, b, c});
      mesh.triangles.push_back({a, c, d});
    }
}

}  // namespace

BifilteredComplex to_complex(const MeshDocument& mesh) {
  if (mesh.f.size() != mesh.g.size()) throw Error(ErrorKind::InvalidInput, "f and g have different lengths");
  if (!mesh.coords.empty() && mesh.coords.size() != mesh.f.size())
    throw Error(ErrorKind::InvalidInput, "coordinate count differs from the vertex count");
  std::vector<Simplex> tops = mesh.simplices;
  for (const auto& t : mesh.triangles) tops.push_back({t[0], t[1], t[2]});
  for (const auto& s : tops)
    for (int v : s)
      if (v < 0 || v >= static_cast<int>(mesh.f.size())) throw Error(ErrorKind::InvalidInput, "vertex index out of range");
  return BifilteredComplex::from_top_simplices(mesh.f, mesh.g, tops);
}

SurfaceComplex to_surface(const MeshDocument& mesh) {
  if (!mesh.is_surface()) throw Error(ErrorKind::NotManifold, "mesh lists general simplices, not triangles");
  return SurfaceComplex(to_complex(mesh));
}

SurfaceKind parse_surface_kind(const std::string& name) {
  if (name == "sphere") return SurfaceKind::Sphere;
  if (name == "torus") return SurfaceKind::Torus;
  if (name == "bean") return SurfaceKind::Bean;
  if (name == "random_morse") return SurfaceKind::RandomMorse;
  throw Error(ErrorKind::InvalidInput, "unknown surface kind '" + name + "'");
}

std::string to_string(SurfaceKind kind) {
  switch (kind) {
    case SurfaceKind::Sphere: return "sphere";
    case SurfaceKind::Torus: return "torus";
    case SurfaceKind::Bean: return "bean";
    case SurfaceKind::RandomMorse: return "random_morse";
  }
  return "?";
}

int default_resolution(SurfaceKind kind) {
  switch (kind) {
    case SurfaceKind::Sphere: return 4;
    case SurfaceKind::Torus: return 8;
    case SurfaceKind::Bean: return 12;
    case SurfaceKind::RandomMorse: return 6;
  }
  return 4;
}

void octahedral_sphere(int res, std::vector<Vec3>& coords, std::vector<std::array<int, 3>>& triangles) {
  static const Vec3 corners[6] = {{1, 0, 0}, {-1, 0, 0}, {0, 1, 0}, {0, -1, 0}, {0, 0, 1}, {0, 0, -1}};
  static const int faces[8][3] = {{0, 2, 4}, {2, 1, 4}, {1, 3, 4}, {3, 0, 4}, {2, 0, 5}, {1, 2, 5}, {3, 1, 5}, {0, 3, 5}};
  std::map<std::array<long long, 3>, int> ids;
  auto vid = [&](const Vec3& p) {
    Vec3 q = normalized(p);
    std::array<long long, 3> key;
    for (int k = 0; k < 3; ++k) key[static_cast<std::size_t>(k)] = std::llround(q[static_cast<std::size_t>(k)] * 1e9);
    auto [it, fresh] = ids.try_emplace(key, static_cast<int>(coords.size()));
    if (fresh) coords.push_back(q);
    return it->second;
  };
  for (const auto& face : faces) {
    const Vec3& A = corners[face[0]];
    const Vec3& B = corners[face[1]];
    const Vec3& C = corners[face[2]];
    std::map<std::pair<int, int>, int> idx;
    for (int i = 0; i <= res; ++i)
      for (int j = 0; i + j <= res; ++j) {
        Vec3 p;
        for (std::size_t k = 0; k < 3; ++k) p[k] = (A[k] * (res - i - j) + B[k] * i + C[k] * j) / res;
        idx[{i, j}] = vid(p);
      }
    for (int i = 0; i < res; ++i)
      for (int j = 0; i + j < res; ++j) {
        triangles.push_back({idx[{i, j}], idx[{i + 1, j}], idx[{i, j + 1}]});
        if (i + j + 1 < res) triangles.push_back({idx[{i + 1, j}], idx[{i + 1, j + 1}], idx[{i, j + 1}]});
      }
  }
}

MeshDocument bean_surface(int resolution, std::uint64_t seed, const BeanShape& shape) {
  return with_retries("bean", seed, [&](Rng& rng) {
    MeshDocument mesh;
    octahedral_sphere(resolution, mesh.coords, mesh.triangles);
    for (auto& p : mesh.coords) {
      p[0] *= shape.stretch;
      p[1] += shape.bend * p[0] * p[0];
    }
    Vec3 e1{1, 0, 0}, e2{0, std::cos(shape.theta), std::sin(shape.theta)};
    Vec3 d1, d2;
    for (std::size_t k = 0; k < 3; ++k) {
      d1[k] = std::cos(shape.phi) * e1[k] + std::sin(shape.phi) * e2[k];
      d2[k] = -std::sin(shape.phi) * e1[k] + std::cos(shape.phi) * e2[k];
    }
    project(mesh, d1, d2, rng);
    return mesh;
  });
}

MeshDocument generate_surface(SurfaceKind kind, int resolution, std::uint64_t seed) {
  if (resolution < 3) throw Error(ErrorKind::InvalidInput, "resolution must be at least 3");
  switch (kind) {
    case SurfaceKind::Sphere:
      return with_retries("sphere", seed, [&](Rng& rng) {
        MeshDocument mesh;
        octahedral_sphere(resolution, mesh.coords, mesh.triangles);
        project(mesh, {0.9, 0.3, 0.2}, {0.25, 0.85, -0.3}, rng);
        return mesh;
      });
    case SurfaceKind::Torus:
      return with_retries("torus", seed, [&](Rng& rng) {
        MeshDocument mesh;
        torus_mesh(resolution, 2.0, 0.8, mesh);
        project(mesh, {1, 0.12, 0.07}, {0.1, 1, -0.06}, rng);
        return mesh;
      });
    case SurfaceKind::Bean:
      return bean_surface(resolution, seed, BeanShape{});
    case SurfaceKind::RandomMorse:
      return with_retries("random_morse", seed, [&](Rng& rng) {
        MeshDocument mesh;
        octahedral_sphere(resolution, mesh.coords, mesh.triangles);
        std::vector<std::pair<Vec3, double>> bumps;
        for (int k = 0; k < 4; ++k) {
          Vec3 c{2 * rng.uniform() - 1, 2 * rng.uniform() - 1, 2 * rng.uniform() - 1};
          bumps.emplace_back(normalized(c), 0.5 * rng.uniform() - 0.25);
        }
        for (auto& p : mesh.coords) {
          double s = 1;
          for (const auto& [c, amp] : bumps) {
            Vec3 d{p[0] - c[0], p[1] - c[1], p[2] - c[2]};
            s += amp * std::exp(-dot(d, d) / 0.36);
          }
          for (double& x : p) x *= s;
        }
        Vec3 d1 = normalized({2 * rng.uniform() - 1, 2 * rng.uniform() - 1, 2 * rng.uniform() - 1});
        Vec3 d2 = normalized({2 * rng.uniform() - 1, 2 * rng.uniform() - 1, 2 * rng.uniform() - 1});
        project(mesh, d1, d2, rng);
        return mesh;
      });
  }
  throw Error(ErrorKind::InvalidInput, "unknown surface kind");
}

}  // namespace pareto
