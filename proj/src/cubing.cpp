#include "pareto/cubing.hpp"

#include <algorithm>
#include <map>
#include <set>

#include "pareto/error.hpp"

namespace pareto {

namespace {

std::size_t at(int i) { return static_cast<std::size_t>(i); }

std::uint64_t bit(int o) { return std::uint64_t{1} << static_cast<unsigned>(o); }

// se[o]: obstacles strictly below-right of o. A curve above o is above them.
std::vector<std::uint64_t> below_right(const std::vector<PlanePoint>& obs) {
  std::vector<std::uint64_t> se(obs.size(), 0);
  for (std::size_t o = 0; o < obs.size(); ++o)
    for (std::size_t p = 0; p < obs.size(); ++p)
      if (obs[p].a > obs[o].a && obs[p].b < obs[o].b) se[o] |= bit(static_cast<int>(p));
  return se;
}

std::vector<int> sorted_ids(Chain c) {
  std::sort(c.begin(), c.end());
  return c;
}

}  // namespace

ObstaclePoset::ObstaclePoset(std::vector<PlanePoint> obs, Box b) : obstacles(std::move(obs)), box(std::move(b)) {
  if (obstacles.size() > 64) throw Error(ErrorKind::InvalidInput, "at most 64 obstacles are supported");
  for (std::size_t i = 0; i < obstacles.size(); ++i) {
    if (!box.interior(obstacles[i]))
      throw Error(ErrorKind::OutOfDomain, "obstacle " + std::to_string(i) + " is not inside the box");
    for (std::size_t j = 0; j < i; ++j) {
      const PlanePoint& p = obstacles[i];
      const PlanePoint& q = obstacles[j];
      if (p.a == q.a || p.b == q.b || natural_height(p) == natural_height(q))
        throw Error(ErrorKind::GenericityViolation,
                    "obstacles " + std::to_string(j) + " and " + std::to_string(i) + " are not in general position");
    }
  }
}

ObstaclePoset random_poset(int n, const Box& box, Rng& rng) {
  std::vector<PlanePoint> obs;
  while (static_cast<int>(obs.size()) < n) {
    const PlanePoint p{box.lo + (box.hi - box.lo) * rng.open_unit(), box.lo + (box.hi - box.lo) * rng.open_unit()};
    bool ok = true;
    for (const PlanePoint& q : obs)
      ok = ok && p.a != q.a && p.b != q.b && natural_height(p) != natural_height(q);
    if (ok) obs.push_back(p);
  }
  return ObstaclePoset(std::move(obs), box);
}

int Cubing::vertex_of(const Chain& marker) const {
  auto it = std::find(vertices.begin(), vertices.end(), marker);
  if (it == vertices.end()) throw Error(ErrorKind::InvalidInput, "not a vertex of the cubing");
  return static_cast<int>(it - vertices.begin());
}

int Cubing::vertex_of_above(std::uint64_t mask) const {
  auto it = std::find(above.begin(), above.end(), mask);
  if (it == above.end()) throw Error(ErrorKind::InvalidInput, "no component passes above exactly that set");
  return static_cast<int>(it - above.begin());
}

std::vector<int> Cubing::cube_vertices(const Cube& c) const {
  std::vector<int> out;
  const std::size_t k = c.directions.size();
  for (std::uint64_t t = 0; t < (std::uint64_t{1} << k); ++t) {
    std::uint64_t mask = above[at(c.top)];
    for (std::size_t i = 0; i < k; ++i)
      if (t & (std::uint64_t{1} << i)) mask &= ~bit(c.directions[i]);
    out.push_back(vertex_of_above(mask));
  }
  std::sort(out.begin(), out.end());
  return out;
}

std::size_t Cubing::count(int dim) const {
  return static_cast<std::size_t>(std::count_if(cubes.begin(), cubes.end(), [&](const Cube& c) { return c.dim() == dim; }));
}

Cubing build_cubing(const ObstaclePoset& P) {
  Cubing C;
  C.vertices = enumerate_chains(P.obstacles);
  const std::vector<std::uint64_t> se = below_right(P.obstacles);
  for (const Chain& L : C.vertices) {
    std::uint64_t mask = 0;
    for (int o : L) mask |= bit(o) | se[at(o)];
    C.above.push_back(mask);
  }
  for (std::size_t v = 0; v < C.vertices.size(); ++v) {
    const Chain& M = C.vertices[v];
    for (std::uint64_t s = 0; s < (std::uint64_t{1} << M.size()); ++s) {
      Cube cube{static_cast<int>(v), {}};
      for (std::size_t i = 0; i < M.size(); ++i)
        if (s & (std::uint64_t{1} << i)) cube.directions.push_back(M[i]);
      C.cubes.push_back(std::move(cube));
    }
  }
  std::stable_sort(C.cubes.begin(), C.cubes.end(), [](const Cube& x, const Cube& y) {
    if (x.dim() != y.dim()) return x.dim() < y.dim();
    if (x.top != y.top) return x.top < y.top;
    return x.directions < y.directions;
  });
  return C;
}

bool face_closed(const Cubing& C) {
  std::set<std::pair<int, std::vector<int>>> present;
  for (const Cube& c : C.cubes) present.insert({c.top, sorted_ids(c.directions)});
  for (const Cube& c : C.cubes) {
    const std::size_t k = c.directions.size();
    // Each direction is dropped (0), kept free (1) or fixed at the top (2).
    std::size_t total = 1;
    for (std::size_t i = 0; i < k; ++i) total *= 3;
    for (std::size_t code = 0; code < total; ++code) {
      std::uint64_t mask = C.above[at(c.top)];
      std::vector<int> free;
      std::size_t rest = code;
      for (std::size_t i = 0; i < k; ++i, rest /= 3) {
        if (rest % 3 == 0) mask &= ~bit(c.directions[i]);
        if (rest % 3 == 1) free.push_back(c.directions[i]);
      }
      auto it = std::find(C.above.begin(), C.above.end(), mask);
      if (it == C.above.end()) return false;
      if (!present.count({static_cast<int>(it - C.above.begin()), sorted_ids(free)})) return false;
    }
  }
  return true;
}

std::optional<GromovWitness> gromov_check(const Cubing& C) {
  // Cubes seen from each of their vertices, keyed by their direction sets.
  std::set<std::pair<int, std::vector<int>>> at_vertex;
  std::vector<std::set<int>> dirs(C.vertices.size());
  for (const Cube& c : C.cubes) {
    const std::vector<int> d = sorted_ids(c.directions);
    const std::size_t k = d.size();
    for (std::uint64_t t = 0; t < (std::uint64_t{1} << k); ++t) {
      std::uint64_t mask = C.above[at(c.top)];
      for (std::size_t i = 0; i < k; ++i)
        if (t & (std::uint64_t{1} << i)) mask &= ~bit(d[i]);
      const int v = C.vertex_of_above(mask);
      at_vertex.insert({v, d});
      if (k == 1) dirs[at(v)].insert(d[0]);
    }
  }
  for (std::size_t v = 0; v < C.vertices.size(); ++v) {
    const std::vector<int> e(dirs[v].begin(), dirs[v].end());
    const int vi = static_cast<int>(v);
    auto square = [&](int x, int y) { return at_vertex.count({vi, {std::min(x, y), std::max(x, y)}}) > 0; };
    for (std::size_t i = 0; i < e.size(); ++i)
      for (std::size_t j = i + 1; j < e.size(); ++j) {
        if (!square(e[i], e[j])) continue;
        for (std::size_t l = j + 1; l < e.size(); ++l)
          if (square(e[i], e[l]) && square(e[j], e[l]) && !at_vertex.count({vi, {e[i], e[j], e[l]}}))
            return GromovWitness{vi, {e[i], e[j], e[l]}};
      }
  }
  return std::nullopt;
}

int euler_characteristic(const Cubing& C) {
  int chi = 0;
  for (const Cube& c : C.cubes) chi += c.dim() % 2 == 0 ? 1 : -1;
  return chi;
}

Cubing edge_lengths(Cubing C, const ObstaclePoset& P) {
  const auto& obs = P.obstacles;
  C.edge_length.assign(obs.size(), Rational(0));
  for (std::size_t o = 0; o < obs.size(); ++o) {
    std::optional<Rational> best;
    for (std::size_t p = 0; p < obs.size(); ++p) {
      if (!strictly_precedes(obs[o], obs[p]) && !strictly_precedes(obs[p], obs[o])) continue;
      const Rational d = min(abs(Rational(obs[o].a - obs[p].a)), abs(Rational(obs[o].b - obs[p].b)));
      if (!best || d < *best) best = d;
    }
    if (!best) {
      best = min(min(Rational(obs[o].a - P.box.lo), Rational(P.box.hi - obs[o].a)),
                 min(Rational(obs[o].b - P.box.lo), Rational(P.box.hi - obs[o].b)));
    }
    C.edge_length[o] = *best;
  }
  return C;
}

int locate_component(const Cubing& C, const ObstaclePoset& P, const MonotoneCurve& c) {
  return C.vertex_of(marker_of(c, P.obstacles));
}

std::pair<MonotoneCurve, MonotoneCurve> edge_crossing_curves(const Cubing& C, const ObstaclePoset& P,
                                                             const Cube& edge, const Rational& eps) {
  if (edge.dim() != 1) throw Error(ErrorKind::InvalidInput, "not an edge");
  const int o = edge.directions[0];
  const int bottom = C.vertex_of_above(C.above[at(edge.top)] & ~bit(o));
  const RotatedPoint r = rotate45(P.obstacles[at(o)]);
  Rational e = eps;
  for (int attempt = 0; attempt < 40; ++attempt, e /= 2) {
    const ComponentBand band = component_band(C.vertices[at(edge.top)], P.obstacles, P.box, e);
    // Pull the upper curve down just under o with a V of the same slope.
    const Rational s = 1 - band.eps;
    const Rational ts = band.lower.t.front(), te = band.lower.t.back();
    RotatedGraph notch;
    notch.t = {ts, r.t, te};
    notch.x = {r.x - band.eps + s * (r.t - ts), r.x - band.eps, r.x - band.eps + s * (te - r.t)};
    MonotoneCurve high = band.lower.to_curve();
    MonotoneCurve low = pointwise_min(band.lower, notch).to_curve();
    if (marker_of(low, P.obstacles) == C.vertices[at(bottom)] && marker_of(high, P.obstacles) == C.vertices[at(edge.top)])
      return {std::move(low), std::move(high)};
  }
  throw Error(ErrorKind::EpsilonTooLarge, "edge curves leave their components");
}

}  // namespace pareto
