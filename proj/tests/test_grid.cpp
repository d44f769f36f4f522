#include <algorithm>
#include <map>
#include <set>

#include "doctest.h"
#include "fixtures.hpp"
#include "helpers.hpp"
#include "pareto/error.hpp"
#include "pareto/generate.hpp"
#include "pareto/grid.hpp"
#include "pareto/random.hpp"

using namespace pareto;
using testing::P;
using testing::Q;
using testing::kind_of;
using testing::surface;

namespace {

// Octahedron whose equator 0, 2, 1, 3 maps to a convex quadrilateral with
// both poles mapped inside it.
SurfaceComplex placed_octahedron() {
  std::vector<Rational> f{Q(0), Q(4), Q(3), Q(1), Q(5, 2), Q(3, 2)};
  std::vector<Rational> g{Q(2), Q(4), Q(0), Q(3), Q(11, 5), Q(13, 5)};
  return SurfaceComplex(BifilteredComplex::from_top_simplices(f, g, testing::octahedron_triangles()));
}

LocusPiece vpiece(long a, long lo, long hi, int index) { return {true, 0, Q(a), Q(lo), Q(hi), index}; }
LocusPiece hpiece(long b, long lo, long hi, int index) { return {false, 0, Q(b), Q(lo), Q(hi), index}; }

}  // namespace

TEST_CASE("surface validation") {
  CHECK_NOTHROW(placed_octahedron());
  auto single = BifilteredComplex::from_top_simplices({Q(0), Q(1), Q(5)}, {Q(0), Q(3), Q(1)}, {{0, 1, 2}});
  CHECK(kind_of([&] { SurfaceComplex s(single); }) == ErrorKind::NotManifold);
  // Images of vertices 0, 2, 4 are collinear.
  std::vector<Rational> f{Q(0), Q(4), Q(1), Q(7), Q(2), Q(9)};
  std::vector<Rational> g{Q(0), Q(5), Q(1), Q(3), Q(2), Q(-1)};
  auto flat = BifilteredComplex::from_top_simplices(f, g, testing::octahedron_triangles());
  CHECK(kind_of([&] { SurfaceComplex s(flat); }) == ErrorKind::DegenerateTriangle);
}

TEST_CASE("link cycles") {
  const SurfaceComplex& S = surface(SurfaceKind::Torus).S;
  for (int v = 0; v < static_cast<int>(S.num_vertices()); ++v) {
    const auto& cyc = S.link_cycle(v);
    CHECK(cyc.size() == 6);
    // Consecutive link vertices span a triangle with v.
    for (std::size_t i = 0; i < cyc.size(); ++i) {
      Simplex t{v, cyc[i], cyc[(i + 1) % cyc.size()]};
      std::sort(t.begin(), t.end());
      CHECK(S.complex().find(t).has_value());
    }
  }
}

TEST_CASE("fold edges") {
  SurfaceComplex oct = placed_octahedron();
  auto folds = fold_edges(oct);
  std::set<std::array<int, 2>> got(folds.begin(), folds.end());
  CHECK(got == std::set<std::array<int, 2>>{{0, 2}, {1, 2}, {1, 3}, {0, 3}});

  const SurfaceComplex& T = surface(SurfaceKind::Torus).S;
  auto tf = fold_edges(T);
  CHECK_FALSE(tf.empty());
  std::vector<int> degree(T.num_vertices(), 0);
  for (const auto& e : tf) {
    ++degree[static_cast<std::size_t>(e[0])];
    ++degree[static_cast<std::size_t>(e[1])];
  }
  for (int d : degree) CHECK(d % 2 == 0);

  // Flat square patch around a centre vertex: no edge folds.
  std::vector<Rational> f{Q(0), Q(10), Q(1), Q(9), Q(5)};
  std::vector<Rational> g{Q(0), Q(2), Q(10), Q(9), Q(4)};
  auto patch = BifilteredComplex::from_top_simplices(f, g, {{0, 1, 4}, {1, 3, 4}, {3, 2, 4}, {2, 0, 4}});
  CHECK(fold_edges(patch).empty());
}

TEST_CASE("pareto chains") {
  SurfaceComplex oct = placed_octahedron();
  auto chains = pareto_chains(oct, fold_edges(oct));
  REQUIRE(chains.size() == 1);
  CHECK(chains[0].vertices == std::vector<int>{0, 2});
  CHECK(chains[0].points == std::vector<PlanePoint>{P(0, 2), P(3, 0)});

  // Only positive-slope folds: nothing.
  std::vector<std::array<int, 2>> positive{{1, 2}, {1, 3}};
  CHECK(pareto_chains(oct, positive).empty());

  // Bean: every chain has negative slope on every leg.
  const SurfaceComplex& B = surface(SurfaceKind::Bean).S;
  auto bean_chains = pareto_chains(B, fold_edges(B));
  CHECK_FALSE(bean_chains.empty());
  for (const auto& c : bean_chains)
    for (std::size_t i = 0; i + 1 < c.points.size(); ++i) {
      CHECK(c.points[i].a < c.points[i + 1].a);
      CHECK(c.points[i].b > c.points[i + 1].b);
    }
}

TEST_CASE("critical vertices") {
  SurfaceComplex oct = placed_octahedron();
  auto cf = critical_vertices(oct.complex(), Field::F);
  REQUIRE(cf.size() == 2);
  CHECK(cf[0].vertex == 0);  // f minimum
  CHECK(cf[0].index == 0);
  CHECK(cf[1].vertex == 1);  // f maximum
  CHECK(cf[1].index == 2);

  const SurfaceComplex& T = surface(SurfaceKind::Torus).S;
  auto tf = critical_vertices(T.complex(), Field::F);
  std::vector<int> idx;
  for (const auto& c : tf) idx.push_back(c.index);
  std::sort(idx.begin(), idx.end());
  CHECK(idx == std::vector<int>{0, 1, 1, 2});

  // Wheel around vertex 0 whose lower link is three separate arcs: not Morse.
  std::vector<Simplex> wheel;
  for (int i = 1; i <= 6; ++i) wheel.push_back({0, i, i % 6 + 1});
  std::vector<Rational> ff{Q(7, 2), Q(0), Q(5), Q(1), Q(6), Q(2), Q(7)};
  std::vector<Rational> g{Q(19, 2), Q(0), Q(13, 3), Q(1), Q(3), Q(2), Q(7)};
  auto K = BifilteredComplex::from_top_simplices(ff, g, wheel);
  CHECK(kind_of([&] { critical_vertices(K, Field::F); }) == ErrorKind::NonMorseVertex);
}

TEST_CASE("extension rays") {
  SurfaceComplex oct = placed_octahedron();
  Box box{Q(-1), Q(10)};
  auto rays = extension_rays(oct.complex(), critical_vertices(oct.complex(), Field::F),
                             critical_vertices(oct.complex(), Field::G), box);
  REQUIRE_FALSE(rays.empty());
  CHECK(rays[0].kind == SegmentKind::VerticalRay);
  CHECK(rays[0].points == std::vector<PlanePoint>{P(0, 2), P(0, 10)});
  CHECK(rays[0].index == 0);
  bool max_ray = std::any_of(rays.begin(), rays.end(), [](const GridSegment& s) {
    return s.kind == SegmentKind::HorizontalRay && s.index == 2;
  });
  CHECK(max_ray);

  const auto& T = surface(SurfaceKind::Torus);
  auto trays = extension_rays(T.S.complex(), critical_vertices(T.S.complex(), Field::F),
                              critical_vertices(T.S.complex(), Field::G), T.G.box);
  CHECK(trays.size() == 8);
}

TEST_CASE("locus rays are the extension rays") {
  for (SurfaceKind kind : {SurfaceKind::Sphere, SurfaceKind::Torus, SurfaceKind::Bean}) {
    const auto& fx = surface(kind);
    const BifilteredComplex& K = fx.S.complex();
    auto rays = extension_rays(K, critical_vertices(K, Field::F), critical_vertices(K, Field::G), fx.G.box);
    // Every ray reaching the box edge sits on an extension ray with the same index.
    std::size_t edge_rays = 0;
    for (const auto& s : fx.G.segments) {
      if (s.kind == SegmentKind::Pareto) continue;
      const PlanePoint& end = s.points.back();
      if (end.a != fx.G.box.hi && end.b != fx.G.box.hi) continue;
      ++edge_rays;
      bool found = std::any_of(rays.begin(), rays.end(), [&](const GridSegment& r) {
        return r.kind == s.kind && r.points.back() == end && r.index == s.index;
      });
      CHECK(found);
    }
    CHECK(edge_rays == rays.size());
  }
}

TEST_CASE("split segments on a hand-built locus") {
  Box box{Q(0), Q(10)};
  std::vector<LocusPiece> pieces{vpiece(1, 6, 10, 1), hpiece(6, 1, 3, 1), vpiece(3, 2, 6, 1),
                                 hpiece(2, 3, 10, 1), vpiece(2, 4, 10, 0), hpiece(4, 2, 10, 0)};
  ParetoGrid G = split_segments(pieces, box);
  CHECK(G.segments.size() == 9);
  CHECK(G.double_points.size() == 2);
  CHECK(G.double_points[0].point == P(2, 6));
  CHECK(G.double_points[1].point == P(3, 4));
  for (auto& s : G.segments) s.index = s.link_index;
  detect_obstacles(G);
  CHECK(G.obstacles.empty());
  REQUIRE(G.joins.size() == 2);
  CHECK(G.joins[0].point == P(1, 6));
  CHECK(G.joins[0].vertical);
  CHECK(G.joins[1].point == P(3, 2));
  CHECK_FALSE(G.joins[1].vertical);
  // The Pareto staircase through the corner (3, 6) is one segment.
  bool staircase = std::any_of(G.segments.begin(), G.segments.end(), [](const GridSegment& s) {
    return s.points == std::vector<PlanePoint>{P(2, 6), P(3, 6), P(3, 4)};
  });
  CHECK(staircase);

  // Two rays from one corner, nothing crossing: two segments.
  ParetoGrid H = split_segments({vpiece(1, 6, 10, 0), hpiece(6, 1, 10, 0)}, box);
  CHECK(H.segments.size() == 2);
  CHECK(H.double_points.empty());

  // T-junction.
  CHECK(kind_of([&] {
          split_segments({vpiece(2, 4, 10, 0), hpiece(4, 2, 10, 0), hpiece(6, 2, 10, 0)}, box);
        }) == ErrorKind::GenericityViolation);
  // Overlap.
  CHECK(kind_of([&] { split_segments({vpiece(2, 4, 10, 0), vpiece(2, 6, 10, 0)}, box); }) ==
        ErrorKind::GenericityViolation);
}

TEST_CASE("reversal corners with an index jump are obstacles") {
  Box box{Q(0), Q(10)};
  // Staircase: ray up from (1,6); Pareto (1,6)->(3,6); then a reversal
  // corner at (3,6) turning upward into a ray of higher index.
  std::vector<LocusPiece> pieces{vpiece(1, 6, 10, 0), hpiece(6, 1, 3, 0), vpiece(3, 6, 10, 1)};
  ParetoGrid G = split_segments(pieces, box);
  for (auto& s : G.segments) s.index = s.link_index;
  detect_obstacles(G);
  REQUIRE(G.obstacles.size() == 1);
  CHECK(G.obstacles[0].location == P(3, 6));
  CHECK(G.obstacles[0].kind == ObstacleKind::Pseudocusp);
  CHECK(G.index_of(G.obstacles[0].upper) == 1);
  CHECK(G.index_of(G.obstacles[0].lower) == 0);

  for (auto& s : G.segments)
    if (s.index == 1) s.index = 3;
  CHECK(kind_of([&] { detect_obstacles(G); }) == ErrorKind::IndexJumpViolation);
}

TEST_CASE("index assignment") {
  for (SurfaceKind kind : {SurfaceKind::Sphere, SurfaceKind::Torus, SurfaceKind::Bean}) {
    const auto& fx = surface(kind);
    const BifilteredComplex& K = fx.S.complex();
    std::map<Rational, int> f_index, g_index;
    for (auto c : critical_vertices(K, Field::F)) f_index[K.f(c.vertex)] = c.index;
    for (auto c : critical_vertices(K, Field::G)) g_index[K.g(c.vertex)] = c.index;
    for (const auto& s : fx.G.segments) {
      REQUIRE(s.index.has_value());
      auto probes = probe_segment(fx.G, K, s.id);
      CHECK(probes.size() >= 3);
      for (const auto& p : probes) CHECK(p.index == s.index);
      const PlanePoint& end = s.points.back();
      if (s.kind == SegmentKind::VerticalRay && end.b == fx.G.box.hi) CHECK(*s.index == f_index.at(end.a));
      if (s.kind == SegmentKind::HorizontalRay && end.a == fx.G.box.hi) CHECK(*s.index == g_index.at(end.b));
    }
  }
  // Torus saddle rays carry index 1.
  const auto& T = surface(SurfaceKind::Torus);
  long saddles = std::count_if(T.G.segments.begin(), T.G.segments.end(), [&](const GridSegment& s) {
    return s.kind != SegmentKind::Pareto && s.index == 1 &&
           (s.points.back().a == T.G.box.hi || s.points.back().b == T.G.box.hi);
  });
  CHECK(saddles == 4);
}

TEST_CASE("attach index from betti vectors") {
  CHECK(attach_index({0, 0, 0}, {1, 0, 0}) == 0);
  CHECK(attach_index({2, 0, 0}, {1, 0, 0}) == 1);
  CHECK(attach_index({1, 1, 0}, {1, 0, 0}) == 2);
  CHECK(attach_index({1, 0, 0}, {1, 0, 1}) == 2);
  CHECK_FALSE(attach_index({1, 0, 0}, {1, 0, 0}).has_value());
  CHECK_FALSE(attach_index({0, 0, 0}, {2, 0, 0}).has_value());
  CHECK_FALSE(attach_index({1, 0, 0}, {2, 1, 0}).has_value());
}

TEST_CASE("obstacles on the generated surfaces") {
  auto count = [](const ParetoGrid& G, ObstacleKind k) {
    return std::count_if(G.obstacles.begin(), G.obstacles.end(), [&](const Obstacle& o) { return o.kind == k; });
  };
  const auto& bean = surface(SurfaceKind::Bean).G;
  CHECK(count(bean, ObstacleKind::Cusp) == 2);
  CHECK(count(bean, ObstacleKind::Pseudocusp) == 2);
  CHECK(std::count_if(bean.joins.begin(), bean.joins.end(), [](const SmoothJoin& j) { return j.vertical; }) == 1);
  CHECK(std::count_if(bean.joins.begin(), bean.joins.end(), [](const SmoothJoin& j) { return !j.vertical; }) == 1);

  for (SurfaceKind kind : {SurfaceKind::Sphere, SurfaceKind::Torus, SurfaceKind::Bean}) {
    const ParetoGrid& G = surface(kind).G;
    // Exhaustive scan: pairs of segments sharing an endpoint that is not a
    // double point, with indices one apart.
    std::set<PlanePoint, PlanePointLess> doubles;
    for (const auto& d : G.double_points) doubles.insert(d.point);
    std::size_t jumps = 0;
    for (std::size_t i = 0; i < G.segments.size(); ++i)
      for (std::size_t j = i + 1; j < G.segments.size(); ++j) {
        const auto& x = G.segments[i];
        const auto& y = G.segments[j];
        for (const auto& p : {x.points.front(), x.points.back()})
          if ((p == y.points.front() || p == y.points.back()) && !doubles.count(p) &&
              std::abs(*x.index - *y.index) == 1)
            ++jumps;
      }
    CHECK(jumps == G.obstacles.size());
    for (const auto& o : G.obstacles) {
      CHECK(G.index_of(o.upper) == G.index_of(o.lower) + 1);
      const auto& lo = G.segments[static_cast<std::size_t>(o.lower)];
      const auto& up = G.segments[static_cast<std::size_t>(o.upper)];
      CHECK((lo.points.front() == o.location || lo.points.back() == o.location));
      CHECK((up.points.front() == o.location || up.points.back() == o.location));
      CHECK_FALSE(doubles.count(o.location));
    }
  }
}

TEST_CASE("complement components") {
  for (SurfaceKind kind : {SurfaceKind::Sphere, SurfaceKind::Torus}) {
    const auto& fx = surface(kind);
    const BifilteredComplex& K = fx.S.complex();
    ComplementLocator L(fx.G);
    int top = L.component(fx.G.box.upper_corner());
    CHECK(betti_vector(slice(K, fx.G.box.upper_corner())) ==
          (kind == SurfaceKind::Torus ? std::vector<int>{1, 2, 1} : std::vector<int>{1, 0, 1}));
    int bottom = L.component(fx.G.box.lower_corner());
    CHECK(top != bottom);
    CHECK(betti_vector(slice(K, fx.G.box.lower_corner())) == std::vector<int>{0, 0, 0});
    Rng rng(5);
    for (int c = 0; c < L.num_components(); ++c) {
      std::vector<int> first;
      for (int i = 0; i < 20; ++i) {
        PlanePoint p = L.sample(c, rng);
        CHECK(L.component(p) == c);
        auto b = betti_vector(slice(K, p));
        if (i == 0) first = b;
        CHECK(b == first);
      }
    }
    // Points on segments are rejected.
    for (const auto& s : fx.G.segments) {
      PlanePoint mid{(s.points[0].a + s.points[1].a) / 2, (s.points[0].b + s.points[1].b) / 2};
      CHECK(kind_of([&] { L.component(mid); }) == ErrorKind::OnGrid);
      CHECK(kind_of([&] { L.component(s.points[0]); }) == ErrorKind::OnGrid);
    }
    CHECK(kind_of([&] { complement_component(fx.G, P(fx.G.box.hi + 1, 0)); }) == ErrorKind::OutOfDomain);
  }
}

TEST_CASE("double points: both crossing orders agree") {
  const auto& fx = surface(SurfaceKind::Torus);
  const BifilteredComplex& K = fx.S.complex();
  REQUIRE_FALSE(fx.G.double_points.empty());
  for (const auto& d : fx.G.double_points) {
    Rational r(1);
    for (std::size_t v = 0; v < K.num_vertices(); ++v) {
      Rational da = abs(K.f(static_cast<int>(v)) - d.point.a), db = abs(K.g(static_cast<int>(v)) - d.point.b);
      if (da > 0) r = min(r, da);
      if (db > 0) r = min(r, db);
    }
    r /= 2;
    auto b = [&](const Rational& x, const Rational& y) { return betti_vector(slice(K, {d.point.a + x, d.point.b + y})); };
    auto sw = b(-r, -r), nw = b(-r, r), se = b(r, -r), ne = b(r, r);
    CHECK(attach_index(sw, nw).has_value());
    CHECK(attach_index(nw, ne).has_value());
    CHECK(attach_index(sw, se).has_value());
    CHECK(attach_index(se, ne).has_value());
  }
}
