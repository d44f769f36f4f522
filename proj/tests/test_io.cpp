#include "doctest.h"
#include "fixtures.hpp"
#include "helpers.hpp"
#include "pareto/io.hpp"

using namespace pareto;
using testing::kind_of;
using testing::P;
using testing::Q;
using testing::surface;

TEST_CASE("mesh round trip") {
  const MeshDocument m = generate_surface(SurfaceKind::Sphere, 4, 3);
  const std::string text = dump(to_json(m));
  const MeshDocument back = mesh_from_json(parse_json(text));
  CHECK(back.f == m.f);
  CHECK(back.g == m.g);
  CHECK(back.triangles == m.triangles);
  CHECK(dump(to_json(back)) == text);

  MeshDocument s;
  s.f = {Q(1, 3), Q(2)};
  s.g = {Q(-5, 7), Q(0)};
  s.simplices = {{0}, {1}, {0, 1}};
  CHECK(mesh_from_json(to_json(s)) == s);
}

TEST_CASE("rationals are exact strings") {
  MeshDocument s;
  s.f = {Q(1, 3)};
  s.g = {Q(-4, 1)};
  s.simplices = {{0}};
  const Json j = to_json(s);
  CHECK(j["f"][0] == "1/3");
  CHECK(j["g"][0] == "-4/1");
  CHECK(j["version"] == "1");
  CHECK(j["type"] == "mesh");
}

TEST_CASE("grid round trip") {
  for (SurfaceKind k : {SurfaceKind::Sphere, SurfaceKind::Bean}) {
    const ParetoGrid& G = surface(k).G;
    const std::string text = dump(to_json(G));
    const ParetoGrid back = grid_from_json(parse_json(text));
    CHECK(back == G);
    CHECK(dump(to_json(back)) == text);
  }
}

TEST_CASE("curve, diagram and cubing round trip") {
  const auto& fx = surface(SurfaceKind::Torus);
  const MonotoneCurve c({fx.G.box.lower_corner(), P(Q(1, 7), Q(-2, 9)), fx.G.box.upper_corner()});
  CHECK(curve_from_json(parse_json(dump(to_json(c)))) == c);

  const MonotoneCurve diag({fx.G.box.lower_corner(), fx.G.box.upper_corner()});
  const LabeledDiagram d = labeled_diagram(fx.S.complex(), diag, fx.G);
  CHECK_FALSE(d.bars.empty());
  CHECK(diagram_from_json(parse_json(dump(to_json(d)))) == d);

  const ObstaclePoset Pt(obstacle_locations(fx.G), fx.G.box);
  const Cubing C = edge_lengths(build_cubing(Pt), Pt);
  CHECK(cubing_from_json(parse_json(dump(to_json(C)))) == C);
}

TEST_CASE("malformed documents") {
  CHECK(kind_of([] { parse_json("{not json"); }) == ErrorKind::InvalidInput);
  Json j = to_json(MonotoneCurve({P(Q(0), Q(0)), P(Q(1), Q(1))}));
  Json wrong_version = j;
  wrong_version["version"] = "2";
  CHECK_THROWS_AS(curve_from_json(wrong_version), Error);
  CHECK_THROWS_AS(mesh_from_json(j), Error);
  Json broken = j;
  broken["vertices"][0] = "3/x";
  CHECK_THROWS_AS(curve_from_json(broken), Error);
  Json no_field = j;
  no_field.erase("vertices");
  CHECK(kind_of([&] { curve_from_json(no_field); }) == ErrorKind::InvalidInput);
  CHECK(kind_of([] { load_json_file("/nonexistent/file.json"); }) == ErrorKind::InvalidInput);
}
