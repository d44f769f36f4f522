#include <algorithm>

#include "doctest.h"
#include "helpers.hpp"
#include "pareto/svg.hpp"
#include "pareto/verify.hpp"

using namespace pareto;
using testing::P;
using testing::Q;

namespace {

const Check* find(const SuiteReport& s, const std::string& name) {
  auto it = std::find_if(s.checks.begin(), s.checks.end(), [&](const Check& c) { return c.name == name; });
  return it == s.checks.end() ? nullptr : &*it;
}

}  // namespace

TEST_CASE("derived seeds are fixed and distinct") {
  CHECK(derive_seed(7, "torus/rank", 3) == derive_seed(7, "torus/rank", 3));
  CHECK(derive_seed(7, "torus/rank", 3) != derive_seed(7, "torus/rank", 4));
  CHECK(derive_seed(7, "torus/rank", 3) != derive_seed(8, "torus/rank", 3));
  CHECK(derive_seed(7, "torus/rank", 3) != derive_seed(7, "bean/rank", 3));
}

TEST_CASE("brute-force chain count") {
  CHECK(count_chains_brute_force({}) == 1);
  // Three comparable points: every subset is a chain.
  CHECK(count_chains_brute_force({P(Q(1), Q(1)), P(Q(2), Q(3)), P(Q(4), Q(5))}) == 8);
  // Two incomparable points: empty set and two singletons.
  CHECK(count_chains_brute_force({P(Q(1), Q(5)), P(Q(2), Q(3))}) == 3);
  // A below both B and C, B and C incomparable: {}, A, B, C, AB, AC.
  CHECK(count_chains_brute_force({P(Q(0), Q(0)), P(Q(1), Q(5)), P(Q(2), Q(3))}) == 6);
}

TEST_CASE("poset suite passes and its negative control fires") {
  const SuiteReport r = verify_posets(3, 1);
  CHECK(r.pass());
  const Check* neg = find(r, "gromov_negative_control");
  REQUIRE(neg);
  CHECK(neg->pass);
}

TEST_CASE("sphere suite reports every invariant") {
  const SurfaceInput in{"sphere", generate_surface(SurfaceKind::Sphere, 4, 1), Json::object(), false};
  const SuiteReport r = verify_surface(in, 11, 2);
  for (const char* name : {"attach_law_segments", "index_constancy", "obstacle_jump", "complement_zero_change",
                           "identification", "marker_well_defined", "obstacle_crossing", "rank_formula",
                           "cubing_vertex_count", "cubing_gromov", "cubing_edges_are_crossings"}) {
    const Check* c = find(r, name);
    REQUIRE_MESSAGE(c, name);
    CHECK_MESSAGE(c->pass, name << ": " << c->detail);
    CHECK(c->witness.is_null());
  }
  CHECK(find(r, "bean_counts") == nullptr);
}

TEST_CASE("a broken mesh fails with a witness-free record") {
  MeshDocument m = generate_surface(SurfaceKind::Sphere, 3, 1);
  m.triangles.pop_back();
  const SurfaceInput in{"broken", m, Json::object(), false};
  const SuiteReport r = verify_surface(in, 1, 1);
  REQUIRE(r.checks.size() == 1);
  CHECK(r.checks[0].name == "surface_valid");
  CHECK_FALSE(r.pass());
}

TEST_CASE("reports are identical across thread counts") {
  const std::vector<SurfaceInput> in{{"sphere", generate_surface(SurfaceKind::Sphere, 4, 1), Json::object(), false}};
  CHECK(dump(run_verify(in, 5, 1, false).to_json()) == dump(run_verify(in, 5, 4, false).to_json()));
}

TEST_CASE("svg output") {
  const ParetoGrid G = build_grid(to_surface(generate_surface(SurfaceKind::Bean, 12, 1)));
  const std::string g = grid_svg(G);
  CHECK(g.rfind("<svg", 0) == 0);
  CHECK(g.find("</svg>") != std::string::npos);
  std::size_t circles = 0;
  for (std::size_t p = g.find("<circle"); p != std::string::npos; p = g.find("<circle", p + 1)) ++circles;
  CHECK(circles == G.obstacles.size());

  const ObstaclePoset Px({P(Q(1), Q(1)), P(Q(4), Q(6))}, Box{Q(0), Q(10)});
  const Cubing C = build_cubing(Px);
  const std::string c = cubing_svg(C, Px);
  std::size_t squares = 0;
  for (std::size_t p = c.find("<polygon"); p != std::string::npos; p = c.find("<polygon", p + 1)) ++squares;
  CHECK(squares == C.count(2));
}
