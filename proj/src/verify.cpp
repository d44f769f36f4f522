#include "pareto/verify.hpp"

#include <algorithm>
#include <chrono>
#include <iostream>
#include <optional>

#include "pareto/error.hpp"
#include "pareto/parallel.hpp"

namespace pareto {

namespace {

std::size_t at(int i) { return static_cast<std::size_t>(i); }

// Counts cases and keeps the first failure in task order.
struct Tally {
  std::string name;
  int cases = 0;
  int failed = 0;
  std::string detail;
  Json witness;

  void ok() { ++cases; }
  void fail(const std::string& what, Json w) {
    ++cases;
    if (failed++ == 0) {
      detail = what;
      witness = std::move(w);
    }
  }
  Check done(const std::string& unit) const {
    Check c{name, failed == 0, {}, failed == 0 ? Json(nullptr) : witness};
    c.detail = failed == 0 ? std::to_string(cases) + " " + unit + " checked"
                           : std::to_string(failed) + " of " + std::to_string(cases) + " " + unit + " failed; first: " + detail;
    return c;
  }
};

// Outcome of one parallel task, merged into a Tally afterwards.
struct Outcome {
  bool pass = true;
  std::string detail;
  Json witness;

  void fail(std::string what, Json w) {
    if (!pass) return;
    pass = false;
    detail = std::move(what);
    witness = std::move(w);
  }
};

void merge(Tally& t, const Outcome& o) {
  if (o.pass)
    t.ok();
  else
    t.fail(o.detail, o.witness);
}

Json betti_json(const std::vector<int>& b) { return Json(b); }

Json probe_json(const Probe& p) {
  return {{"lower", to_json(p.lower)},
          {"upper", to_json(p.upper)},
          {"betti_lower", betti_json(p.betti_lower)},
          {"betti_upper", betti_json(p.betti_upper)}};
}

Json chain_json(const Chain& c) { return Json(c); }

Json poset_json(const ObstaclePoset& P) {
  Json obs = Json::array();
  for (const PlanePoint& p : P.obstacles) obs.push_back(to_json(p));
  return {{"box", {{"lo", to_string(P.box.lo)}, {"hi", to_string(P.box.hi)}}}, {"obstacles", std::move(obs)}};
}

std::vector<LabeledDiagram> curves_in_component(const BifilteredComplex& K, const ParetoGrid& G,
                                                const ComponentBand& band, const std::vector<PlanePoint>& locs,
                                                Rng& rng, int count, Outcome& marker) {
  std::vector<LabeledDiagram> out;
  for (int i = 0; i < count; ++i) {
    for (int attempt = 0;; ++attempt) {
      const MonotoneCurve c = random_curve_in(band, rng);
      if (marker_of(c, locs) != band.chain) marker.fail("curve has a different marker", to_json(c));
      try {
        out.push_back(labeled_diagram(K, c, G));
        break;
      } catch (const Error& e) {
        // A random curve through a grid node is redrawn.
        const bool node = e.kind() == ErrorKind::ObstacleHit || e.kind() == ErrorKind::DoublePointHit ||
                          e.kind() == ErrorKind::DegenerateContact;
        if (!node || attempt >= 16) throw;
      }
    }
  }
  return out;
}

// Identification of bars among random curves of one component.
void check_component(const BifilteredComplex& K, const ParetoGrid& G, const std::vector<PlanePoint>& locs,
                     const Chain& chain, std::uint64_t seed, Outcome& ident, Outcome& marker) {
  Rng rng(seed);
  try {
    const AugmentedPairing pairing = augment_at_double_points(K, G, chain);
    const ComponentBand band = component_band(chain, locs, G.box);
    const std::vector<LabeledDiagram> d = curves_in_component(K, G, band, locs, rng, 10, marker);
    auto labels = [&](const LabeledDiagram& x) {
      std::vector<BarLabel> l = bar_labels(x, pairing);
      std::sort(l.begin(), l.end());
      return l;
    };
    const std::vector<BarLabel> first = labels(d[0]);
    for (std::size_t i = 1; i < d.size(); ++i)
      if (labels(d[i]) != first) {
        ident.fail("label multisets differ between curves 0 and " + std::to_string(i),
                   {{"component", chain_json(chain)}, {"curve", static_cast<int>(i)}});
        return;
      }
    for (std::size_t i = 0; i + 2 < d.size(); ++i) {
      const std::vector<int> m01 = identify(d[i], d[i + 1], pairing);
      const std::vector<int> m12 = identify(d[i + 1], d[i + 2], pairing);
      const std::vector<int> m02 = identify(d[i], d[i + 2], pairing);
      for (std::size_t j = 0; j < m01.size(); ++j)
        if (m12[at(m01[j])] != m02[j]) {
          ident.fail("identifications do not compose",
                     {{"component", chain_json(chain)}, {"curves", {i, i + 1, i + 2}}, {"bar", j}});
          return;
        }
    }
  } catch (const Error& e) {
    ident.fail(e.what(), {{"component", chain_json(chain)}});
  }
}

void check_obstacle(const BifilteredComplex& K, const ParetoGrid& G, int id, Outcome& out) {
  const Obstacle& o = G.obstacles[at(id)];
  const Rational h = natural_height(o.location);
  Rational r = clearance(K, G.box, o.location);
  std::optional<Rational> previous;
  Json w = {{"obstacle", id}, {"point", to_json(o.location)}};
  for (int step = 0; step < 3; ++step, r /= 2) {
    w["radius"] = to_string(r);
    try {
      const CrossingDelta d = obstacle_crossing_delta(K, G, o, detour_curve(G.box, o.location, r, false),
                                                      detour_curve(G.box, o.location, r, true));
      if (d.bar.birth.segment != o.lower || !d.bar.death || d.bar.death->segment != o.upper)
        return out.fail("extra bar is not on the obstacle's branches", w);
      if (!(d.bar.birth.t < h && h < d.bar.death->t)) return out.fail("extra bar does not bracket the height", w);
      const Rational len = d.bar.death->t - d.bar.birth.t;
      if (previous && !(len < *previous)) return out.fail("extra bar does not shrink", w);
      previous = len;
    } catch (const Error& e) {
      return out.fail(e.what(), w);
    }
  }
}

// Cubing invariants shared by surface and synthetic posets.
void check_cubing(const ObstaclePoset& P, const Json& where, Tally& count, Tally& round, Tally& gromov, Tally& chi,
                  Tally& faces, Tally& edges) {
  const Cubing C = build_cubing(P);
  const std::size_t expected = count_chains_brute_force(P.obstacles);
  if (C.vertices.size() == expected)
    count.ok();
  else
    count.fail(std::to_string(C.vertices.size()) + " vertices, " + std::to_string(expected) + " chains", where);

  Outcome r;
  for (std::size_t v = 0; v < C.vertices.size() && r.pass; ++v) {
    try {
      const MonotoneCurve c = realize_chain(C.vertices[v], P.obstacles, P.box);
      if (marker_of(c, P.obstacles) != C.vertices[v])
        r.fail("realized curve has another marker", {{"poset", where}, {"chain", chain_json(C.vertices[v])}});
    } catch (const Error& e) {
      r.fail(e.what(), {{"poset", where}, {"chain", chain_json(C.vertices[v])}});
    }
  }
  merge(round, r);

  if (const auto w = gromov_check(C))
    gromov.fail("link condition fails", {{"poset", where}, {"vertex", w->vertex}, {"directions", w->directions}});
  else
    gromov.ok();
  const int x = euler_characteristic(C);
  if (x == 1)
    chi.ok();
  else
    chi.fail("euler characteristic " + std::to_string(x), where);
  if (face_closed(C))
    faces.ok();
  else
    faces.fail("a face of a cube is missing", where);

  Outcome e;
  for (const Cube& cube : C.cubes) {
    if (cube.dim() != 1 || !e.pass) continue;
    const Json w = {{"poset", where}, {"top", cube.top}, {"direction", cube.directions[0]}};
    try {
      const auto [low, high] = edge_crossing_curves(C, P, cube, Rational(1, 64));
      const int lo = locate_component(C, P, low), hi = locate_component(C, P, high);
      const std::vector<int> ends = C.cube_vertices(cube);
      if (hi != cube.top || std::find(ends.begin(), ends.end(), lo) == ends.end() || lo == hi ||
          (C.above[at(lo)] ^ C.above[at(hi)]) != (std::uint64_t{1} << cube.directions[0]))
        e.fail("edge curves do not cross exactly its obstacle", w);
    } catch (const Error& err) {
      e.fail(err.what(), w);
    }
  }
  merge(edges, e);
}

std::vector<Check> cubing_checks(const std::vector<ObstaclePoset>& posets, const std::vector<Json>& where) {
  Tally count{"cubing_vertex_count"}, round{"cubing_realize_round_trip"}, gromov{"cubing_gromov"},
      chi{"cubing_euler_characteristic"}, faces{"cubing_face_closure"}, edges{"cubing_edge_crossings"};
  for (std::size_t i = 0; i < posets.size(); ++i) check_cubing(posets[i], where[i], count, round, gromov, chi, faces, edges);
  return {count.done("posets"), round.done("posets"), gromov.done("posets"),
          chi.done("posets"),   faces.done("posets"), edges.done("posets")};
}

Check failed(const std::string& name, const Error& e) { return {name, false, e.what(), Json(nullptr)}; }

}  // namespace

bool SuiteReport::pass() const {
  return std::all_of(checks.begin(), checks.end(), [](const Check& c) { return c.pass; });
}

bool RunReport::pass() const {
  return std::all_of(suites.begin(), suites.end(), [](const SuiteReport& s) { return s.pass(); });
}

Json RunReport::to_json() const {
  Json j;
  j["version"] = kSchemaVersion;
  j["type"] = "report";
  j["seed"] = seed;
  j["pass"] = pass();
  Json suites_json = Json::array();
  for (const SuiteReport& s : suites) {
    Json checks = Json::array();
    for (const Check& c : s.checks)
      checks.push_back({{"name", c.name}, {"pass", c.pass}, {"detail", c.detail}, {"witness", c.witness}});
    suites_json.push_back({{"name", s.name}, {"config", s.config}, {"pass", s.pass()}, {"checks", std::move(checks)}});
  }
  j["suites"] = std::move(suites_json);
  return j;
}

std::uint64_t derive_seed(std::uint64_t seed, const std::string& tag, std::uint64_t index) {
  // FNV-1a over the tag, then a splitmix64 finalizer.
  std::uint64_t h = 1469598103934665603ull;
  for (unsigned char ch : tag) h = (h ^ ch) * 1099511628211ull;
  std::uint64_t z = h ^ (seed * 0x9E3779B97F4A7C15ull) ^ (index + 0x632BE59BD9B4E019ull);
  z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ull;
  z = (z ^ (z >> 27)) * 0x94D049BB133111EBull;
  return z ^ (z >> 31);
}

std::size_t count_chains_brute_force(const std::vector<PlanePoint>& obs) {
  const std::size_t n = obs.size();
  if (n > 24) throw Error(ErrorKind::InvalidInput, "too many obstacles for the brute-force chain count");
  std::vector<std::uint64_t> comparable(n, 0);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j)
      if (strictly_precedes(obs[i], obs[j]) || strictly_precedes(obs[j], obs[i])) comparable[i] |= std::uint64_t{1} << j;
  std::size_t total = 0;
  for (std::uint64_t s = 0; s < (std::uint64_t{1} << n); ++s) {
    bool chain = true;
    for (std::size_t i = 0; i < n && chain; ++i)
      if (s >> i & 1) chain = ((s & ~(std::uint64_t{1} << i)) & ~comparable[i]) == 0;
    total += chain;
  }
  return total;
}

SuiteReport verify_surface(const SurfaceInput& input, std::uint64_t seed, int threads) {
  SuiteReport report{input.name, input.config, {}};
  auto& checks = report.checks;

  std::optional<SurfaceComplex> S;
  try {
    S.emplace(to_surface(input.mesh));
  } catch (const Error& e) {
    checks.push_back(failed("surface_valid", e));
    return report;
  }
  const BifilteredComplex& K = S->complex();
  report.config["vertices"] = K.num_vertices();

  // Grid, one stage at a time so each invariant is reported on its own.
  const Box box = enclosing_box(K.all_values());
  ParetoGrid G;
  try {
    G = split_segments(change_locus(*S, box), box);
  } catch (const Error& e) {
    checks.push_back(failed("attach_law_segments", e));
    return report;
  }
  std::vector<std::vector<Probe>> probes(G.segments.size());
  parallel_for(G.segments.size(), threads,
               [&](std::size_t i) { probes[i] = probe_segment(G, K, static_cast<int>(i)); });
  Tally attach{"attach_law_segments"}, constancy{"index_constancy"};
  for (std::size_t i = 0; i < G.segments.size(); ++i) {
    const Json w = {{"segment", i}};
    std::optional<int> index;
    bool law = probes[i].size() >= 3, same = true;
    Json bad = w;
    for (const Probe& p : probes[i]) {
      if (!p.index) {
        if (law) bad["probe"] = probe_json(p);
        law = false;
        continue;
      }
      if (index && *index != *p.index && same) {
        same = false;
        bad["probe"] = probe_json(p);
      }
      if (!index) index = p.index;
    }
    if (law)
      attach.ok();
    else
      attach.fail("segment " + std::to_string(i) + " breaks the attach law", bad);
    if (!law) continue;
    if (same && *index != G.segments[i].link_index) {
      same = false;
      bad["link_index"] = G.segments[i].link_index;
    }
    if (same) {
      constancy.ok();
      G.segments[i].index = index;
    } else {
      constancy.fail("segment " + std::to_string(i) + " has disagreeing probes", bad);
    }
  }
  checks.push_back(attach.done("segments"));
  checks.push_back(constancy.done("segments"));
  if (attach.failed || constancy.failed) return report;

  try {
    detect_obstacles(G);
  } catch (const Error& e) {
    checks.push_back(failed("obstacle_jump", e));
    return report;
  }
  Tally jump{"obstacle_jump"};
  for (std::size_t i = 0; i < G.obstacles.size(); ++i) {
    const Obstacle& o = G.obstacles[i];
    if (G.index_of(o.upper) - G.index_of(o.lower) == 1)
      jump.ok();
    else
      jump.fail("index does not jump by one", {{"obstacle", i}, {"lower", o.lower}, {"upper", o.upper}});
  }
  checks.push_back(jump.done("obstacles"));
  report.config["segments"] = G.segments.size();
  report.config["obstacles"] = G.obstacles.size();
  report.config["double_points"] = G.double_points.size();

  {
    const ComplementLocator L(G);
    std::vector<Outcome> out(at(L.num_components()));
    parallel_for(out.size(), threads, [&](std::size_t c) {
      Rng rng(derive_seed(seed, input.name + "/complement", c));
      const int comp = static_cast<int>(c);
      for (int i = 0; i < 20 && out[c].pass; ++i) {
        const PlanePoint p = L.sample(comp, rng), q = L.sample(comp, rng);
        const std::vector<int> bp = betti_vector(slice(K, p)), bq = betti_vector(slice(K, q));
        if (bp != bq)
          out[c].fail("slices differ inside component " + std::to_string(c),
                      {{"component", comp}, {"p", to_json(p)}, {"q", to_json(q)}, {"betti_p", bp}, {"betti_q", bq}});
      }
    });
    Tally t{"complement_zero_change"};
    for (const Outcome& o : out) merge(t, o);
    checks.push_back(t.done("components"));
  }

  if (input.bean_counts) {
    int cusps = 0, pseudo = 0, vertical = 0, horizontal = 0;
    for (const Obstacle& o : G.obstacles) (o.kind == ObstacleKind::Cusp ? cusps : pseudo)++;
    for (const SmoothJoin& j : G.joins) (j.vertical ? vertical : horizontal)++;
    const bool ok = cusps == 2 && pseudo == 2 && vertical == 1 && horizontal == 1;
    const std::string counts = std::to_string(cusps) + " cusps, " + std::to_string(pseudo) + " pseudocusps, " +
                               std::to_string(vertical) + " vertical and " + std::to_string(horizontal) +
                               " horizontal joins";
    checks.push_back({"bean_counts", ok, counts,
                      ok ? Json(nullptr)
                         : Json{{"cusps", cusps}, {"pseudocusps", pseudo}, {"vertical_joins", vertical},
                                {"horizontal_joins", horizontal}}});
  }

  const std::vector<PlanePoint> locs = obstacle_locations(G);
  {
    std::vector<Chain> chains;
    try {
      chains = enumerate_chains(locs);
    } catch (const Error& e) {
      checks.push_back(failed("identification", e));
      return report;
    }
    std::vector<Outcome> ident(chains.size()), marker(chains.size());
    parallel_for(chains.size(), threads, [&](std::size_t i) {
      check_component(K, G, locs, chains[i], derive_seed(seed, input.name + "/curves", i), ident[i], marker[i]);
    });
    Tally ti{"identification"}, tm{"marker_well_defined"};
    for (std::size_t i = 0; i < chains.size(); ++i) {
      merge(ti, ident[i]);
      merge(tm, marker[i]);
    }
    checks.push_back(ti.done("components"));
    checks.push_back(tm.done("components"));
  }

  {
    std::vector<Outcome> out(G.obstacles.size());
    parallel_for(out.size(), threads, [&](std::size_t i) { check_obstacle(K, G, static_cast<int>(i), out[i]); });
    Tally t{"obstacle_crossing"};
    for (const Outcome& o : out) merge(t, o);
    checks.push_back(t.done("obstacles"));
  }

  {
    const ComplementLocator L(G);
    const int top_dim = static_cast<int>(K.dimension());
    std::vector<Outcome> out(50);
    parallel_for(out.size(), threads, [&](std::size_t i) {
      Rng rng(derive_seed(seed, input.name + "/rank", i));
      PlanePoint p = L.sample(static_cast<int>(rng.below(at(L.num_components()))), rng);
      PlanePoint q = L.sample(static_cast<int>(rng.below(at(L.num_components()))), rng);
      if (!precedes(p, q)) {
        if (precedes(q, p))
          std::swap(p, q);
        else
          q = {max(p.a, q.a), max(p.b, q.b)};
      }
      for (int k = 0; k <= top_dim && out[i].pass; ++k) {
        const Json w = {{"c1", to_json(p)}, {"c2", to_json(q)}, {"dim", k}};
        try {
          const int via = rank_via_curve(K, G, p, q, k), direct = inclusion_rank(K, p, q, k);
          if (via != direct)
            out[i].fail("curve rank " + std::to_string(via) + ", inclusion rank " + std::to_string(direct), w);
        } catch (const Error& e) {
          out[i].fail(e.what(), w);
        }
      }
    });
    Tally t{"rank_formula"};
    for (const Outcome& o : out) merge(t, o);
    checks.push_back(t.done("pairs"));
  }

  try {
    const ObstaclePoset P(locs, G.box);
    for (Check& c : cubing_checks({P}, {poset_json(P)})) checks.push_back(std::move(c));
    // On a surface the edges also carry the extra bar of the crossing.
    const Cubing C = build_cubing(P);
    Tally t{"cubing_edges_are_crossings"};
    for (const Cube& e : C.cubes) {
      if (e.dim() != 1) continue;
      const Obstacle& o = G.obstacles[at(e.directions[0])];
      const Json w = {{"top", e.top}, {"direction", e.directions[0]}};
      try {
        const auto [low, high] = edge_crossing_curves(C, P, e, clearance(K, G.box, o.location) / 4);
        const CrossingDelta d = obstacle_crossing_delta(K, G, o, low, high);
        if (d.bar.birth.segment == o.lower && d.bar.death && d.bar.death->segment == o.upper)
          t.ok();
        else
          t.fail("extra bar is not on the obstacle's branches", w);
      } catch (const Error& err) {
        t.fail(err.what(), w);
      }
    }
    checks.push_back(t.done("edges"));
  } catch (const Error& e) {
    checks.push_back(failed("cubing_vertex_count", e));
  }
  return report;
}

SuiteReport verify_posets(std::uint64_t seed, int /*threads*/) {
  SuiteReport report{"random_posets", {{"posets", 10}, {"obstacles", 6}, {"box", {"0/1", "10/1"}}}, {}};
  const Box box{Rational(0), Rational(10)};
  std::vector<ObstaclePoset> posets;
  std::vector<Json> where;
  Rng rng(derive_seed(seed, "posets", 0));
  for (int i = 0; i < 10; ++i) {
    const ObstaclePoset inner = random_poset(6, Box{Rational(1), Rational(9)}, rng);
    posets.emplace_back(inner.obstacles, box);
    where.push_back(poset_json(posets.back()));
  }
  report.checks = cubing_checks(posets, where);

  // Negative control: a chain of three with its 3-cube removed must fail.
  std::vector<PlanePoint> chain;
  for (int i = 0; i < 3; ++i) chain.push_back({Rational(1 + 2 * i, 2), Rational(2 + 3 * i, 2)});
  Cubing C = build_cubing(ObstaclePoset(chain, box));
  C.cubes.erase(std::find_if(C.cubes.begin(), C.cubes.end(), [](const Cube& c) { return c.dim() == 3; }));
  const auto w = gromov_check(C);
  report.checks.push_back({"gromov_negative_control", w.has_value(),
                           w ? "deleted 3-cube detected at vertex " + std::to_string(w->vertex)
                             : "deleted 3-cube went unnoticed",
                           Json(nullptr)});
  return report;
}

std::vector<SurfaceInput> default_surfaces(std::uint64_t /*seed*/) {
  // The generators are frozen at seed 1; the run seed only drives sampling.
  std::vector<SurfaceInput> out;
  for (SurfaceKind kind : {SurfaceKind::Sphere, SurfaceKind::Torus, SurfaceKind::Bean}) {
    const int res = default_resolution(kind);
    out.push_back({to_string(kind), generate_surface(kind, res, 1),
                   {{"kind", to_string(kind)}, {"resolution", res}, {"generator_seed", 1}},
                   kind == SurfaceKind::Bean});
  }
  return out;
}

RunReport run_verify(const std::vector<SurfaceInput>& inputs, std::uint64_t seed, int threads, bool timings) {
  RunReport run{seed, {}};
  auto timed = [&](const std::string& name, auto&& fn) {
    const auto t0 = std::chrono::steady_clock::now();
    run.suites.push_back(fn());
    if (timings)
      std::cerr << "verify: " << name << " took "
                << std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count() << " s\n";
  };
  for (const SurfaceInput& in : inputs) timed(in.name, [&] { return verify_surface(in, seed, threads); });
  timed("random_posets", [&] { return verify_posets(seed, threads); });
  return run;
}

}  // namespace pareto
