#include <algorithm>
#include <map>
#include <sstream>

#include "pareto/error.hpp"
#include "pareto/grid.hpp"

namespace pareto {

SurfaceComplex::SurfaceComplex(BifilteredComplex K) : K_(std::move(K)) {
  if (K_.dimension() != 2) throw Error(ErrorKind::NotManifold, "surface complex must have dimension 2");
  std::map<std::pair<int, int>, std::vector<int>> opposite;
  for (std::size_t i = 0; i < K_.num_simplices(); ++i) {
    if (K_.dim(i) == 1) opposite[{K_.simplex(i)[0], K_.simplex(i)[1]}];
    if (K_.dim(i) != 2) continue;
    const Simplex& s = K_.simplex(i);
    triangles_.push_back({s[0], s[1], s[2]});
    opposite[{s[0], s[1]}].push_back(s[2]);
    opposite[{s[0], s[2]}].push_back(s[1]);
    opposite[{s[1], s[2]}].push_back(s[0]);
  }
  for (const auto& [e, opp] : opposite) {
    if (opp.size() != 2) {
      std::ostringstream os;
      os << "edge (" << e.first << ", " << e.second << ") lies in " << opp.size() << " triangles";
      throw Error(ErrorKind::NotManifold, os.str());
    }
    edges_.push_back({e.first, e.second, opp[0], opp[1]});
  }

  // Link of each vertex: the edges opposite to it in its triangles.
  std::vector<std::map<int, std::vector<int>>> adjacency(K_.num_vertices());
  for (const auto& t : triangles_) {
    for (int k = 0; k < 3; ++k) {
      int v = t[static_cast<std::size_t>(k)];
      int x = t[static_cast<std::size_t>((k + 1) % 3)];
      int y = t[static_cast<std::size_t>((k + 2) % 3)];
      adjacency[static_cast<std::size_t>(v)][x].push_back(y);
      adjacency[static_cast<std::size_t>(v)][y].push_back(x);
    }
  }
  links_.resize(K_.num_vertices());
  for (std::size_t v = 0; v < K_.num_vertices(); ++v) {
    const auto& adj = adjacency[v];
    auto fail = [&] { throw Error(ErrorKind::NotManifold, "link of vertex " + std::to_string(v) + " is not a cycle"); };
    if (adj.size() < 3) fail();
    for (const auto& [w, nb] : adj)
      if (nb.size() != 2 || nb[0] == nb[1]) fail();
    auto& cycle = links_[v];
    int start = adj.begin()->first;
    const auto& first_nb = adj.begin()->second;
    int prev = start, cur = std::min(first_nb[0], first_nb[1]);
    cycle.push_back(start);
    while (cur != start) {
      cycle.push_back(cur);
      if (cycle.size() > adj.size()) fail();
      const auto& nb = adj.at(cur);
      int next = nb[0] == prev ? nb[1] : nb[0];
      prev = cur;
      cur = next;
    }
    if (cycle.size() != adj.size()) fail();
  }

  for (const auto& t : triangles_) {
    if (orient2d(image(t[0]), image(t[1]), image(t[2])) == 0) {
      std::ostringstream os;
      os << "image of triangle (" << t[0] << ", " << t[1] << ", " << t[2] << ") has zero area";
      throw Error(ErrorKind::DegenerateTriangle, os.str());
    }
  }
}

namespace {

std::vector<std::array<int, 2>> folds_of(const BifilteredComplex& K, const std::vector<SurfaceComplex::EdgeStar>& stars) {
  auto img = [&](int v) { return PlanePoint{K.f(v), K.g(v)}; };
  std::vector<std::array<int, 2>> folds;
  for (const auto& e : stars) {
    int s1 = orient2d(img(e.u), img(e.v), img(e.w1));
    int s2 = orient2d(img(e.u), img(e.v), img(e.w2));
    if (s1 == 0 || s2 == 0) {
      std::ostringstream os;
      os << "zero-area image triangle at edge (" << e.u << ", " << e.v << ")";
      throw Error(ErrorKind::DegenerateTriangle, os.str());
    }
    if (s1 == s2) folds.push_back({e.u, e.v});
  }
  return folds;
}

}  // namespace

std::vector<std::array<int, 2>> fold_edges(const SurfaceComplex& S) { return folds_of(S.complex(), S.edges()); }

std::vector<std::array<int, 2>> fold_edges(const BifilteredComplex& K) {
  std::map<std::pair<int, int>, std::vector<int>> opposite;
  for (std::size_t i = 0; i < K.num_simplices(); ++i) {
    if (K.dim(i) != 2) continue;
    const Simplex& s = K.simplex(i);
    opposite[{s[0], s[1]}].push_back(s[2]);
    opposite[{s[0], s[2]}].push_back(s[1]);
    opposite[{s[1], s[2]}].push_back(s[0]);
  }
  std::vector<SurfaceComplex::EdgeStar> stars;
  for (const auto& [e, opp] : opposite)
    if (opp.size() == 2) stars.push_back({e.first, e.second, opp[0], opp[1]});
  return folds_of(K, stars);
}

std::vector<ParetoChain> pareto_chains(const SurfaceComplex& S, const std::vector<std::array<int, 2>>& folds) {
  const BifilteredComplex& K = S.complex();
  std::vector<int> fold_degree(S.num_vertices(), 0);
  std::vector<std::vector<int>> negative(S.num_vertices());
  for (const auto& e : folds) {
    ++fold_degree[static_cast<std::size_t>(e[0])];
    ++fold_degree[static_cast<std::size_t>(e[1])];
    if ((K.f(e[0]) - K.f(e[1])) * (K.g(e[0]) - K.g(e[1])) < 0) {
      negative[static_cast<std::size_t>(e[0])].push_back(e[1]);
      negative[static_cast<std::size_t>(e[1])].push_back(e[0]);
    }
  }
  // A chain passes through x when x has exactly two fold edges, both of
  // negative slope, leading to opposite sides in f.
  auto through = [&](int x) {
    const auto& nb = negative[static_cast<std::size_t>(x)];
    if (fold_degree[static_cast<std::size_t>(x)] != 2 || nb.size() != 2) return false;
    return (K.f(nb[0]) < K.f(x)) != (K.f(nb[1]) < K.f(x));
  };
  std::map<std::pair<int, int>, bool> used;
  auto key = [](int a, int b) { return std::make_pair(std::min(a, b), std::max(a, b)); };
  std::vector<ParetoChain> chains;
  for (std::size_t x0 = 0; x0 < S.num_vertices(); ++x0) {
    for (int y0 : negative[x0]) {
      int x = static_cast<int>(x0);
      if (used[key(x, y0)]) continue;
      used[key(x, y0)] = true;
      std::vector<int> verts{x, y0};
      // Extend forward from y0, then backward from x.
      for (int pass = 0; pass < 2; ++pass) {
        int prev = pass == 0 ? x : y0;
        int cur = pass == 0 ? y0 : x;
        while (through(cur)) {
          const auto& nb = negative[static_cast<std::size_t>(cur)];
          int next = nb[0] == prev ? nb[1] : nb[0];
          if (used[key(cur, next)]) break;
          used[key(cur, next)] = true;
          if (pass == 0)
            verts.push_back(next);
          else
            verts.insert(verts.begin(), next);
          prev = cur;
          cur = next;
        }
      }
      if (K.f(verts.front()) > K.f(verts.back())) std::reverse(verts.begin(), verts.end());
      ParetoChain chain;
      chain.vertices = verts;
      for (int v : verts) chain.points.push_back(S.image(v));
      chains.push_back(std::move(chain));
    }
  }
  std::sort(chains.begin(), chains.end(), [](const ParetoChain& a, const ParetoChain& b) {
    return PlanePointLess{}(a.points.front(), b.points.front());
  });
  return chains;
}

std::vector<CriticalVertex> critical_vertices(const BifilteredComplex& K, Field field) {
  auto value = [&](int v) -> const Rational& { return field == Field::F ? K.f(v) : K.g(v); };
  std::vector<std::vector<int>> star(K.num_vertices());
  for (std::size_t i = 0; i < K.num_simplices(); ++i)
    if (K.dim(i) >= 1)
      for (int v : K.simplex(i)) star[static_cast<std::size_t>(v)].push_back(static_cast<int>(i));
  std::vector<CriticalVertex> out;
  for (int v = 0; v < static_cast<int>(K.num_vertices()); ++v) {
    std::vector<int> lower;
    for (int s : star[static_cast<std::size_t>(v)]) {
      Simplex tau;
      bool below = true;
      for (int w : K.simplex(static_cast<std::size_t>(s))) {
        if (w == v) continue;
        if (value(w) > value(v)) below = false;
        tau.push_back(w);
      }
      if (below) lower.push_back(static_cast<int>(*K.find(tau)));
    }
    if (lower.empty()) {
      out.push_back({v, 0});
      continue;
    }
    std::sort(lower.begin(), lower.end());
    std::vector<int> reduced = betti_of_subset(K, lower);
    reduced[0] -= 1;
    int nonzero = 0, index = -1;
    for (std::size_t k = 0; k < reduced.size(); ++k) {
      if (reduced[k] == 0) continue;
      ++nonzero;
      if (reduced[k] == 1) index = static_cast<int>(k) + 1;
    }
    if (nonzero == 0) continue;
    if (nonzero == 1 && index > 0) {
      out.push_back({v, index});
      continue;
    }
    std::ostringstream os;
    os << "lower link of vertex " << v << " in " << (field == Field::F ? "f" : "g")
       << " is neither acyclic nor a homology sphere";
    throw Error(ErrorKind::NonMorseVertex, os.str());
  }
  return out;
}

std::vector<GridSegment> extension_rays(const BifilteredComplex& K, const std::vector<CriticalVertex>& crit_f,
                                        const std::vector<CriticalVertex>& crit_g, const Box& box) {
  std::vector<GridSegment> rays;
  for (const auto& c : crit_f) {
    GridSegment s;
    s.id = static_cast<int>(rays.size());
    s.kind = SegmentKind::VerticalRay;
    s.points = {{K.f(c.vertex), K.g(c.vertex)}, {K.f(c.vertex), box.hi}};
    s.index = c.index;
    s.link_index = c.index;
    rays.push_back(std::move(s));
  }
  for (const auto& c : crit_g) {
    GridSegment s;
    s.id = static_cast<int>(rays.size());
    s.kind = SegmentKind::HorizontalRay;
    s.points = {{K.f(c.vertex), K.g(c.vertex)}, {box.hi, K.g(c.vertex)}};
    s.index = c.index;
    s.link_index = c.index;
    rays.push_back(std::move(s));
  }
  return rays;
}

namespace {

// Index of the cell attached when v enters with the given part of its link
// already present: the full subcomplex of the link cycle on `in` has reduced
// homology of a sphere of dimension index-1, or none at all (nullopt).
std::optional<int> cycle_index(const std::vector<int>& cycle, const std::vector<char>& in, int vertex) {
  std::size_t count = 0, arcs = 0;
  for (std::size_t i = 0; i < cycle.size(); ++i) {
    if (!in[i]) continue;
    ++count;
    if (!in[(i + cycle.size() - 1) % cycle.size()]) ++arcs;
  }
  if (count == 0) return 0;
  if (count == cycle.size()) return 2;
  if (arcs == 1) return std::nullopt;
  if (arcs == 2) return 1;
  throw Error(ErrorKind::AttachLawViolation, "vertex " + std::to_string(vertex) + " enters with " +
                                                 std::to_string(arcs) + " link arcs; the mesh is too coarse");
}

void locus_line(const SurfaceComplex& S, int v, bool vertical, const Box& box, std::vector<LocusPiece>& out) {
  const BifilteredComplex& K = S.complex();
  auto along = [&](int w) -> const Rational& { return vertical ? K.g(w) : K.f(w); };
  auto across = [&](int w) -> const Rational& { return vertical ? K.f(w) : K.g(w); };
  const auto& cycle = S.link_cycle(v);
  std::vector<Rational> cuts{along(v)};
  for (int w : cycle)
    if (across(w) < across(v) && along(w) > along(v)) cuts.push_back(along(w));
  std::sort(cuts.begin(), cuts.end());
  cuts.push_back(box.hi);
  std::vector<char> in(cycle.size(), 0);
  std::optional<LocusPiece> open;
  for (std::size_t k = 0; k + 1 < cuts.size(); ++k) {
    for (std::size_t i = 0; i < cycle.size(); ++i)
      in[i] = across(cycle[i]) < across(v) && along(cycle[i]) <= cuts[k];
    std::optional<int> idx = cycle_index(cycle, in, v);
    if (open && (!idx || *idx != open->index)) {
      out.push_back(*open);
      open.reset();
    }
    if (!idx) continue;
    if (open) {
      open->hi = cuts[k + 1];
    } else {
      open = LocusPiece{vertical, v, across(v), cuts[k], cuts[k + 1], *idx};
    }
  }
  if (open) out.push_back(*open);
}

}  // namespace

std::vector<LocusPiece> change_locus(const SurfaceComplex& S, const Box& box) {
  std::vector<LocusPiece> pieces;
  for (int v = 0; v < static_cast<int>(S.num_vertices()); ++v) {
    locus_line(S, v, true, box, pieces);
    locus_line(S, v, false, box, pieces);
  }
  return pieces;
}

}  // namespace pareto
