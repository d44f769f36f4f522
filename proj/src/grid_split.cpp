#include <algorithm>
#include <map>
#include <numeric>
#include <sstream>

#include "pareto/error.hpp"
#include "pareto/grid.hpp"
#include "pareto/parallel.hpp"

namespace pareto {

int GridNode::degree() const {
  return static_cast<int>(std::count_if(segment.begin(), segment.end(), [](int s) { return s >= 0; }));
}

const GridNode* ParetoGrid::node_at(const PlanePoint& p) const {
  auto it = std::lower_bound(nodes.begin(), nodes.end(), p,
                             [](const GridNode& n, const PlanePoint& q) { return PlanePointLess{}(n.point, q); });
  if (it == nodes.end() || it->point != p) return nullptr;
  return &*it;
}

int ParetoGrid::index_of(int segment) const {
  const auto& s = segments.at(static_cast<std::size_t>(segment));
  if (!s.index) throw Error(ErrorKind::InvalidInput, "segment " + std::to_string(segment) + " has no index yet");
  return *s.index;
}

namespace {

constexpr std::size_t kUp = 0, kDown = 1, kLeft = 2, kRight = 3;

struct Edge {
  PlanePoint p;  // lower (vertical) or left (horizontal) end
  PlanePoint q;
  bool vertical;
  int index;
  bool ray = false;
  int segment = -1;
};

using Incidence = std::map<PlanePoint, std::array<int, 4>, PlanePointLess>;

std::string where(const PlanePoint& p) {
  std::ostringstream os;
  os << p;
  return os.str();
}

int degree(const std::array<int, 4>& a) {
  return static_cast<int>(std::count_if(a.begin(), a.end(), [](int e) { return e >= 0; }));
}

bool is_reversal(const std::array<int, 4>& a) {
  return degree(a) == 2 && ((a[kLeft] >= 0 && a[kUp] >= 0) || (a[kDown] >= 0 && a[kRight] >= 0));
}

// Removes points in the middle of a straight run.
std::vector<PlanePoint> simplify(const std::vector<PlanePoint>& pts) {
  std::vector<PlanePoint> out;
  for (const auto& p : pts) {
    if (out.size() >= 2) {
      const auto& a = out[out.size() - 2];
      const auto& b = out.back();
      if ((a.a == b.a && b.a == p.a) || (a.b == b.b && b.b == p.b)) out.pop_back();
    }
    out.push_back(p);
  }
  return out;
}

}  // namespace

ParetoGrid split_segments(const std::vector<LocusPiece>& pieces, const Box& box) {
  // Cut every piece at its crossings with pieces of the other orientation.
  std::vector<std::vector<Rational>> cuts(pieces.size());
  std::vector<std::size_t> horizontal;
  for (std::size_t i = 0; i < pieces.size(); ++i) {
    cuts[i] = {pieces[i].lo, pieces[i].hi};
    if (!pieces[i].vertical) horizontal.push_back(i);
  }
  std::sort(horizontal.begin(), horizontal.end(),
            [&](std::size_t x, std::size_t y) { return pieces[x].fixed < pieces[y].fixed; });
  for (std::size_t i = 0; i < pieces.size(); ++i) {
    const LocusPiece& v = pieces[i];
    if (!v.vertical) continue;
    auto first = std::lower_bound(horizontal.begin(), horizontal.end(), v.lo,
                                  [&](std::size_t h, const Rational& y) { return pieces[h].fixed < y; });
    for (auto it = first; it != horizontal.end() && pieces[*it].fixed <= v.hi; ++it) {
      const LocusPiece& h = pieces[*it];
      if (h.lo <= v.fixed && v.fixed <= h.hi) {
        cuts[i].push_back(h.fixed);
        cuts[*it].push_back(v.fixed);
      }
    }
  }

  std::vector<Edge> edges;
  Incidence inc;
  auto attach = [&](const PlanePoint& p, std::size_t dir, int e) {
    auto [it, fresh] = inc.try_emplace(p, std::array<int, 4>{-1, -1, -1, -1});
    if (it->second[dir] >= 0) throw Error(ErrorKind::GenericityViolation, "grid pieces overlap at " + where(p));
    it->second[dir] = e;
  };
  for (std::size_t i = 0; i < pieces.size(); ++i) {
    auto& c = cuts[i];
    std::sort(c.begin(), c.end());
    c.erase(std::unique(c.begin(), c.end()), c.end());
    const LocusPiece& piece = pieces[i];
    for (std::size_t k = 0; k + 1 < c.size(); ++k) {
      Edge e;
      e.vertical = piece.vertical;
      e.index = piece.index;
      e.p = piece.vertical ? PlanePoint{piece.fixed, c[k]} : PlanePoint{c[k], piece.fixed};
      e.q = piece.vertical ? PlanePoint{piece.fixed, c[k + 1]} : PlanePoint{c[k + 1], piece.fixed};
      int id = static_cast<int>(edges.size());
      edges.push_back(e);
      attach(e.p, e.vertical ? kUp : kRight, id);
      attach(e.q, e.vertical ? kDown : kLeft, id);
    }
  }

  for (const auto& [p, a] : inc) {
    int d = degree(a);
    if (d == 3) throw Error(ErrorKind::GenericityViolation, "three grid pieces meet at " + where(p));
    if (d == 1) {
      bool at_edge = (a[kDown] >= 0 && p.b == box.hi) || (a[kLeft] >= 0 && p.a == box.hi);
      if (!at_edge) throw Error(ErrorKind::GenericityViolation, "grid piece ends inside the box at " + where(p));
    }
  }

  // Rays: straight runs reaching the top or right edge of the box, followed
  // back through straight nodes and crossings.
  for (std::size_t i = 0; i < edges.size(); ++i) {
    const Edge& e = edges[i];
    bool reaches = e.vertical ? e.q.b == box.hi : e.q.a == box.hi;
    if (!reaches) continue;
    int cur = static_cast<int>(i);
    while (true) {
      Edge& c = edges[static_cast<std::size_t>(cur)];
      c.ray = true;
      const auto& a = inc.at(c.p);
      int back = a[c.vertical ? kDown : kLeft];
      int d = degree(a);
      if (back < 0 || (d != 2 && d != 4)) break;
      cur = back;
    }
  }

  auto is_split = [&](const std::array<int, 4>& a) {
    if (degree(a) != 2 || is_reversal(a)) return true;
    int e1 = -1, e2 = -1;
    for (int e : a)
      if (e >= 0) (e1 < 0 ? e1 : e2) = e;
    const Edge& x = edges[static_cast<std::size_t>(e1)];
    const Edge& y = edges[static_cast<std::size_t>(e2)];
    return x.ray != y.ray || x.index != y.index || (x.ray && x.vertical != y.vertical);
  };

  // Walk maximal runs of edges between split nodes.
  struct Run {
    std::vector<PlanePoint> points;
    std::vector<int> edges;
    SegmentKind kind;
    int index;
  };
  std::vector<Run> runs;
  for (std::size_t i = 0; i < edges.size(); ++i) {
    if (edges[i].segment >= 0) continue;
    int run_id = static_cast<int>(runs.size());
    Run run;
    run.edges.push_back(static_cast<int>(i));
    edges[i].segment = run_id;
    std::vector<PlanePoint> forward{edges[i].p, edges[i].q};
    // Forward from q, then backward from p.
    for (int pass = 0; pass < 2; ++pass) {
      int cur = static_cast<int>(i);
      PlanePoint at = pass == 0 ? edges[i].q : edges[i].p;
      while (true) {
        const auto& a = inc.at(at);
        if (is_split(a)) break;
        int next = -1;
        for (int e : a)
          if (e >= 0 && e != cur) next = e;
        if (next < 0 || edges[static_cast<std::size_t>(next)].segment >= 0) break;
        Edge& n = edges[static_cast<std::size_t>(next)];
        n.segment = run_id;
        run.edges.push_back(next);
        at = n.p == at ? n.q : n.p;
        if (pass == 0)
          forward.push_back(at);
        else
          forward.insert(forward.begin(), at);
        cur = next;
      }
    }
    const Edge& e0 = edges[i];
    run.kind = !e0.ray ? SegmentKind::Pareto : (e0.vertical ? SegmentKind::VerticalRay : SegmentKind::HorizontalRay);
    run.index = e0.index;
    const PlanePoint& s = forward.front();
    const PlanePoint& t = forward.back();
    bool reverse = run.kind == SegmentKind::Pareto ? (s.a > t.a || (s.a == t.a && s.b < t.b))
                                                  : PlanePointLess{}(t, s);
    if (reverse) std::reverse(forward.begin(), forward.end());
    run.points = simplify(forward);
    runs.push_back(std::move(run));
  }

  // Deterministic ids: by kind, then geometry.
  std::vector<std::size_t> order(runs.size());
  std::iota(order.begin(), order.end(), 0);
  std::sort(order.begin(), order.end(), [&](std::size_t x, std::size_t y) {
    if (runs[x].kind != runs[y].kind) return runs[x].kind < runs[y].kind;
    return std::lexicographical_compare(runs[x].points.begin(), runs[x].points.end(), runs[y].points.begin(),
                                        runs[y].points.end(), PlanePointLess{});
  });
  std::vector<int> new_id(runs.size());
  ParetoGrid G;
  G.box = box;
  for (std::size_t k = 0; k < order.size(); ++k) {
    new_id[order[k]] = static_cast<int>(k);
    Run& r = runs[order[k]];
    GridSegment s;
    s.id = static_cast<int>(k);
    s.kind = r.kind;
    s.points = std::move(r.points);
    s.link_index = r.index;
    G.segments.push_back(std::move(s));
  }
  for (const auto& [p, a] : inc) {
    if (!is_split(a)) continue;
    GridNode n;
    n.point = p;
    for (std::size_t d = 0; d < 4; ++d)
      if (a[d] >= 0) n.segment[d] = new_id[static_cast<std::size_t>(edges[static_cast<std::size_t>(a[d])].segment)];
    if (n.degree() == 4) G.double_points.push_back({p, n.segment[kUp], n.segment[kDown], n.segment[kLeft], n.segment[kRight]});
    G.nodes.push_back(n);
  }
  return G;
}

std::optional<int> attach_index(const std::vector<int>& before, const std::vector<int>& after) {
  if (before.size() != after.size()) return std::nullopt;
  std::optional<int> index;
  int changes = 0;
  for (std::size_t k = 0; k < before.size(); ++k) {
    int d = after[k] - before[k];
    if (d == 0) continue;
    ++changes;
    if (d == 1)
      index = static_cast<int>(k);
    else if (d == -1)
      index = static_cast<int>(k) + 1;
    else
      return std::nullopt;
  }
  if (changes != 1) return std::nullopt;
  return index;
}

namespace {

struct ValueLines {
  std::vector<Rational> xs;  // all f values and the box ends, sorted
  std::vector<Rational> ys;
};

ValueLines value_lines(const BifilteredComplex& K, const Box& box) {
  ValueLines L;
  L.xs = K.f_values();
  L.ys = K.g_values();
  for (auto* v : {&L.xs, &L.ys}) {
    v->push_back(box.lo);
    v->push_back(box.hi);
    std::sort(v->begin(), v->end());
    v->erase(std::unique(v->begin(), v->end()), v->end());
  }
  return L;
}

std::size_t position(const std::vector<Rational>& v, const Rational& x) {
  auto it = std::lower_bound(v.begin(), v.end(), x);
  if (it == v.end() || *it != x) throw Error(ErrorKind::InvalidInput, "segment leg off the vertex value lines");
  return static_cast<std::size_t>(it - v.begin());
}

std::vector<Probe> probe_with(const ParetoGrid& G, const BifilteredComplex& K, int segment, const ValueLines& L) {
  const GridSegment& s = G.segments.at(static_cast<std::size_t>(segment));
  // Each gap: fixed coordinate, interval between consecutive cross values.
  struct Gap {
    bool vertical;
    Rational fixed, fixed_prev, fixed_next, lo, hi;
  };
  std::vector<Gap> gaps;
  for (std::size_t i = 0; i + 1 < s.points.size(); ++i) {
    const PlanePoint& p = s.points[i];
    const PlanePoint& q = s.points[i + 1];
    bool vertical = p.a == q.a;
    const auto& fixed_lines = vertical ? L.xs : L.ys;
    const auto& cross_lines = vertical ? L.ys : L.xs;
    const Rational& fixed = vertical ? p.a : p.b;
    Rational lo = vertical ? min(p.b, q.b) : min(p.a, q.a);
    Rational hi = vertical ? max(p.b, q.b) : max(p.a, q.a);
    std::size_t fi = position(fixed_lines, fixed);
    if (fi == 0 || fi + 1 >= fixed_lines.size()) throw Error(ErrorKind::InvalidInput, "segment on the box boundary");
    for (std::size_t j = position(cross_lines, lo); j + 1 < cross_lines.size() && cross_lines[j + 1] <= hi; ++j)
      gaps.push_back({vertical, fixed, fixed_lines[fi - 1], fixed_lines[fi + 1], cross_lines[j], cross_lines[j + 1]});
  }
  std::vector<std::pair<std::size_t, Rational>> picks;
  const std::size_t n = gaps.size();
  if (n >= 3) {
    picks = {{0, Rational(1, 2)}, {n / 2, Rational(1, 2)}, {n - 1, Rational(1, 2)}};
  } else if (n == 2) {
    picks = {{0, Rational(1, 4)}, {0, Rational(3, 4)}, {1, Rational(1, 2)}};
  } else if (n == 1) {
    picks = {{0, Rational(1, 4)}, {0, Rational(1, 2)}, {0, Rational(3, 4)}};
  }
  std::vector<Probe> probes;
  for (const auto& [gi, frac] : picks) {
    const Gap& g = gaps[gi];
    Rational along = g.lo + (g.hi - g.lo) * frac;
    Rational delta = min(min(g.fixed - g.fixed_prev, g.fixed_next - g.fixed), min(along - g.lo, g.hi - along)) / 2;
    PlanePoint at = g.vertical ? PlanePoint{g.fixed, along} : PlanePoint{along, g.fixed};
    Probe pr;
    pr.lower = {at.a - delta, at.b - delta};
    pr.upper = {at.a + delta, at.b + delta};
    pr.betti_lower = betti_vector(slice(K, pr.lower));
    pr.betti_upper = betti_vector(slice(K, pr.upper));
    pr.index = attach_index(pr.betti_lower, pr.betti_upper);
    probes.push_back(std::move(pr));
  }
  return probes;
}

std::string describe(const Probe& p) {
  std::ostringstream os;
  os << p.lower << " -> " << p.upper << " betti [";
  for (std::size_t k = 0; k < p.betti_lower.size(); ++k) os << (k ? "," : "") << p.betti_lower[k];
  os << "] -> [";
  for (std::size_t k = 0; k < p.betti_upper.size(); ++k) os << (k ? "," : "") << p.betti_upper[k];
  os << "]";
  return os.str();
}

}  // namespace

std::vector<Probe> probe_segment(const ParetoGrid& G, const BifilteredComplex& K, int segment) {
  return probe_with(G, K, segment, value_lines(K, G.box));
}

void assign_index(ParetoGrid& G, const BifilteredComplex& K, int threads) {
  ValueLines L = value_lines(K, G.box);
  std::vector<std::vector<Probe>> probes(G.segments.size());
  parallel_for(G.segments.size(), threads,
               [&](std::size_t i) { probes[i] = probe_with(G, K, static_cast<int>(i), L); });
  for (std::size_t i = 0; i < G.segments.size(); ++i) {
    GridSegment& s = G.segments[i];
    std::optional<int> index;
    if (probes[i].size() < 3) throw Error(ErrorKind::AttachLawViolation, "segment " + std::to_string(i) + " has no probe");
    for (const Probe& p : probes[i]) {
      if (!p.index)
        throw Error(ErrorKind::AttachLawViolation, "segment " + std::to_string(i) + ": " + describe(p));
      if (index && *index != *p.index)
        throw Error(ErrorKind::IndexInconsistent, "segment " + std::to_string(i) + ": probes disagree at " + describe(p));
      index = p.index;
    }
    if (*index != s.link_index)
      throw Error(ErrorKind::IndexInconsistent, "segment " + std::to_string(i) + ": probes give " +
                                                    std::to_string(*index) + ", link gives " +
                                                    std::to_string(s.link_index));
    s.index = index;
  }
}

void detect_obstacles(ParetoGrid& G) {
  G.obstacles.clear();
  G.joins.clear();
  for (const GridNode& n : G.nodes) {
    if (n.degree() != 2) continue;
    const auto& a = n.segment;
    auto jump = [&](const char* what) {
      throw Error(ErrorKind::IndexJumpViolation, std::string(what) + " at " + where(n.point));
    };
    if ((a[kLeft] >= 0 && a[kUp] >= 0) || (a[kDown] >= 0 && a[kRight] >= 0)) {
      int lower = a[kLeft] >= 0 ? a[kLeft] : a[kDown];
      int upper = a[kLeft] >= 0 ? a[kUp] : a[kRight];
      int diff = G.index_of(upper) - G.index_of(lower);
      if (diff == 0) continue;
      if (diff != 1) jump("index of the upper branch does not exceed the lower one by exactly 1");
      ObstacleKind kind = (!G.is_ray(lower) && !G.is_ray(upper)) ? ObstacleKind::Cusp : ObstacleKind::Pseudocusp;
      G.obstacles.push_back({n.point, kind, lower, upper});
      continue;
    }
    int e1 = -1, e2 = -1;
    for (int e : a)
      if (e >= 0) (e1 < 0 ? e1 : e2) = e;
    if (G.index_of(e1) != G.index_of(e2)) jump("index changes at a non-reversal node");
    if (a[kRight] >= 0 && a[kUp] >= 0 && G.is_ray(a[kUp]) != G.is_ray(a[kRight])) {
      bool vertical = G.is_ray(a[kUp]);
      G.joins.push_back({n.point, vertical, vertical ? a[kRight] : a[kUp], vertical ? a[kUp] : a[kRight]});
    }
  }
}

ParetoGrid build_grid(const SurfaceComplex& S, int threads) {
  Box box = enclosing_box(S.complex().all_values());
  ParetoGrid G = split_segments(change_locus(S, box), box);
  assign_index(G, S.complex(), threads);
  detect_obstacles(G);
  return G;
}

ComplementLocator::ComplementLocator(const ParetoGrid& G) {
  xs_ = {G.box.lo, G.box.hi};
  ys_ = {G.box.lo, G.box.hi};
  for (const auto& s : G.segments)
    for (const auto& p : s.points) {
      xs_.push_back(p.a);
      ys_.push_back(p.b);
    }
  for (auto* v : {&xs_, &ys_}) {
    std::sort(v->begin(), v->end());
    v->erase(std::unique(v->begin(), v->end()), v->end());
  }
  nx_ = xs_.size() - 1;
  ny_ = ys_.size() - 1;
  vblock_.assign(xs_.size() * ny_, 0);
  hblock_.assign(ys_.size() * nx_, 0);
  auto pos = [](const std::vector<Rational>& v, const Rational& x) {
    return static_cast<std::size_t>(std::lower_bound(v.begin(), v.end(), x) - v.begin());
  };
  for (const auto& s : G.segments)
    for (std::size_t k = 0; k + 1 < s.points.size(); ++k) {
      const PlanePoint& p = s.points[k];
      const PlanePoint& q = s.points[k + 1];
      if (p.a == q.a) {
        std::size_t i = pos(xs_, p.a);
        for (std::size_t j = pos(ys_, min(p.b, q.b)); j < pos(ys_, max(p.b, q.b)); ++j) vblock_[i * ny_ + j] = 1;
      } else {
        std::size_t j = pos(ys_, p.b);
        for (std::size_t i = pos(xs_, min(p.a, q.a)); i < pos(xs_, max(p.a, q.a)); ++i) hblock_[j * nx_ + i] = 1;
      }
    }
  std::vector<std::size_t> parent(nx_ * ny_);
  std::iota(parent.begin(), parent.end(), 0);
  auto find = [&](std::size_t x) {
    while (parent[x] != x) x = parent[x] = parent[parent[x]];
    return x;
  };
  auto unite = [&](std::size_t x, std::size_t y) {
    x = find(x);
    y = find(y);
    if (x != y) parent[std::max(x, y)] = std::min(x, y);
  };
  for (std::size_t j = 0; j < ny_; ++j)
    for (std::size_t i = 0; i < nx_; ++i) {
      if (i + 1 < nx_ && !vblock_[(i + 1) * ny_ + j]) unite(j * nx_ + i, j * nx_ + i + 1);
      if (j + 1 < ny_ && !hblock_[(j + 1) * nx_ + i]) unite(j * nx_ + i, (j + 1) * nx_ + i);
    }
  cell_component_.assign(nx_ * ny_, -1);
  std::vector<int> label(nx_ * ny_, -1);
  for (std::size_t c = 0; c < nx_ * ny_; ++c) {
    std::size_t r = find(c);
    if (label[r] < 0) {
      label[r] = num_components_++;
      component_cells_.emplace_back();
    }
    cell_component_[c] = label[r];
    component_cells_[static_cast<std::size_t>(label[r])].push_back(static_cast<int>(c));
  }
}

int ComplementLocator::component(const PlanePoint& p) const {
  if (p.a < xs_.front() || p.a > xs_.back() || p.b < ys_.front() || p.b > ys_.back()) {
    std::ostringstream os;
    os << p << " lies outside the box";
    throw Error(ErrorKind::OutOfDomain, os.str());
  }
  std::size_t i = static_cast<std::size_t>(std::upper_bound(xs_.begin(), xs_.end(), p.a) - xs_.begin()) - 1;
  std::size_t j = static_cast<std::size_t>(std::upper_bound(ys_.begin(), ys_.end(), p.b) - ys_.begin()) - 1;
  bool onx = xs_[i] == p.a, ony = ys_[j] == p.b;
  auto vb = [&](std::size_t line, std::size_t row) { return row < ny_ && vblock_[line * ny_ + row]; };
  auto hb = [&](std::size_t line, std::size_t col) { return col < nx_ && hblock_[line * nx_ + col]; };
  bool on = false;
  if (onx && !ony) on = vb(i, j);
  if (ony && !onx) on = hb(j, i);
  if (onx && ony) on = vb(i, j) || (j > 0 && vb(i, j - 1)) || hb(j, i) || (i > 0 && hb(j, i - 1));
  if (on) {
    std::ostringstream os;
    os << p << " lies on the grid";
    throw Error(ErrorKind::OnGrid, os.str());
  }
  i = std::min(i, nx_ - 1);
  j = std::min(j, ny_ - 1);
  return cell_component_[j * nx_ + i];
}

PlanePoint ComplementLocator::sample(int component, Rng& rng) const {
  const auto& cells = component_cells_.at(static_cast<std::size_t>(component));
  auto c = static_cast<std::size_t>(cells[rng.below(cells.size())]);
  std::size_t i = c % nx_, j = c / nx_;
  return {xs_[i] + (xs_[i + 1] - xs_[i]) * rng.open_unit(), ys_[j] + (ys_[j + 1] - ys_[j]) * rng.open_unit()};
}

int complement_component(const ParetoGrid& G, const PlanePoint& p) { return ComplementLocator(G).component(p); }

}  // namespace pareto
