#include "pareto/curves.hpp"

#include <algorithm>
#include <map>
#include <numeric>
#include <tuple>

#include "pareto/error.hpp"

namespace pareto {

namespace {

std::string where(const PlanePoint& p) {
  return "(" + to_string(p.a) + ", " + to_string(p.b) + ")";
}

std::size_t at(int i) { return static_cast<std::size_t>(i); }

int find_root(std::vector<int>& parent, int x) {
  while (parent[at(x)] != x) {
    parent[at(x)] = parent[at(parent[at(x)])];
    x = parent[at(x)];
  }
  return x;
}

void unite(std::vector<int>& parent, int x, int y) {
  x = find_root(parent, x);
  y = find_root(parent, y);
  if (x != y) parent[at(std::max(x, y))] = std::min(x, y);
}

}  // namespace

std::vector<HitEvent> crossings(const MonotoneCurve& c, const ParetoGrid& G) {
  std::vector<HitEvent> events;
  for (const GridSegment& s : G.segments) {
    if (!s.index) throw Error(ErrorKind::InvalidInput, "segment " + std::to_string(s.id) + " has no index");
    for (const CurveHit& h : segment_curve_intersections(c, s.points)) {
      if (h.point == s.points.front() || h.point == s.points.back()) {
        for (const Obstacle& o : G.obstacles)
          if (o.location == h.point) throw Error(ErrorKind::ObstacleHit, "curve meets obstacle at " + where(h.point));
        for (const DoublePoint& d : G.double_points)
          if (d.point == h.point)
            throw Error(ErrorKind::DoublePointHit, "curve meets double point at " + where(h.point));
        throw Error(ErrorKind::DegenerateContact, "curve meets a segment end at " + where(h.point));
      }
      events.push_back({h.t, h.point, s.id, *s.index});
    }
  }
  std::sort(events.begin(), events.end(), [](const HitEvent& x, const HitEvent& y) { return x.t < y.t; });
  for (std::size_t i = 1; i < events.size(); ++i)
    if (events[i].t == events[i - 1].t)
      throw Error(ErrorKind::DegenerateContact, "two crossings at height " + to_string(events[i].t));
  return events;
}

LabeledDiagram labeled_diagram(const BifilteredComplex& K, const MonotoneCurve& c, const ParetoGrid& G) {
  const std::vector<HitEvent> events = crossings(c, G);
  // A curve that stops early is extended past every vertex and its diagram is
  // cut at the curve's end.
  std::vector<PlanePoint> ext = c.vertices();
  Rational top = max(c.back().a, c.back().b) + 1;
  for (const Rational& v : K.all_values()) top = max(top, Rational(v + 1));
  ext.push_back({top, top});
  Diagram D = persistence(K, curve_filtration(K, MonotoneCurve(std::move(ext))));
  std::erase_if(D.bars, [&](const Bar& b) { return b.birth > c.h_max(); });
  for (Bar& b : D.bars)
    if (b.death && *b.death > c.h_max()) b.death.reset();
  std::vector<char> used(events.size(), 0);
  auto match = [&](const Rational& t) -> const HitEvent& {
    auto it = std::lower_bound(events.begin(), events.end(), t,
                               [](const HitEvent& e, const Rational& s) { return e.t < s; });
    if (it == events.end() || it->t != t)
      throw Error(ErrorKind::UnmatchedEndpoint, "no crossing at bar endpoint height " + to_string(t));
    const auto i = static_cast<std::size_t>(it - events.begin());
    if (used[i]) throw Error(ErrorKind::UnmatchedEndpoint, "crossing at " + to_string(t) + " ends two bars");
    used[i] = 1;
    return *it;
  };
  LabeledDiagram out;
  for (const Bar& b : D.bars) {
    LabeledBar lb;
    lb.dim = b.dim;
    lb.birth = match(b.birth);
    if (lb.birth.index != b.dim)
      throw Error(ErrorKind::IndexInconsistent, "dim " + std::to_string(b.dim) + " bar born on segment " +
                                                    std::to_string(lb.birth.segment) + " of index " +
                                                    std::to_string(lb.birth.index));
    if (b.death) {
      lb.death = match(*b.death);
      if (lb.death->index != b.dim + 1)
        throw Error(ErrorKind::IndexInconsistent, "dim " + std::to_string(b.dim) + " bar killed on segment " +
                                                      std::to_string(lb.death->segment) + " of index " +
                                                      std::to_string(lb.death->index));
    }
    out.bars.push_back(std::move(lb));
  }
  for (std::size_t i = 0; i < events.size(); ++i)
    if (!used[i])
      throw Error(ErrorKind::UnmatchedEndpoint, "crossing of segment " + std::to_string(events[i].segment) +
                                                    " at " + to_string(events[i].t) + " ends no bar");
  std::sort(out.bars.begin(), out.bars.end(), [](const LabeledBar& x, const LabeledBar& y) {
    return std::tie(x.birth.t, x.dim) < std::tie(y.birth.t, y.dim);
  });
  return out;
}

// ---------------------------------------------------------------------------
// Markers

std::vector<int> above_set(const MonotoneCurve& c, const std::vector<PlanePoint>& obstacles) {
  std::vector<int> out;
  for (std::size_t i = 0; i < obstacles.size(); ++i) {
    const Rational y = c.g_at_f(obstacles[i].a);
    if (y == obstacles[i].b) throw Error(ErrorKind::ObstacleHit, "curve meets obstacle at " + where(obstacles[i]));
    if (y > obstacles[i].b) out.push_back(static_cast<int>(i));
  }
  return out;
}

namespace {

bool northwest_of(const PlanePoint& p, const PlanePoint& q) { return p.a < q.a && p.b > q.b; }

Chain sorted_chain(Chain chain, const std::vector<PlanePoint>& obstacles) {
  std::sort(chain.begin(), chain.end(), [&](int x, int y) {
    return natural_height(obstacles[at(x)]) < natural_height(obstacles[at(y)]);
  });
  return chain;
}

Chain marker_of_set(const std::vector<int>& above, const std::vector<PlanePoint>& obstacles) {
  Chain out;
  for (int o : above) {
    bool dominated = false;
    for (int p : above)
      if (northwest_of(obstacles[at(p)], obstacles[at(o)])) dominated = true;
    if (!dominated) out.push_back(o);
  }
  return sorted_chain(std::move(out), obstacles);
}

}  // namespace

Chain marker_of(const MonotoneCurve& c, const std::vector<PlanePoint>& obstacles) {
  return marker_of_set(above_set(c, obstacles), obstacles);
}

// ---------------------------------------------------------------------------
// Rotated graphs

Rational RotatedGraph::eval(const Rational& s) const {
  if (t.empty() || s < t.front() || s > t.back())
    throw Error(ErrorKind::OutOfDomain, "height " + to_string(s) + " outside graph domain");
  auto it = std::lower_bound(t.begin(), t.end(), s);
  const auto j = static_cast<std::size_t>(it - t.begin());
  if (*it == s) return x[j];
  const Rational lam = (s - t[j - 1]) / (t[j] - t[j - 1]);
  return x[j - 1] + lam * (x[j] - x[j - 1]);
}

MonotoneCurve RotatedGraph::to_curve() const {
  std::vector<PlanePoint> pts;
  for (std::size_t i = 0; i < t.size(); ++i) pts.push_back(unrotate45({t[i], x[i]}));
  return MonotoneCurve(std::move(pts));
}

RotatedGraph to_graph(const MonotoneCurve& c) {
  RotatedGraph g;
  for (const PlanePoint& p : c.vertices()) {
    g.t.push_back(p.a + p.b);
    g.x.push_back(p.b - p.a);
  }
  return g;
}

namespace {

RotatedGraph simplify(RotatedGraph g) {
  RotatedGraph out;
  for (std::size_t i = 0; i < g.t.size(); ++i) {
    if (!out.t.empty() && out.t.back() == g.t[i]) continue;
    while (out.t.size() >= 2) {
      const std::size_t n = out.t.size();
      const Rational s1 = (out.x[n - 1] - out.x[n - 2]) / (out.t[n - 1] - out.t[n - 2]);
      const Rational s2 = (g.x[i] - out.x[n - 1]) / (g.t[i] - out.t[n - 1]);
      if (s1 != s2) break;
      out.t.pop_back();
      out.x.pop_back();
    }
    out.t.push_back(g.t[i]);
    out.x.push_back(g.x[i]);
  }
  return out;
}

RotatedGraph combine(const RotatedGraph& f, const RotatedGraph& g, bool take_max) {
  if (f.t.empty() || g.t.empty() || f.t.front() != g.t.front() || f.t.back() != g.t.back())
    throw Error(ErrorKind::InvalidInput, "graphs with different domains");
  std::vector<Rational> ts;
  std::merge(f.t.begin(), f.t.end(), g.t.begin(), g.t.end(), std::back_inserter(ts));
  ts.erase(std::unique(ts.begin(), ts.end()), ts.end());
  RotatedGraph out;
  Rational prev_d;
  for (std::size_t i = 0; i < ts.size(); ++i) {
    const Rational fv = f.eval(ts[i]);
    const Rational gv = g.eval(ts[i]);
    const Rational d = fv - gv;
    if (i > 0 && sgn(prev_d) * sgn(d) < 0) {
      const Rational tc = ts[i - 1] + (ts[i] - ts[i - 1]) * prev_d / (prev_d - d);
      out.t.push_back(tc);
      out.x.push_back(f.eval(tc));
    }
    out.t.push_back(ts[i]);
    out.x.push_back((d > 0) == take_max ? fv : gv);
    prev_d = d;
  }
  return simplify(std::move(out));
}

// Tent c - slope |t - t0| on [ts, te].
RotatedGraph tent(const Rational& ts, const Rational& te, const Rational& t0, const Rational& c,
                  const Rational& slope) {
  RotatedGraph g;
  auto value = [&](const Rational& s) { return Rational(c - slope * abs(Rational(s - t0))); };
  g.t.push_back(ts);
  g.x.push_back(value(ts));
  if (ts < t0 && t0 < te) {
    g.t.push_back(t0);
    g.x.push_back(c);
  }
  g.t.push_back(te);
  g.x.push_back(value(te));
  return g;
}

// The box envelope: zero at both ends, slope +-s (sign > 0 bulges upward).
RotatedGraph envelope(const Rational& ts, const Rational& te, const Rational& s, int sign) {
  const Rational tm = (ts + te) / 2;
  RotatedGraph g;
  g.t = {ts, tm, te};
  g.x = {Rational(0), Rational(sign * s * (tm - ts)), Rational(0)};
  return g;
}

RotatedGraph negate(RotatedGraph g) {
  for (Rational& v : g.x) v = -v;
  return g;
}

}  // namespace

RotatedGraph pointwise_max(const RotatedGraph& f, const RotatedGraph& g) { return combine(f, g, true); }
RotatedGraph pointwise_min(const RotatedGraph& f, const RotatedGraph& g) { return combine(f, g, false); }

ComponentBand component_band(const Chain& chain_in, const std::vector<PlanePoint>& obstacles, const Box& box,
                             Rational eps, int halvings) {
  for (int o : chain_in)
    if (o < 0 || at(o) >= obstacles.size()) throw Error(ErrorKind::InvalidInput, "chain index out of range");
  const Chain chain = sorted_chain(chain_in, obstacles);
  for (std::size_t i = 1; i < chain.size(); ++i)
    if (!strictly_precedes(obstacles[at(chain[i - 1])], obstacles[at(chain[i])]))
      throw Error(ErrorKind::InvalidInput, "obstacles " + where(obstacles[at(chain[i - 1])]) + " and " +
                                               where(obstacles[at(chain[i])]) + " are not comparable");

  std::vector<char> in_above(obstacles.size(), 0);
  for (int c : chain) in_above[at(c)] = 1;
  for (std::size_t o = 0; o < obstacles.size(); ++o)
    for (int c : chain)
      if (northwest_of(obstacles[at(c)], obstacles[o])) in_above[o] = 1;

  const Rational ts = 2 * box.lo;
  const Rational te = 2 * box.hi;
  for (int attempt = 0; attempt <= halvings; ++attempt, eps /= 2) {
    const Rational s = 1 - eps;
    RotatedGraph lower = negate(envelope(ts, te, s, 1));
    RotatedGraph upper = envelope(ts, te, s, 1);
    for (int c : chain) {
      const RotatedPoint r = rotate45(obstacles[at(c)]);
      lower = pointwise_max(lower, tent(ts, te, r.t, r.x + eps, s));
    }
    for (std::size_t o = 0; o < obstacles.size(); ++o) {
      if (in_above[o]) continue;
      const RotatedPoint r = rotate45(obstacles[o]);
      upper = pointwise_min(upper, negate(tent(ts, te, r.t, -(r.x - eps), s)));
    }
    bool ok = lower.x.front() == 0 && lower.x.back() == 0 && upper.x.front() == 0 && upper.x.back() == 0;
    for (std::size_t o = 0; ok && o < obstacles.size(); ++o) {
      const RotatedPoint r = rotate45(obstacles[o]);
      if (r.t <= ts || r.t >= te) {
        ok = false;
        break;
      }
      const Rational lo = lower.eval(r.t), hi = upper.eval(r.t);
      ok = in_above[o] ? (lo > r.x && hi > r.x) : (lo < r.x && hi < r.x);
    }
    for (std::size_t i = 0; ok && i < lower.t.size(); ++i) ok = lower.x[i] <= upper.eval(lower.t[i]);
    for (std::size_t i = 0; ok && i < upper.t.size(); ++i) ok = lower.eval(upper.t[i]) <= upper.x[i];
    if (ok) {
      std::vector<int> above;
      for (std::size_t o = 0; o < obstacles.size(); ++o)
        if (in_above[o]) above.push_back(static_cast<int>(o));
      ok = marker_of_set(above, obstacles) == chain;
    }
    if (ok) return {chain, eps, std::move(lower), std::move(upper)};
  }
  throw Error(ErrorKind::EpsilonTooLarge, "no slack realizes the chain after " + std::to_string(halvings) +
                                              " halvings");
}

MonotoneCurve realize_chain(const Chain& chain, const std::vector<PlanePoint>& obstacles, const Box& box,
                            Rational eps, int halvings) {
  return component_band(chain, obstacles, box, std::move(eps), halvings).lower.to_curve();
}

MonotoneCurve clamp_to_band(const MonotoneCurve& c, const ComponentBand& band) {
  return pointwise_max(band.lower, pointwise_min(band.upper, to_graph(c))).to_curve();
}

MonotoneCurve random_curve_in(const ComponentBand& band, Rng& rng) {
  const Rational ts = band.lower.t.front();
  const Rational te = band.lower.t.back();
  const Rational s = 1 - band.eps;
  std::vector<Rational> us;
  for (int i = 0; i < 6; ++i) us.push_back(rng.open_unit());
  std::sort(us.begin(), us.end());
  us.erase(std::unique(us.begin(), us.end()), us.end());
  RotatedGraph h;
  h.t.push_back(ts);
  h.x.push_back(0);
  for (const Rational& u : us) h.t.push_back(ts + (te - ts) * u);
  h.t.push_back(te);
  for (std::size_t i = 1; i < h.t.size(); ++i) {
    const Rational slope = s * (2 * rng.open_unit() - 1);
    h.x.push_back(h.x.back() + slope * (h.t[i] - h.t[i - 1]));
  }
  return pointwise_max(band.lower, pointwise_min(band.upper, h)).to_curve();
}

std::vector<Chain> enumerate_chains(const std::vector<PlanePoint>& obstacles) {
  std::vector<int> order(obstacles.size());
  std::iota(order.begin(), order.end(), 0);
  order = sorted_chain(order, obstacles);
  std::vector<Chain> out{{}};
  // Extend each chain by obstacles of greater height that dominate its top.
  for (std::size_t i = 0; i < out.size(); ++i) {
    const Chain cur = out[i];
    std::size_t start = 0;
    if (!cur.empty()) start = static_cast<std::size_t>(std::find(order.begin(), order.end(), cur.back()) - order.begin()) + 1;
    for (std::size_t j = start; j < order.size(); ++j) {
      if (!cur.empty() && !strictly_precedes(obstacles[at(cur.back())], obstacles[at(order[j])])) continue;
      Chain next = cur;
      next.push_back(order[j]);
      out.push_back(std::move(next));
    }
  }
  std::sort(out.begin(), out.end(), [](const Chain& x, const Chain& y) {
    return x.size() != y.size() ? x.size() < y.size() : x < y;
  });
  return out;
}

std::vector<PlanePoint> obstacle_locations(const ParetoGrid& G) {
  std::vector<PlanePoint> out;
  for (const Obstacle& o : G.obstacles) out.push_back(o.location);
  return out;
}

// ---------------------------------------------------------------------------
// Branches and augmentation

std::vector<int> branches(const ParetoGrid& G, const std::vector<Gluing>& gluing) {
  if (gluing.size() != G.double_points.size())
    throw Error(ErrorKind::InvalidInput, "one gluing per double point expected");
  std::vector<int> parent(G.segments.size());
  std::iota(parent.begin(), parent.end(), 0);
  for (const GridNode& n : G.nodes) {
    if (n.degree() != 2) continue;
    const int u = n.at(Direction::Up), d = n.at(Direction::Down);
    const int l = n.at(Direction::Left), r = n.at(Direction::Right);
    if ((l >= 0 && u >= 0) || (d >= 0 && r >= 0)) continue;  // reversal corner
    std::vector<int> inc;
    for (int s : n.segment)
      if (s >= 0) inc.push_back(s);
    unite(parent, inc[0], inc[1]);
  }
  for (std::size_t i = 0; i < G.double_points.size(); ++i) {
    const DoublePoint& d = G.double_points[i];
    if (gluing[i] == Gluing::Straight) {
      unite(parent, d.up, d.down);
      unite(parent, d.left, d.right);
    } else {
      unite(parent, d.left, d.down);
      unite(parent, d.up, d.right);
    }
  }
  std::vector<int> out(G.segments.size());
  for (std::size_t s = 0; s < out.size(); ++s) out[s] = find_root(parent, static_cast<int>(s));
  return out;
}

MonotoneCurve detour_curve(const Box& box, const PlanePoint& p, const Rational& r, bool above) {
  const PlanePoint q1{p.a - r, p.b - r};
  const PlanePoint q2{p.a + r, p.b + r};
  const PlanePoint via = above ? PlanePoint{p.a - r / 2, p.b + r / 2} : PlanePoint{p.a + r / 2, p.b - r / 2};
  return MonotoneCurve({box.lower_corner(), q1, via, q2, box.upper_corner()});
}

Rational clearance(const BifilteredComplex& K, const Box& box, const PlanePoint& p) {
  Rational best = min(min(Rational(p.a - box.lo), Rational(box.hi - p.a)),
                      min(Rational(p.b - box.lo), Rational(box.hi - p.b)));
  for (const Rational& v : K.f_values())
    if (v != p.a && abs(Rational(v - p.a)) < best) best = abs(Rational(v - p.a));
  for (const Rational& v : K.g_values())
    if (v != p.b && abs(Rational(v - p.b)) < best) best = abs(Rational(v - p.b));
  if (best <= 0) throw Error(ErrorKind::OutOfDomain, where(p) + " is not inside the box");
  return best / 2;
}

namespace {

// Role of a local crossing in the diagram: birth or death, dimension, and the
// other endpoint (-2 when it is local as well, -1 when the bar is essential).
using Signature = std::tuple<int, int, int, Rational>;

std::optional<Signature> local_signature(const LabeledDiagram& d, int segment, const Rational& t1,
                                         const Rational& t2) {
  auto local = [&](const HitEvent& e) { return e.segment >= 0 && t1 < e.t && e.t < t2; };
  for (const LabeledBar& b : d.bars) {
    if (b.birth.segment == segment && local(b.birth)) {
      if (!b.death) return Signature{0, b.dim, -1, Rational(0)};
      if (local(*b.death)) return Signature{0, b.dim, -2, Rational(0)};
      return Signature{0, b.dim, b.death->segment, b.death->t};
    }
    if (b.death && b.death->segment == segment && local(*b.death)) {
      if (local(b.birth)) return Signature{1, b.dim, -2, Rational(0)};
      return Signature{1, b.dim, b.birth.segment, b.birth.t};
    }
  }
  return std::nullopt;
}

}  // namespace

AugmentedPairing augment_at_double_points(const BifilteredComplex& K, const ParetoGrid& G, const Chain& component) {
  AugmentedPairing out;
  out.gluing.assign(G.double_points.size(), Gluing::Straight);
  const ComponentBand band = component_band(component, obstacle_locations(G), G.box);
  for (std::size_t i = 0; i < G.double_points.size(); ++i) {
    const DoublePoint& dp = G.double_points[i];
    const int k = G.index_of(dp.up);
    if (G.index_of(dp.down) != k || G.index_of(dp.left) != k || G.index_of(dp.right) != k) continue;
    const RotatedPoint rp = rotate45(dp.point);
    if (!(band.lower.eval(rp.t) < rp.x && rp.x < band.upper.eval(rp.t))) continue;  // no curve of C comes near
    Rational r = clearance(K, G.box, dp.point);
    bool decided = false;
    for (int attempt = 0; attempt < 40 && !decided; ++attempt, r /= 2) {
      const MonotoneCurve se = clamp_to_band(detour_curve(G.box, dp.point, r, false), band);
      const MonotoneCurve nw = clamp_to_band(detour_curve(G.box, dp.point, r, true), band);
      const PlanePoint q1{dp.point.a - r, dp.point.b - r}, q2{dp.point.a + r, dp.point.b + r};
      if (!se.passes_through(q1) || !se.passes_through(q2) || !nw.passes_through(q1) || !nw.passes_through(q2) ||
          !se.passes_through({dp.point.a + r / 2, dp.point.b - r / 2}) ||
          !nw.passes_through({dp.point.a - r / 2, dp.point.b + r / 2}))
        continue;
      const Rational t1 = natural_height(q1), t2 = natural_height(q2);
      const LabeledDiagram dse = labeled_diagram(K, se, G);
      const LabeledDiagram dnw = labeled_diagram(K, nw, G);
      const auto sd = local_signature(dse, dp.down, t1, t2), sr = local_signature(dse, dp.right, t1, t2);
      const auto nu = local_signature(dnw, dp.up, t1, t2), nl = local_signature(dnw, dp.left, t1, t2);
      if (!sd || !sr || !nu || !nl)
        throw Error(ErrorKind::LabelMismatch, "probe curves miss the double point at " + where(dp.point));
      if (*sd == *nu && *sr == *nl) {
        out.gluing[i] = Gluing::Straight;
      } else if (*sd == *nl && *sr == *nu) {
        out.gluing[i] = Gluing::Kiss;
      } else {
        throw Error(ErrorKind::LabelMismatch, "no gluing explains the double point at " + where(dp.point));
      }
      decided = true;
    }
    if (!decided)
      throw Error(ErrorKind::LabelMismatch, "probe curves do not fit the component at " + where(dp.point));
  }
  out.branch = branches(G, out.gluing);
  return out;
}

std::vector<BarLabel> bar_labels(const LabeledDiagram& d, const AugmentedPairing& pairing) {
  std::vector<BarLabel> out;
  for (const LabeledBar& b : d.bars)
    out.push_back({b.dim, pairing.branch[at(b.birth.segment)], b.death ? pairing.branch[at(b.death->segment)] : -1});
  return out;
}

std::vector<int> identify(const LabeledDiagram& d1, const LabeledDiagram& d2, const AugmentedPairing& pairing) {
  const std::vector<BarLabel> l1 = bar_labels(d1, pairing), l2 = bar_labels(d2, pairing);
  auto ordered = [](const LabeledDiagram& d, const std::vector<BarLabel>& l) {
    std::vector<int> idx(l.size());
    std::iota(idx.begin(), idx.end(), 0);
    std::stable_sort(idx.begin(), idx.end(), [&](int x, int y) {
      if (l[at(x)] != l[at(y)]) return l[at(x)] < l[at(y)];
      return d.bars[at(x)].birth.t < d.bars[at(y)].birth.t;
    });
    return idx;
  };
  const std::vector<int> o1 = ordered(d1, l1), o2 = ordered(d2, l2);
  if (l1.size() != l2.size())
    throw Error(ErrorKind::LabelMismatch, "diagrams have " + std::to_string(l1.size()) + " and " +
                                              std::to_string(l2.size()) + " bars");
  std::vector<int> map(l1.size());
  for (std::size_t i = 0; i < o1.size(); ++i) {
    const BarLabel& x = l1[at(o1[i])];
    const BarLabel& y = l2[at(o2[i])];
    if (x != y)
      throw Error(ErrorKind::LabelMismatch, "bar (dim " + std::to_string(x.dim) + ", " + std::to_string(x.birth) +
                                                " -> " + std::to_string(x.death) + ") has no partner");
    map[at(o1[i])] = o2[i];
  }
  return map;
}

// ---------------------------------------------------------------------------
// Obstacle crossing

CrossingDelta obstacle_crossing_delta(const BifilteredComplex& K, const ParetoGrid& G, const Obstacle& o,
                                      const MonotoneCurve& c_low, const MonotoneCurve& c_high) {
  const LabeledDiagram low = labeled_diagram(K, c_low, G);
  const LabeledDiagram high = labeled_diagram(K, c_high, G);
  using Key = std::tuple<int, int, int>;
  auto key = [](const LabeledBar& b) { return Key{b.dim, b.birth.segment, b.death ? b.death->segment : -1}; };
  std::map<Key, int> count;
  for (const LabeledBar& b : high.bars) ++count[key(b)];
  for (const LabeledBar& b : low.bars) --count[key(b)];
  std::vector<std::pair<Key, int>> diff;
  for (const auto& [k, n] : count)
    if (n != 0) diff.emplace_back(k, n);
  if (diff.size() != 1 || std::abs(diff[0].second) != 1)
    throw Error(ErrorKind::DeltaMismatch, "diagrams around obstacle " + where(o.location) + " differ in " +
                                              std::to_string(diff.size()) + " bar labels");
  const Key expected{G.index_of(o.lower), o.lower, o.upper};
  if (diff[0].first != expected)
    throw Error(ErrorKind::DeltaMismatch, "extra bar at obstacle " + where(o.location) +
                                              " is not born on the lower branch and killed on the upper one");
  CrossingDelta out;
  out.extra_above = diff[0].second > 0;
  const LabeledDiagram& d = out.extra_above ? high : low;
  bool found = false;
  for (const LabeledBar& b : d.bars) {
    if (key(b) != expected) continue;
    if (!found || (b.death->t - b.birth.t) < (out.bar.death->t - out.bar.birth.t)) out.bar = b;
    found = true;
  }
  return out;
}

// ---------------------------------------------------------------------------
// Rank

MonotoneCurve curve_through(const BifilteredComplex& K, const PlanePoint& c1_in, const PlanePoint& c2_in) {
  if (!precedes(c1_in, c2_in))
    throw Error(ErrorKind::NotComparable, where(c1_in) + " does not precede " + where(c2_in));
  const Box box = enclosing_box(K.all_values());
  const std::vector<Rational> all = K.all_values();
  const Rational vmin = *std::min_element(all.begin(), all.end());
  const Rational vmax = *std::max_element(all.begin(), all.end());
  // Coordinates beyond the extreme values see the same slice anywhere there.
  auto inside = [&](const Rational& v) {
    if (v <= box.lo) return Rational((box.lo + vmin) / 2);
    if (v >= box.hi) return Rational((box.hi + vmax) / 2);
    return v;
  };
  auto nudge = [&](const Rational& v, const std::vector<Rational>& values) {
    Rational next = box.hi;
    for (const Rational& w : values)
      if (w > v && w < next) next = w;
    return Rational((next - v) / 2);
  };
  const PlanePoint c1{inside(c1_in.a), inside(c1_in.b)};
  PlanePoint c2{inside(c2_in.a), inside(c2_in.b)};
  if (c2.a == c1.a) c2.a += nudge(c2.a, K.f_values());
  if (c2.b == c1.b) c2.b += nudge(c2.b, K.g_values());
  return MonotoneCurve({box.lower_corner(), c1, c2, box.upper_corner()});
}

int rank_via_curve(const BifilteredComplex& K, const ParetoGrid& G, const PlanePoint& c1, const PlanePoint& c2,
                   int k) {
  const MonotoneCurve base = curve_through(K, c1, c2);
  const std::vector<PlanePoint>& v = base.vertices();
  const Rational t1 = natural_height(v[1]), t2 = natural_height(v[2]);
  Rng rng(0x5EED);
  MonotoneCurve c = base;
  for (int attempt = 0; attempt < 64; ++attempt) {
    if (attempt > 0) {
      auto between = [&](const PlanePoint& p, const PlanePoint& q) {
        return PlanePoint{p.a + rng.open_unit() * (q.a - p.a), p.b + rng.open_unit() * (q.b - p.b)};
      };
      c = MonotoneCurve({v[0], between(v[0], v[1]), v[1], v[2], between(v[2], v[3]), v[3]});
    }
    LabeledDiagram d;
    try {
      d = labeled_diagram(K, c, G);
    } catch (const Error& e) {
      if (e.kind() == ErrorKind::ObstacleHit || e.kind() == ErrorKind::DoublePointHit ||
          e.kind() == ErrorKind::DegenerateContact)
        continue;
      throw;
    }
    int n = 0;
    for (const LabeledBar& b : d.bars)
      if (b.dim == k && b.birth.t <= t1 && (!b.death || b.death->t > t2)) ++n;
    return n;
  }
  throw Error(ErrorKind::NoAvoidingCurve, "no curve through " + where(c1) + " and " + where(c2) +
                                              " avoids the grid nodes");
}

}  // namespace pareto
