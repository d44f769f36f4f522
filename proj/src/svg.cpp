#include "pareto/svg.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <numeric>
#include <sstream>

namespace pareto {

namespace {

constexpr double kSize = 600;
constexpr double kMargin = 30;

const char* index_color(std::optional<int> k) {
  if (!k) return "#999999";
  switch (*k) {
    case 0: return "#1f77b4";
    case 1: return "#2ca02c";
    case 2: return "#d62728";
    default: return "#9467bd";
  }
}

std::string num(double x) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.3f", x);
  return buf;
}

// Affine map from [lo, hi]^2 onto the canvas, b pointing up.
struct Frame {
  double lo, hi;
  double x(double a) const { return kMargin + (a - lo) / (hi - lo) * (kSize - 2 * kMargin); }
  double y(double b) const { return kSize - kMargin - (b - lo) / (hi - lo) * (kSize - 2 * kMargin); }
};

std::string open_svg() {
  return "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" + num(kSize) + "\" height=\"" + num(kSize) +
         "\" viewBox=\"0 0 " + num(kSize) + " " + num(kSize) + "\">\n<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";
}

}  // namespace

std::string grid_svg(const ParetoGrid& G) {
  const Frame F{to_double(G.box.lo), to_double(G.box.hi)};
  std::ostringstream out;
  out << open_svg();
  out << "<rect x=\"" << num(F.x(F.lo)) << "\" y=\"" << num(F.y(F.hi)) << "\" width=\"" << num(F.x(F.hi) - F.x(F.lo))
      << "\" height=\"" << num(F.y(F.lo) - F.y(F.hi)) << "\" fill=\"none\" stroke=\"#cccccc\"/>\n";
  for (const GridSegment& s : G.segments) {
    out << "<polyline fill=\"none\" stroke-width=\"2\" stroke=\"" << index_color(s.index) << "\"";
    if (s.kind != SegmentKind::Pareto) out << " stroke-dasharray=\"6 3\"";
    out << " points=\"";
    for (const PlanePoint& p : s.points) out << num(F.x(to_double(p.a))) << "," << num(F.y(to_double(p.b))) << " ";
    out << "\"><title>segment " << s.id << "</title></polyline>\n";
  }
  for (const DoublePoint& d : G.double_points)
    out << "<rect x=\"" << num(F.x(to_double(d.point.a)) - 3) << "\" y=\"" << num(F.y(to_double(d.point.b)) - 3)
        << "\" width=\"6\" height=\"6\" fill=\"black\"/>\n";
  for (const Obstacle& o : G.obstacles) {
    const bool cusp = o.kind == ObstacleKind::Cusp;
    out << "<circle cx=\"" << num(F.x(to_double(o.location.a))) << "\" cy=\"" << num(F.y(to_double(o.location.b)))
        << "\" r=\"6\" stroke=\"black\" stroke-width=\"2\" fill=\"" << (cusp ? "black" : "white") << "\"><title>"
        << (cusp ? "cusp" : "pseudocusp") << "</title></circle>\n";
  }
  out << "</svg>\n";
  return out.str();
}

std::string diagram_svg(const LabeledDiagram& d) {
  double lo = 0, hi = 1;
  bool first = true;
  for (const LabeledBar& b : d.bars)
    for (const HitEvent* e : {&b.birth, b.death ? &*b.death : nullptr}) {
      if (!e) continue;
      const double t = to_double(e->t);
      lo = first ? t : std::min(lo, t);
      hi = first ? t : std::max(hi, t);
      first = false;
    }
  if (hi <= lo) hi = lo + 1;
  const double pad = (hi - lo) * 0.08;
  const Frame F{lo - pad, hi + pad};
  std::ostringstream out;
  out << open_svg();
  out << "<line x1=\"" << num(F.x(F.lo)) << "\" y1=\"" << num(F.y(F.lo)) << "\" x2=\"" << num(F.x(F.hi)) << "\" y2=\""
      << num(F.y(F.hi)) << "\" stroke=\"#cccccc\"/>\n";
  for (const LabeledBar& b : d.bars) {
    const double x = F.x(to_double(b.birth.t));
    const double y = b.death ? F.y(to_double(b.death->t)) : F.y(F.hi) + 4;
    out << "<circle cx=\"" << num(x) << "\" cy=\"" << num(y) << "\" r=\"4\" fill=\"" << index_color(b.dim)
        << "\"><title>dim " << b.dim << (b.death ? "" : ", essential") << "</title></circle>\n";
  }
  out << "</svg>\n";
  return out.str();
}

std::string cubing_svg(const Cubing& C, const ObstaclePoset& P) {
  const std::size_t n = P.obstacles.size();
  std::vector<int> order(n);
  std::iota(order.begin(), order.end(), 0);
  std::sort(order.begin(), order.end(), [&](int x, int y) {
    return natural_height(P.obstacles[static_cast<std::size_t>(x)]) < natural_height(P.obstacles[static_cast<std::size_t>(y)]);
  });
  std::vector<std::array<double, 2>> dir(n);
  for (std::size_t r = 0; r < n; ++r) {
    const double theta = M_PI * (static_cast<double>(r) + 0.5) / static_cast<double>(n);
    dir[static_cast<std::size_t>(order[r])] = {std::cos(theta), std::sin(theta)};
  }
  std::vector<std::array<double, 2>> pos(C.vertices.size(), {0, 0});
  double xmin = 0, xmax = 0, ymax = 0;
  for (std::size_t v = 0; v < C.vertices.size(); ++v) {
    for (std::size_t o = 0; o < n; ++o)
      if (C.above[v] >> o & 1) {
        pos[v][0] += dir[o][0];
        pos[v][1] += dir[o][1];
      }
    xmin = std::min(xmin, pos[v][0]);
    xmax = std::max(xmax, pos[v][0]);
    ymax = std::max(ymax, pos[v][1]);
  }
  const double span = std::max({xmax - xmin, ymax, 1.0});
  auto px = [&](int v) { return kMargin + (pos[static_cast<std::size_t>(v)][0] - xmin) / span * (kSize - 2 * kMargin); };
  auto py = [&](int v) { return kSize - kMargin - pos[static_cast<std::size_t>(v)][1] / span * (kSize - 2 * kMargin); };
  auto drop = [&](int v, std::initializer_list<int> dirs) {
    std::uint64_t mask = C.above[static_cast<std::size_t>(v)];
    for (int o : dirs) mask &= ~(std::uint64_t{1} << o);
    return C.vertex_of_above(mask);
  };

  std::ostringstream out;
  out << open_svg();
  for (const Cube& c : C.cubes) {
    if (c.dim() != 2) continue;
    const int d0 = c.directions[0], d1 = c.directions[1];
    const int q[4] = {c.top, drop(c.top, {d0}), drop(c.top, {d0, d1}), drop(c.top, {d1})};
    out << "<polygon fill=\"#c6dbef\" fill-opacity=\"0.5\" stroke=\"none\" points=\"";
    for (int v : q) out << num(px(v)) << "," << num(py(v)) << " ";
    out << "\"/>\n";
  }
  for (const Cube& c : C.cubes) {
    if (c.dim() != 1) continue;
    const int b = drop(c.top, {c.directions[0]});
    out << "<line x1=\"" << num(px(c.top)) << "\" y1=\"" << num(py(c.top)) << "\" x2=\"" << num(px(b)) << "\" y2=\""
        << num(py(b)) << "\" stroke=\"black\"><title>obstacle " << c.directions[0] << "</title></line>\n";
  }
  for (std::size_t v = 0; v < C.vertices.size(); ++v) {
    std::string label;
    for (int o : C.vertices[v]) label += (label.empty() ? "" : " ") + std::to_string(o);
    out << "<circle cx=\"" << num(px(static_cast<int>(v))) << "\" cy=\"" << num(py(static_cast<int>(v)))
        << "\" r=\"4\" fill=\"#d62728\"><title>marker {" << label << "}</title></circle>\n";
  }
  out << "</svg>\n";
  return out.str();
}

}  // namespace pareto
