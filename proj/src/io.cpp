#include "pareto/io.hpp"

#include <fstream>
#include <sstream>

#include "pareto/error.hpp"

namespace pareto {

namespace {

[[noreturn]] void bad(const std::string& what) { throw Error(ErrorKind::InvalidInput, what); }

const Json& field(const Json& j, const char* key) {
  if (!j.is_object() || !j.contains(key)) bad(std::string("missing field \"") + key + "\"");
  return j.at(key);
}

Rational rational_from_json(const Json& j) {
  if (j.is_string()) return parse_rational(j.get<std::string>());
  if (j.is_number_integer()) return Rational(j.get<long>());
  bad("rational expected as \"n/d\" string");
}

Json header(const char* type) {
  Json j;
  j["version"] = kSchemaVersion;
  j["type"] = type;
  return j;
}

void check_header(const Json& j, const char* type) {
  if (!j.is_object()) bad("document must be a JSON object");
  if (!j.contains("version") || j.at("version") != kSchemaVersion) bad("unsupported schema version");
  if (!j.contains("type") || j.at("type") != type) bad(std::string("expected a ") + type + " document");
}

Json rationals(const std::vector<Rational>& v) {
  Json a = Json::array();
  for (const Rational& q : v) a.push_back(to_string(q));
  return a;
}

std::vector<Rational> rationals_from(const Json& j) {
  if (!j.is_array()) bad("array of rationals expected");
  std::vector<Rational> out;
  for (const Json& x : j) out.push_back(rational_from_json(x));
  return out;
}

Json points(const std::vector<PlanePoint>& v) {
  Json a = Json::array();
  for (const PlanePoint& p : v) a.push_back(to_json(p));
  return a;
}

std::vector<PlanePoint> points_from(const Json& j) {
  if (!j.is_array()) bad("array of points expected");
  std::vector<PlanePoint> out;
  for (const Json& x : j) out.push_back(point_from_json(x));
  return out;
}

template <class T>
T get(const Json& j, const char* key) {
  try {
    return field(j, key).get<T>();
  } catch (const nlohmann::json::exception&) {
    bad(std::string("field \"") + key + "\" has the wrong type");
  }
}

const char* kind_name(SegmentKind k) {
  switch (k) {
    case SegmentKind::Pareto: return "pareto";
    case SegmentKind::VerticalRay: return "vertical_ray";
    case SegmentKind::HorizontalRay: return "horizontal_ray";
  }
  return "pareto";
}

SegmentKind kind_from(const std::string& s) {
  if (s == "pareto") return SegmentKind::Pareto;
  if (s == "vertical_ray") return SegmentKind::VerticalRay;
  if (s == "horizontal_ray") return SegmentKind::HorizontalRay;
  bad("unknown segment kind \"" + s + "\"");
}

Json event_json(const HitEvent& e) {
  Json j;
  j["t"] = to_string(e.t);
  j["point"] = to_json(e.point);
  j["segment"] = e.segment;
  j["index"] = e.index;
  return j;
}

HitEvent event_from(const Json& j) {
  return {rational_from_json(field(j, "t")), point_from_json(field(j, "point")), get<int>(j, "segment"),
          get<int>(j, "index")};
}

}  // namespace

Json to_json(const PlanePoint& p) { return Json::array({to_string(p.a), to_string(p.b)}); }

PlanePoint point_from_json(const Json& j) {
  if (!j.is_array() || j.size() != 2) bad("point expected as [a, b]");
  return {rational_from_json(j[0]), rational_from_json(j[1])};
}

Json to_json(const MeshDocument& m) {
  Json j = header("mesh");
  j["f"] = rationals(m.f);
  j["g"] = rationals(m.g);
  if (!m.coords.empty()) j["coords"] = m.coords;
  if (m.is_surface())
    j["triangles"] = m.triangles;
  else
    j["simplices"] = m.simplices;
  return j;
}

MeshDocument mesh_from_json(const Json& j) {
  check_header(j, "mesh");
  MeshDocument m;
  m.f = rationals_from(field(j, "f"));
  m.g = rationals_from(field(j, "g"));
  if (m.f.size() != m.g.size()) bad("f and g differ in length");
  if (j.contains("coords")) m.coords = get<std::vector<std::array<double, 3>>>(j, "coords");
  if (j.contains("triangles")) m.triangles = get<std::vector<std::array<int, 3>>>(j, "triangles");
  if (j.contains("simplices")) m.simplices = get<std::vector<Simplex>>(j, "simplices");
  if (m.triangles.empty() == m.simplices.empty()) bad("mesh needs exactly one of \"triangles\" and \"simplices\"");
  return m;
}

Json to_json(const ParetoGrid& G) {
  Json j = header("grid");
  j["box"] = {{"lo", to_string(G.box.lo)}, {"hi", to_string(G.box.hi)}};
  Json segs = Json::array();
  for (const GridSegment& s : G.segments) {
    Json x;
    x["id"] = s.id;
    x["kind"] = kind_name(s.kind);
    x["points"] = points(s.points);
    x["index"] = s.index ? Json(*s.index) : Json(nullptr);
    x["link_index"] = s.link_index;
    segs.push_back(std::move(x));
  }
  j["segments"] = std::move(segs);
  Json nodes = Json::array();
  for (const GridNode& n : G.nodes)
    nodes.push_back({{"point", to_json(n.point)},
                     {"up", n.at(Direction::Up)},
                     {"down", n.at(Direction::Down)},
                     {"left", n.at(Direction::Left)},
                     {"right", n.at(Direction::Right)}});
  j["nodes"] = std::move(nodes);
  Json obs = Json::array();
  for (const Obstacle& o : G.obstacles)
    obs.push_back({{"point", to_json(o.location)},
                   {"kind", o.kind == ObstacleKind::Cusp ? "cusp" : "pseudocusp"},
                   {"lower", o.lower},
                   {"upper", o.upper}});
  j["obstacles"] = std::move(obs);
  Json dps = Json::array();
  for (const DoublePoint& d : G.double_points)
    dps.push_back({{"point", to_json(d.point)}, {"up", d.up}, {"down", d.down}, {"left", d.left}, {"right", d.right}});
  j["double_points"] = std::move(dps);
  Json joins = Json::array();
  for (const SmoothJoin& s : G.joins)
    joins.push_back({{"point", to_json(s.point)}, {"vertical", s.vertical}, {"pareto", s.pareto}, {"ray", s.ray}});
  j["joins"] = std::move(joins);
  return j;
}

ParetoGrid grid_from_json(const Json& j) {
  check_header(j, "grid");
  ParetoGrid G;
  const Json& box = field(j, "box");
  G.box = {rational_from_json(field(box, "lo")), rational_from_json(field(box, "hi"))};
  for (const Json& x : field(j, "segments")) {
    GridSegment s;
    s.id = get<int>(x, "id");
    s.kind = kind_from(get<std::string>(x, "kind"));
    s.points = points_from(field(x, "points"));
    if (!field(x, "index").is_null()) s.index = get<int>(x, "index");
    s.link_index = get<int>(x, "link_index");
    if (s.id != static_cast<int>(G.segments.size())) bad("segment ids must be 0, 1, 2, ...");
    G.segments.push_back(std::move(s));
  }
  for (const Json& x : field(j, "nodes")) {
    GridNode n;
    n.point = point_from_json(field(x, "point"));
    n.segment = {get<int>(x, "up"), get<int>(x, "down"), get<int>(x, "left"), get<int>(x, "right")};
    G.nodes.push_back(n);
  }
  for (const Json& x : field(j, "obstacles")) {
    const std::string kind = get<std::string>(x, "kind");
    if (kind != "cusp" && kind != "pseudocusp") bad("unknown obstacle kind \"" + kind + "\"");
    G.obstacles.push_back({point_from_json(field(x, "point")),
                           kind == "cusp" ? ObstacleKind::Cusp : ObstacleKind::Pseudocusp, get<int>(x, "lower"),
                           get<int>(x, "upper")});
  }
  for (const Json& x : field(j, "double_points"))
    G.double_points.push_back({point_from_json(field(x, "point")), get<int>(x, "up"), get<int>(x, "down"),
                               get<int>(x, "left"), get<int>(x, "right")});
  for (const Json& x : field(j, "joins"))
    G.joins.push_back(
        {point_from_json(field(x, "point")), get<bool>(x, "vertical"), get<int>(x, "pareto"), get<int>(x, "ray")});
  const auto in_range = [&](int s) { return s >= -1 && s < static_cast<int>(G.segments.size()); };
  for (const GridNode& n : G.nodes)
    for (int s : n.segment)
      if (!in_range(s)) bad("node refers to a missing segment");
  for (const Obstacle& o : G.obstacles)
    if (o.lower < 0 || o.upper < 0 || !in_range(o.lower) || !in_range(o.upper)) bad("obstacle refers to a missing segment");
  return G;
}

Json to_json(const MonotoneCurve& c) {
  Json j = header("curve");
  j["vertices"] = points(c.vertices());
  return j;
}

MonotoneCurve curve_from_json(const Json& j) {
  check_header(j, "curve");
  return MonotoneCurve(points_from(field(j, "vertices")));
}

Json to_json(const LabeledDiagram& d) {
  Json j = header("diagram");
  Json bars = Json::array();
  for (const LabeledBar& b : d.bars) {
    Json x;
    x["dim"] = b.dim;
    x["birth"] = event_json(b.birth);
    x["death"] = b.death ? event_json(*b.death) : Json(nullptr);
    bars.push_back(std::move(x));
  }
  j["bars"] = std::move(bars);
  return j;
}

LabeledDiagram diagram_from_json(const Json& j) {
  check_header(j, "diagram");
  LabeledDiagram d;
  for (const Json& x : field(j, "bars")) {
    LabeledBar b;
    b.dim = get<int>(x, "dim");
    b.birth = event_from(field(x, "birth"));
    if (!field(x, "death").is_null()) b.death = event_from(field(x, "death"));
    d.bars.push_back(std::move(b));
  }
  return d;
}

Json to_json(const Cubing& C) {
  Json j = header("cubing");
  j["vertices"] = C.vertices;
  Json above = Json::array();
  for (std::uint64_t m : C.above) above.push_back(std::to_string(m));
  j["above"] = std::move(above);
  Json cubes = Json::array();
  for (const Cube& c : C.cubes) cubes.push_back({{"top", c.top}, {"directions", c.directions}});
  j["cubes"] = std::move(cubes);
  j["edge_length"] = rationals(C.edge_length);
  return j;
}

Cubing cubing_from_json(const Json& j) {
  check_header(j, "cubing");
  Cubing C;
  C.vertices = get<std::vector<Chain>>(j, "vertices");
  for (const Json& x : field(j, "above")) {
    if (!x.is_string()) bad("above masks are decimal strings");
    try {
      C.above.push_back(std::stoull(x.get<std::string>()));
    } catch (const std::exception&) {
      bad("bad above mask");
    }
  }
  if (C.above.size() != C.vertices.size()) bad("one above mask per vertex expected");
  for (const Json& x : field(j, "cubes")) {
    Cube c{get<int>(x, "top"), get<Chain>(x, "directions")};
    if (c.top < 0 || c.top >= static_cast<int>(C.vertices.size())) bad("cube refers to a missing vertex");
    C.cubes.push_back(std::move(c));
  }
  C.edge_length = rationals_from(field(j, "edge_length"));
  return C;
}

std::string dump(const Json& j) { return j.dump(2) + "\n"; }

Json parse_json(const std::string& text) {
  try {
    return Json::parse(text);
  } catch (const nlohmann::json::parse_error& e) {
    bad(std::string("malformed JSON: ") + e.what());
  }
}

Json load_json_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) bad("cannot read " + path);
  std::stringstream ss;
  ss << in.rdbuf();
  return parse_json(ss.str());
}

void save_text_file(const std::string& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary);
  if (!out) bad("cannot write " + path);
  out << text;
  if (!out) bad("cannot write " + path);
}

}  // namespace pareto
