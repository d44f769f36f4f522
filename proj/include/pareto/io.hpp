#ifndef PARETO_IO_HPP
#define PARETO_IO_HPP

#include <string>

#include <json.hpp>

#include "pareto/cubing.hpp"
#include "pareto/curves.hpp"
#include "pareto/generate.hpp"
#include "pareto/grid.hpp"

namespace pareto {

using Json = nlohmann::ordered_json;

/// Schema version written to and required from every document.
inline constexpr const char* kSchemaVersion = "1";

Json to_json(const PlanePoint& p);
PlanePoint point_from_json(const Json& j);

// Each document carries "version" and "type". Loaders throw InvalidInput on a
// wrong version, type or shape.
Json to_json(const MeshDocument& m);
MeshDocument mesh_from_json(const Json& j);

Json to_json(const ParetoGrid& G);
ParetoGrid grid_from_json(const Json& j);

Json to_json(const MonotoneCurve& c);
MonotoneCurve curve_from_json(const Json& j);

Json to_json(const LabeledDiagram& d);
LabeledDiagram diagram_from_json(const Json& j);

Json to_json(const Cubing& C);
Cubing cubing_from_json(const Json& j);

/// Two-space indented text with a trailing newline.
std::string dump(const Json& j);
Json parse_json(const std::string& text);

/// Throws InvalidInput when the file cannot be read or parsed.
Json load_json_file(const std::string& path);
void save_text_file(const std::string& path, const std::string& text);

}  // namespace pareto

#endif  // PARETO_IO_HPP
