#ifndef PARETO_SVG_HPP
#define PARETO_SVG_HPP

#include <string>

#include "pareto/cubing.hpp"
#include "pareto/curves.hpp"
#include "pareto/grid.hpp"

namespace pareto {

/// Segments colored by index (rays dashed), cusps as filled discs,
/// pseudocusps as rings, double points as small squares.
std::string grid_svg(const ParetoGrid& G);

/// Birth against death height, one color per dimension. Essential bars sit
/// on the top edge.
std::string diagram_svg(const LabeledDiagram& d);

/// Vertices, edges and squares of the cubing. Each obstacle gets a direction
/// in the upper half plane, ordered by natural height, and a vertex is drawn
/// at the sum of the directions of the obstacles its curves pass above.
std::string cubing_svg(const Cubing& C, const ObstaclePoset& P);

}  // namespace pareto

#endif  // PARETO_SVG_HPP
