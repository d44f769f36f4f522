#include <iostream>
#include <optional>
#include <string>

#include <CLI11.hpp>

#include "pareto/error.hpp"
#include "pareto/io.hpp"
#include "pareto/parallel.hpp"
#include "pareto/svg.hpp"
#include "pareto/verify.hpp"

using namespace pareto;

namespace {

constexpr int kInvariantFailure = 1;
constexpr int kInputError = 2;

bool is_invariant_failure(ErrorKind k) {
  switch (k) {
    case ErrorKind::AttachLawViolation:
    case ErrorKind::IndexInconsistent:
    case ErrorKind::IndexJumpViolation:
    case ErrorKind::UnmatchedEndpoint:
    case ErrorKind::LabelMismatch:
    case ErrorKind::DeltaMismatch:
    case ErrorKind::EpsilonTooLarge:
    case ErrorKind::NoAvoidingCurve:
      return true;
    default:
      return false;
  }
}

void report_error(const std::string& kind, const std::string& message) {
  Json j;
  j["error"] = kind;
  j["message"] = message;
  std::cerr << j.dump() << "\n";
}

void emit(const std::string& path, const Json& j) {
  if (path.empty() || path == "-")
    std::cout << dump(j);
  else
    save_text_file(path, dump(j));
}

PlanePoint parse_point(const std::string& text) {
  const auto comma = text.find(',');
  if (comma == std::string::npos) throw Error(ErrorKind::InvalidInput, "point expected as a,b");
  return {parse_rational(text.substr(0, comma)), parse_rational(text.substr(comma + 1))};
}

SurfaceComplex load_surface(const std::string& path) { return to_surface(mesh_from_json(load_json_file(path))); }

ParetoGrid grid_for(const SurfaceComplex& S, const std::string& grid_path, int threads) {
  if (!grid_path.empty()) return grid_from_json(load_json_file(grid_path));
  return build_grid(S, threads);
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Pareto grids, labeled persistence along increasing curves, and obstacle cubings"};
  app.require_subcommand(1);
  const int threads = default_threads();

  std::string in, out, svg, grid_path, curve_path, kind = "sphere", c1, c2, at;
  int resolution = -1, dim = 0;
  std::uint64_t seed = 1;
  std::optional<std::uint64_t> verify_seed;

  auto* generate = app.add_subcommand("generate", "Write a synthetic surface mesh");
  generate->add_option("--kind", kind, "sphere, torus, bean or random_morse")->capture_default_str();
  generate->add_option("--resolution", resolution, "Mesh resolution (default depends on the kind)");
  generate->add_option("--seed", seed, "Perturbation seed")->capture_default_str();
  generate->add_option("--out", out, "Output mesh document (stdout when omitted)");

  auto* grid = app.add_subcommand("grid", "Build the Pareto grid of a surface");
  grid->add_option("--in", in, "Mesh document")->required();
  grid->add_option("--out", out, "Output grid document");
  grid->add_option("--svg", svg, "Picture of the grid");

  auto* betti = app.add_subcommand("betti", "Betti numbers of the slice below a point");
  betti->add_option("--in", in, "Mesh document")->required();
  betti->add_option("--at", at, "Point a,b")->required();

  auto* diagram = app.add_subcommand("diagram", "Labeled persistence diagram along a curve");
  diagram->add_option("--in", in, "Mesh document")->required();
  diagram->add_option("--grid", grid_path, "Grid document (built when omitted)");
  diagram->add_option("--curve", curve_path, "Curve document")->required();
  diagram->add_option("--out", out, "Output diagram document");
  diagram->add_option("--svg", svg, "Birth/death picture");

  auto* rank = app.add_subcommand("rank", "Rank of H_k between two slices, directly and along a curve");
  rank->add_option("--in", in, "Mesh document")->required();
  rank->add_option("--grid", grid_path, "Grid document (built when omitted)");
  rank->add_option("--c1", c1, "Lower point a,b")->required();
  rank->add_option("--c2", c2, "Upper point a,b")->required();
  rank->add_option("--dim", dim, "Homology dimension")->capture_default_str();

  auto* obstacles = app.add_subcommand("obstacles", "List the cusps and pseudocusps of a grid");
  obstacles->add_option("--in", in, "Mesh document");
  obstacles->add_option("--grid", grid_path, "Grid document");

  auto* cubing = app.add_subcommand("cubing", "Obstacle complex of a grid");
  cubing->add_option("--in", in, "Mesh document");
  cubing->add_option("--grid", grid_path, "Grid document");
  cubing->add_option("--out", out, "Output cubing document");
  cubing->add_option("--svg", svg, "Picture of the 2-skeleton");

  auto* marker = app.add_subcommand("marker", "Marker of a curve: the chain of obstacles classifying its component");
  marker->add_option("--in", in, "Mesh document");
  marker->add_option("--grid", grid_path, "Grid document");
  marker->add_option("--curve", curve_path, "Curve document")->required();

  auto* verify = app.add_subcommand("verify", "Run every invariant suite and print a report");
  verify->add_option("--in", in, "Mesh document (default: sphere, torus and bean generators)");
  verify->add_option("--seed", verify_seed, "Sampling seed (default 1)");
  verify->add_option("--out", out, "Output report document");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kInputError;
  }

  auto need_grid = [&]() -> ParetoGrid {
    if (!grid_path.empty()) return grid_from_json(load_json_file(grid_path));
    if (in.empty()) throw Error(ErrorKind::InvalidInput, "--in or --grid is required");
    return build_grid(load_surface(in), threads);
  };

  try {
    if (*generate) {
      const SurfaceKind k = parse_surface_kind(kind);
      emit(out, to_json(generate_surface(k, resolution < 0 ? default_resolution(k) : resolution, seed)));
    } else if (*grid) {
      const ParetoGrid G = build_grid(load_surface(in), threads);
      emit(out, to_json(G));
      if (!svg.empty()) save_text_file(svg, grid_svg(G));
    } else if (*betti) {
      const BifilteredComplex K = to_complex(mesh_from_json(load_json_file(in)));
      const PlanePoint p = parse_point(at);
      Json j;
      j["point"] = to_json(p);
      j["betti"] = betti_vector(slice(K, p));
      std::cout << dump(j);
    } else if (*diagram) {
      const SurfaceComplex S = load_surface(in);
      const ParetoGrid G = grid_for(S, grid_path, threads);
      const LabeledDiagram d = labeled_diagram(S.complex(), curve_from_json(load_json_file(curve_path)), G);
      emit(out, to_json(d));
      if (!svg.empty()) save_text_file(svg, diagram_svg(d));
    } else if (*rank) {
      const SurfaceComplex S = load_surface(in);
      const ParetoGrid G = grid_for(S, grid_path, threads);
      const PlanePoint p = parse_point(c1), q = parse_point(c2);
      const int direct = inclusion_rank(S.complex(), p, q, dim);
      const int via = rank_via_curve(S.complex(), G, p, q, dim);
      Json j;
      j["c1"] = to_json(p);
      j["c2"] = to_json(q);
      j["dim"] = dim;
      j["inclusion_rank"] = direct;
      j["curve_rank"] = via;
      std::cout << dump(j);
      if (direct != via) return kInvariantFailure;
    } else if (*obstacles) {
      const ParetoGrid G = need_grid();
      Json j = Json::array();
      for (const Obstacle& o : G.obstacles)
        j.push_back({{"point", to_json(o.location)},
                     {"kind", o.kind == ObstacleKind::Cusp ? "cusp" : "pseudocusp"},
                     {"natural_height", to_string(natural_height(o.location))},
                     {"lower", o.lower},
                     {"upper", o.upper},
                     {"lower_index", G.index_of(o.lower)},
                     {"upper_index", G.index_of(o.upper)}});
      std::cout << dump(j);
    } else if (*cubing) {
      const ParetoGrid G = need_grid();
      const ObstaclePoset P(obstacle_locations(G), G.box);
      const Cubing C = edge_lengths(build_cubing(P), P);
      emit(out, to_json(C));
      if (!svg.empty()) save_text_file(svg, cubing_svg(C, P));
    } else if (*marker) {
      const ParetoGrid G = need_grid();
      const Chain m = marker_of(curve_from_json(load_json_file(curve_path)), obstacle_locations(G));
      Json j;
      j["marker"] = m;
      std::cout << dump(j);
    } else if (*verify) {
      const std::uint64_t s = verify_seed.value_or(1);
      std::vector<SurfaceInput> inputs;
      if (in.empty())
        inputs = default_surfaces(s);
      else
        inputs.push_back({"input", mesh_from_json(load_json_file(in)), {{"path", in}}, false});
      const RunReport report = run_verify(inputs, s, threads, true);
      emit(out, report.to_json());
      return report.pass() ? 0 : kInvariantFailure;
    }
  } catch (const Error& e) {
    report_error(std::string(to_string(e.kind())), e.what());
    return is_invariant_failure(e.kind()) ? kInvariantFailure : kInputError;
  } catch (const std::exception& e) {
    report_error("InvalidInput", e.what());
    return kInputError;
  }
  return 0;
}
