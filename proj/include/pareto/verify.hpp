#ifndef PARETO_VERIFY_HPP
#define PARETO_VERIFY_HPP

#include <cstdint>
#include <string>
#include <vector>

#include "pareto/cubing.hpp"
#include "pareto/io.hpp"

namespace pareto {

/// One named invariant. A failed check carries a witness: a segment id, a
/// probe pair, a curve or a poset.
struct Check {
  std::string name;
  bool pass = true;
  std::string detail;
  Json witness;  // null when passing
};

struct SuiteReport {
  std::string name;
  Json config;
  std::vector<Check> checks;

  bool pass() const;
};

struct RunReport {
  std::uint64_t seed = 0;
  std::vector<SuiteReport> suites;

  bool pass() const;
  /// No timings, so equal runs give equal bytes.
  Json to_json() const;
};

struct SurfaceInput {
  std::string name;
  MeshDocument mesh;
  Json config;
  /// Also check the two cusps, two pseudocusps and the pair of smooth joins.
  bool bean_counts = false;
};

/// Every grid, curve and cubing invariant on one surface.
SuiteReport verify_surface(const SurfaceInput& input, std::uint64_t seed, int threads);

/// Random six-obstacle posets and the deleted 3-cube negative control.
SuiteReport verify_posets(std::uint64_t seed, int threads);

/// Surfaces generated at their default resolutions: sphere, torus and bean.
std::vector<SurfaceInput> default_surfaces(std::uint64_t seed);

/// Runs the surface suites and then the poset suite. Per-suite timings go to
/// stderr when `timings` is set.
RunReport run_verify(const std::vector<SurfaceInput>& inputs, std::uint64_t seed, int threads, bool timings);

/// Seed for a subtask, stable across platforms.
std::uint64_t derive_seed(std::uint64_t seed, const std::string& tag, std::uint64_t index);

/// Subsets of pairwise comparable obstacles, counted by brute force.
std::size_t count_chains_brute_force(const std::vector<PlanePoint>& obstacles);

}  // namespace pareto

#endif  // PARETO_VERIFY_HPP
