#ifndef PARETO_TEST_FIXTURES_HPP
#define PARETO_TEST_FIXTURES_HPP

#include <map>

#include "pareto/error.hpp"
#include "pareto/generate.hpp"
#include "pareto/grid.hpp"

namespace testing {

struct Fixture {
  pareto::SurfaceComplex S;
  pareto::ParetoGrid G;
};

// Generated surface at its default resolution, seed 1, built once per process.
inline const Fixture& surface(pareto::SurfaceKind kind) {
  static std::map<pareto::SurfaceKind, Fixture> cache;
  auto it = cache.find(kind);
  if (it == cache.end()) {
    pareto::SurfaceComplex S =
        pareto::to_surface(pareto::generate_surface(kind, pareto::default_resolution(kind), 1));
    pareto::ParetoGrid G = pareto::build_grid(S);
    it = cache.emplace(kind, Fixture{std::move(S), std::move(G)}).first;
  }
  return it->second;
}

// Kind of the Error thrown by fn; InvalidInput when nothing is thrown, so
// callers must check for a different kind.
inline pareto::ErrorKind kind_of(auto&& fn) {
  try {
    fn();
  } catch (const pareto::Error& e) {
    return e.kind();
  }
  return pareto::ErrorKind::InvalidInput;
}

}  // namespace testing

#endif
