#include "pareto/parallel.hpp"

#include <cstdlib>
#include <string>

namespace pareto {

int default_threads() {
  const char* env = std::getenv("PARETO_PERSIST_THREADS");
  if (!env) return 1;
  try {
    int n = std::stoi(env);
    return n > 0 ? n : 1;
  } catch (...) {
    return 1;
  }
}

}  // namespace pareto
