// Prints one PASS/FAIL line per acceptance criterion and exits nonzero when
// any criterion fails.
#include <chrono>
#include <cstdio>
#include <map>
#include <string>
#include <vector>

#include "pareto/parallel.hpp"
#include "pareto/verify.hpp"

using namespace pareto;

namespace {

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point t0) { return std::chrono::duration<double>(Clock::now() - t0).count(); }

struct Criterion {
  bool pass = true;
  std::vector<std::string> notes;
};

// Folds the named checks of the chosen suites into one criterion.
void collect(Criterion& c, const RunReport& r, const std::vector<std::string>& names, bool surfaces_only) {
  int seen = 0;
  for (const SuiteReport& s : r.suites) {
    if (surfaces_only && s.name == "random_posets") continue;
    for (const Check& k : s.checks)
      for (const std::string& n : names)
        if (k.name == n) {
          ++seen;
          if (!k.pass) {
            c.pass = false;
            c.notes.push_back(s.name + "/" + k.name + ": " + k.detail);
          }
        }
  }
  if (seen == 0) {
    c.pass = false;
    c.notes.push_back("no check ran");
  }
}

void print(int id, const std::string& title, const Criterion& c, const std::string& summary) {
  std::printf("%s criterion %d (%s): %s\n", c.pass ? "PASS" : "FAIL", id, title.c_str(), summary.c_str());
  for (const std::string& n : c.notes) std::printf("    %s\n", n.c_str());
}

}  // namespace

int main() {
  const std::uint64_t seed = 7;
  const int threads = default_threads();

  std::vector<SurfaceInput> inputs = default_surfaces(seed);
  RunReport run{seed, {}};
  std::map<std::string, double> elapsed;
  for (const SurfaceInput& in : inputs) {
    const auto t0 = Clock::now();
    run.suites.push_back(verify_surface(in, seed, threads));
    elapsed[in.name] = seconds_since(t0);
  }
  const auto t0 = Clock::now();
  run.suites.push_back(verify_posets(seed, threads));
  const double poset_time = seconds_since(t0);

  std::string times;
  for (const auto& [name, t] : elapsed) times += (times.empty() ? "" : ", ") + name + " " + std::to_string(t).substr(0, 5) + " s";

  Criterion c1;
  collect(c1, run, {"attach_law_segments", "complement_zero_change"}, true);
  for (const auto& [name, t] : elapsed)
    if (t >= 60) {
      c1.pass = false;
      c1.notes.push_back(name + " took " + std::to_string(t) + " s");
    }
  print(1, "attach-cell law", c1, "every segment and 20 pairs per component; " + times);

  Criterion c2;
  collect(c2, run, {"index_constancy", "obstacle_jump"}, true);
  print(2, "index constancy and obstacle jump", c2, "at least 3 probes per segment, jump 1 at every obstacle");

  Criterion c3;
  collect(c3, run, {"bean_counts"}, true);
  std::string bean;
  for (const SuiteReport& s : run.suites)
    for (const Check& k : s.checks)
      if (k.name == "bean_counts") bean = k.detail;
  print(3, "bean counts", c3, bean);

  Criterion c4;
  collect(c4, run, {"identification", "marker_well_defined"}, true);
  print(4, "identification", c4, "10 curves per component, triple compositions");

  Criterion c5;
  collect(c5, run, {"obstacle_crossing"}, true);
  print(5, "obstacle crossing", c5, "one extra bar on the branches, 3 shrinking radii bracketing the height");

  Criterion c6;
  collect(c6, run, {"rank_formula"}, true);
  print(6, "rank formula", c6, "50 comparable pairs per surface, all dimensions");

  Criterion c7;
  collect(c7, run,
          {"cubing_vertex_count", "cubing_realize_round_trip", "cubing_gromov", "cubing_euler_characteristic",
           "cubing_face_closure", "gromov_negative_control"},
          false);
  if (poset_time >= 10) {
    c7.pass = false;
    c7.notes.push_back("poset suite took " + std::to_string(poset_time) + " s");
  }
  print(7, "chains and cubing", c7,
        "surface obstacle sets and 10 random 6-obstacle posets; posets " + std::to_string(poset_time).substr(0, 5) + " s");

  // Two full runs, one single-threaded, must serialize identically.
  Criterion c8;
  const std::string first = dump(run.to_json());
  const std::string second = dump(run_verify(inputs, seed, 1, false).to_json());
  if (first != second) {
    c8.pass = false;
    c8.notes.push_back("reports differ");
  }
  print(8, "determinism", c8, "two runs with seed 7, " + std::to_string(first.size()) + " bytes each");

  const bool all = c1.pass && c2.pass && c3.pass && c4.pass && c5.pass && c6.pass && c7.pass && c8.pass;
  return all ? 0 : 1;
}
