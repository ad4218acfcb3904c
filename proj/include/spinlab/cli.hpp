#pragma once

#include <string>
#include <vector>

#include "spinlab/io.hpp"

namespace spinlab {

struct SuiteInfo {
  std::string id;
  std::string description;  // what the suite certifies
};

const std::vector<SuiteInfo>& suite_catalog();

struct SuiteOptions {
  std::string out_dir;  // empty: print to stdout only
  uint64_t seed = 1;
  int jobs = 0;  // 0: library default
  json config;  // parsed experiment config (may carry system/tolerances)
};

struct SuiteOutcome {
  std::string id;
  bool violated = false;
  std::vector<BoundReport> reports;
  json summary;
};

SuiteOutcome run_suite(const std::string& id, const SuiteOptions& opt);

// Named small systems shared by the verification suites.
struct NamedSystem {
  std::string name;
  SpinSystem sys;
};
std::vector<NamedSystem> standard_test_systems();

// All graphs with at most max_edges edges and no isolated vertex, up to
// isomorphism.
std::vector<Graph> small_edge_graphs(int max_edges);

// exit code: 0 all verdicts hold, 1 usage/config/IO error, 2 violated bound
int run_cli(const std::vector<std::string>& args);

}  // namespace spinlab
