#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <filesystem>

#include "spinlab/cli.hpp"

using namespace spinlab;
namespace fs = std::filesystem;

namespace {

std::string temp_dir(const std::string& tag) {
  fs::path p = fs::temp_directory_path() / ("spinlab_test_" + tag);
  fs::remove_all(p);
  fs::create_directories(p);
  return p.string();
}

}  // namespace

TEST_CASE("suite catalog") {
  const auto& cat = suite_catalog();
  auto has = [&](const std::string& id, const std::string& needle) {
    for (const auto& s : cat)
      if (s.id == id) return s.description.find(needle) != std::string::npos;
    return false;
  };
  CHECK(has("sw-gap-bound", "Swendsen-Wang"));
  CHECK(has("sw-gap-bound", "spectral gap"));
  CHECK(has("edwards-sokal", "Edwards-Sokal"));
  CHECK(has("lower-bound-heawood", "Heawood"));
  CHECK(has("verify-stationarity", "detailed balance"));
  CHECK(cat.size() >= 12);
}

TEST_CASE("usage and config error paths") {
  CHECK(run_cli({}) == 1);
  CHECK(run_cli({"no-such-suite"}) == 1);
  CHECK(run_cli({"run"}) == 1);  // missing --config
  // malformed JSON: exit 1 with a parse diagnostic
  std::string dir = temp_dir("badjson");
  write_file(dir + "/bad.json", "{ not json");
  CHECK(run_cli({"run", "--config", dir + "/bad.json"}) == 1);
  // unknown keys rejected
  write_file(dir + "/unknown.json", R"({"experiment":"uniqueness","bogus":1})");
  CHECK(run_cli({"run", "--config", dir + "/unknown.json"}) == 1);
  write_file(dir + "/nosuite.json", R"({"experiment":"nope"})");
  CHECK(run_cli({"run", "--config", dir + "/nosuite.json"}) == 1);
  CHECK(run_cli({"list"}) == 0);
}

TEST_CASE("suites run clean and write reports") {
  std::string dir = temp_dir("reports");
  SuiteOptions opt;
  opt.out_dir = dir;
  opt.seed = 3;
  for (const std::string id : {"uniqueness", "mixing-evaluators", "at-constants"}) {
    SuiteOutcome out = run_suite(id, opt);
    CHECK(!out.violated);
    CHECK(fs::exists(dir + "/" + id + ".csv"));
    CHECK(fs::exists(dir + "/" + id + ".json"));
  }
  // CSV has the documented header
  std::string csv = read_file(dir + "/uniqueness.csv");
  CHECK(csv.rfind("name,formula,measured,margin,verdict", 0) == 0);
}

TEST_CASE("config-driven run reproduces outputs byte for byte") {
  std::string dir1 = temp_dir("repro1"), dir2 = temp_dir("repro2");
  std::string cfg_dir = temp_dir("cfg");
  write_file(cfg_dir + "/c.json",
             R"({"experiment":"uniqueness","seed":11,"out":")" + dir1 + R"("})");
  CHECK(run_cli({"run", "--config", cfg_dir + "/c.json"}) == 0);
  write_file(cfg_dir + "/c2.json",
             R"({"experiment":"uniqueness","seed":11,"out":")" + dir2 + R"("})");
  CHECK(run_cli({"run", "--config", cfg_dir + "/c2.json"}) == 0);
  CHECK(read_file(dir1 + "/uniqueness.csv") == read_file(dir2 + "/uniqueness.csv"));
  CHECK(read_file(dir1 + "/uniqueness.json") == read_file(dir2 + "/uniqueness.json"));
}

TEST_CASE("tolerance and system overrides") {
  std::string dir = temp_dir("tol");
  // absurdly loose margin tolerance flips nothing here but must be accepted
  write_file(dir + "/t.json",
             R"({"experiment":"uniqueness","tolerances":{"margin":1e-6},"seed":2})");
  CHECK(run_cli({"run", "--config", dir + "/t.json"}) == 0);
  write_file(dir + "/tbad.json",
             R"({"experiment":"uniqueness","tolerances":{"bogus":1}})");
  CHECK(run_cli({"run", "--config", dir + "/tbad.json"}) == 1);
  // lower-bound suite honors a config-supplied system
  write_file(dir + "/lb.json",
             R"({"experiment":"lower-bound-k33","seed":1,
                 "system":{"graph":{"family":"complete_bipartite","a":3,"b":3},
                           "params":{"beta":0.2,"gamma":0.5,"lambda":1.0}},
                 "toggles":{"slack":0.5}})");
  CHECK(run_cli({"run", "--config", dir + "/lb.json"}) == 0);
}

TEST_CASE("graph specs in configs") {
  json j = {{"family", "heawood"}};
  Graph g = graph_from_spec(j);
  CHECK(g.n == 14);
  json je = {{"n", 3}, {"edges", {{0, 1}, {1, 2}}}};
  CHECK(graph_from_spec(je).m() == 2);
  CHECK_THROWS_AS(graph_from_spec(json{{"family", "nope"}}), Error);
  CHECK_THROWS_AS(graph_from_spec(json{{"family", "path"}}), Error);  // missing n
  // round trip through JSON
  Graph h = graph_from_json(graph_to_json(g));
  CHECK(h.edges == g.edges);
  // one-edge-per-line text
  Graph t = graph_from_edge_text("0 1\n1 2\n# comment\n2 3\n");
  CHECK(t.n == 4);
  CHECK(t.m() == 3);
}
