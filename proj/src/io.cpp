#include "spinlab/io.hpp"

#include <cmath>
#include <fstream>
#include <sstream>

namespace spinlab {

json graph_to_json(const Graph& g) {
  json edges = json::array();
  for (auto [u, v] : g.edges) edges.push_back({u, v});
  return json{{"n", g.n}, {"edges", edges}};
}

Graph graph_from_json(const json& j) {
  reject_unknown_keys(j, {"n", "edges"}, "graph");
  require(j.contains("n") && j.contains("edges"), Err::ConfigInvalid, "graph needs n and edges");
  std::vector<std::pair<int, int>> edges;
  for (const auto& e : j.at("edges")) {
    require(e.is_array() && e.size() == 2, Err::ConfigInvalid, "edge must be a pair");
    edges.emplace_back(e[0].get<int>(), e[1].get<int>());
  }
  return build_graph(j.at("n").get<int>(), edges);
}

Graph graph_from_edge_text(const std::string& text) {
  std::istringstream in(text);
  std::vector<std::pair<int, int>> edges;
  int n = 0;
  std::string line;
  while (std::getline(in, line)) {
    if (line.empty() || line[0] == '#') continue;
    std::istringstream ls(line);
    int u, v;
    require(bool(ls >> u >> v), Err::ConfigInvalid, "expected 'u v' per line");
    edges.emplace_back(u, v);
    n = std::max({n, u + 1, v + 1});
  }
  return build_graph(n, edges);
}

Graph graph_from_spec(const json& j) {
  if (j.contains("edges")) return graph_from_json(j);
  reject_unknown_keys(j, {"family", "n", "a", "b", "branching", "depth", "degree", "seed", "file"},
                      "graph");
  if (j.contains("file")) return graph_from_edge_text(read_file(j.at("file").get<std::string>()));
  require(j.contains("family"), Err::ConfigInvalid, "graph needs family, edges, or file");
  std::string fam = j.at("family").get<std::string>();
  auto geti = [&](const std::string& k, int dflt = -1) {
    if (j.contains(k)) return j.at(k).get<int>();
    require(dflt >= 0, Err::ConfigInvalid, "graph family needs key " + k);
    return dflt;
  };
  if (fam == "path") return path_graph(geti("n"));
  if (fam == "cycle") return cycle_graph(geti("n"));
  if (fam == "complete") return complete_graph(geti("n"));
  if (fam == "complete_bipartite") return complete_bipartite(geti("a"), geti("b"));
  if (fam == "star") return star_graph(geti("n"));
  if (fam == "balanced_tree") return balanced_tree(geti("branching"), geti("depth"));
  if (fam == "heawood") return heawood_graph();
  if (fam == "prism") return prism_graph();
  if (fam == "random_regular")
    return random_regular(geti("n"), geti("degree"),
                          j.contains("seed") ? j.at("seed").get<uint64_t>() : 0);
  fail(Err::ConfigInvalid, "unknown graph family " + fam);
}

json params_to_json(const SpinParams& p) {
  return json{{"beta", p.beta}, {"gamma", p.gamma}, {"lambda", p.lambda}};
}

SpinParams params_from_json(const json& j) {
  reject_unknown_keys(j, {"beta", "gamma", "lambda"}, "params");
  require(j.contains("beta") && j.contains("gamma") && j.contains("lambda"), Err::ConfigInvalid,
          "params need beta, gamma, lambda");
  return SpinParams(j.at("beta").get<double>(), j.at("gamma").get<double>(),
                    j.at("lambda").get<double>());
}

json pinning_to_json(const Pinning& p) {
  json out = json::object();
  if (!p.assignments.empty()) {
    json a = json::array();
    for (auto [v, s] : p.assignments) a.push_back({v, s});
    out["assignments"] = a;
  }
  if (!p.mono_edges.empty()) {
    json m = json::array();
    for (auto [u, v] : p.mono_edges) m.push_back({u, v});
    out["mono_edges"] = m;
  }
  if (!p.oriented_events.empty()) {
    json o = json::array();
    for (auto [u, v] : p.oriented_events) o.push_back({u, v});
    out["oriented_events"] = o;
  }
  return out;
}

Pinning pinning_from_json(const json& j) {
  reject_unknown_keys(j, {"assignments", "mono_edges", "oriented_events"}, "pinning");
  Pinning p;
  if (j.contains("assignments"))
    for (const auto& a : j.at("assignments")) p.assignments[a[0].get<int>()] = a[1].get<int>();
  if (j.contains("mono_edges"))
    for (const auto& e : j.at("mono_edges")) p.mono_edges.emplace_back(e[0], e[1]);
  if (j.contains("oriented_events"))
    for (const auto& e : j.at("oriented_events")) p.oriented_events.emplace_back(e[0], e[1]);
  return p;
}

json dist_to_json(const DistTable& d) {
  json probs = json::object();
  char buf[16];
  for (uint32_t s : d.support()) {
    std::snprintf(buf, sizeof buf, "%x", s);
    probs[buf] = d.prob(s);
  }
  return json{{"n", d.n}, {"log_z", d.log_z}, {"probs", probs}};
}

std::string dist_to_csv(const DistTable& d) {
  std::ostringstream os;
  os << "bitmask,prob\n";
  os.precision(17);
  for (uint32_t s : d.support()) os << s << "," << d.prob(s) << "\n";
  return os.str();
}

std::string matrix_to_csv(const Matrix& m, const std::vector<std::string>& headers) {
  std::ostringstream os;
  os.precision(17);
  if (!headers.empty()) {
    for (size_t i = 0; i < headers.size(); ++i) os << (i ? "," : "") << headers[i];
    os << "\n";
  }
  for (int i = 0; i < m.rows(); ++i) {
    for (int j = 0; j < m.cols(); ++j) os << (j ? "," : "") << m(i, j);
    os << "\n";
  }
  return os.str();
}

json matrix_to_json(const Matrix& m) {
  json rows = json::array();
  for (int i = 0; i < m.rows(); ++i) {
    json r = json::array();
    for (int j = 0; j < m.cols(); ++j) r.push_back(m(i, j));
    rows.push_back(r);
  }
  return rows;
}

std::string reports_to_csv(const std::vector<BoundReport>& reports) {
  std::ostringstream os;
  os.precision(17);
  os << "name,formula,measured,margin,verdict\n";
  for (const auto& r : reports)
    os << r.name << "," << r.formula_value << "," << r.measured_value << "," << r.margin << ","
       << verdict_name(r.verdict) << "\n";
  return os.str();
}

json reports_to_json(const std::vector<BoundReport>& reports) {
  json out = json::array();
  for (const auto& r : reports)
    out.push_back(json{{"name", r.name},
                       {"formula", r.formula_value},
                       {"measured", r.measured_value},
                       {"margin", r.margin},
                       {"verdict", verdict_name(r.verdict)}});
  return out;
}

std::string trajectory_dump(const Trajectory& t) {
  std::ostringstream os;
  char buf[16];
  for (Config s : t.states) {
    std::snprintf(buf, sizeof buf, "%x", s);
    os << buf << "\n";
  }
  return os.str();
}

json trajectory_meta(const Trajectory& t, const SpinSystem& sys, const ChainSpec& chain) {
  json j{{"chain", chain.name()},
         {"seed", chain.seed},
         {"steps", t.step_count},
         {"thin_stride", t.thin_stride},
         {"checksum", t.rng_trace_checksum},
         {"graph", graph_to_json(sys.g)},
         {"params", params_to_json(sys.params)},
         {"pinning", pinning_to_json(sys.pin)}};
  if (chain.kind != ChainSpec::Kind::glauber && chain.kind != ChainSpec::Kind::swendsen_wang) {
    j["up_mode"] =
        chain.up_mode == ChainSpec::UpMode::exact_enumeration ? "exact" : "nested_glauber";
    if (chain.up_mode == ChainSpec::UpMode::nested_glauber)
      j["sweeps"] = chain.nested_sweeps > 0
                        ? chain.nested_sweeps
                        : long(10.0 * sys.n() * std::log(std::max(2, sys.n()))) + 1;
  }
  return j;
}

void write_file(const std::string& path, const std::string& content) {
  std::ofstream out(path, std::ios::binary);
  require(bool(out), Err::IOFailure, "cannot open " + path);
  out << content;
  require(bool(out), Err::IOFailure, "write failed for " + path);
}

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  require(bool(in), Err::IOFailure, "cannot open " + path);
  std::ostringstream os;
  os << in.rdbuf();
  return os.str();
}

void reject_unknown_keys(const json& j, const std::vector<std::string>& allowed,
                         const std::string& context) {
  require(j.is_object(), Err::ConfigInvalid, context + " must be an object");
  for (auto it = j.begin(); it != j.end(); ++it) {
    bool ok = false;
    for (const auto& k : allowed)
      if (it.key() == k) ok = true;
    require(ok, Err::ConfigInvalid, "unknown key '" + it.key() + "' in " + context);
  }
}

}  // namespace spinlab
