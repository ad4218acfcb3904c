#pragma once

#include <string>
#include <vector>

#include <json.hpp>

#include "spinlab/dist_table.hpp"
#include "spinlab/dynamics.hpp"
#include "spinlab/graph.hpp"
#include "spinlab/linalg.hpp"
#include "spinlab/spin_model.hpp"
#include "spinlab/stability.hpp"

namespace spinlab {

using json = nlohmann::json;

json graph_to_json(const Graph& g);                   // {n, edges:[[u,v],...]}
Graph graph_from_json(const json& j);
Graph graph_from_edge_text(const std::string& text);  // one "u v" per line
Graph graph_from_spec(const json& j);                 // family name or explicit edges

json params_to_json(const SpinParams& p);
SpinParams params_from_json(const json& j);

json pinning_to_json(const Pinning& p);
Pinning pinning_from_json(const json& j);

json dist_to_json(const DistTable& d);
std::string dist_to_csv(const DistTable& d);

std::string matrix_to_csv(const Matrix& m, const std::vector<std::string>& headers = {});
json matrix_to_json(const Matrix& m);

std::string reports_to_csv(const std::vector<BoundReport>& reports);
json reports_to_json(const std::vector<BoundReport>& reports);

// hex bitmasks one per line plus JSON metadata
std::string trajectory_dump(const Trajectory& t);
json trajectory_meta(const Trajectory& t, const SpinSystem& sys, const ChainSpec& chain);

void write_file(const std::string& path, const std::string& content);
std::string read_file(const std::string& path);

// strict schema check: every key must be known
void reject_unknown_keys(const json& j, const std::vector<std::string>& allowed,
                         const std::string& context);

}  // namespace spinlab
