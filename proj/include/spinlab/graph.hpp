#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "spinlab/errors.hpp"

namespace spinlab {

// Undirected simple graph with an oriented-edge index. Immutable after
// construction; cheap to copy and safe to share across threads.
struct Graph {
  int n = 0;
  std::vector<std::pair<int, int>> edges;           // canonical u < v
  std::vector<std::vector<int>> adjacency;          // sorted neighbor lists
  std::vector<std::pair<int, int>> oriented_edges;  // (u,v) then (v,u) per edge
  int max_degree = 0;

  int m() const { return int(edges.size()); }
  int degree(int v) const { return int(adjacency[size_t(v)].size()); }

  // -1 if {u,v} is not an edge
  int edge_id(int u, int v) const;
  // index into oriented_edges of (u,v); -1 if absent
  int oriented_id(int u, int v) const;
};

Graph build_graph(int n, const std::vector<std::pair<int, int>>& edge_list);

// Deterministic test families
Graph path_graph(int n);
Graph cycle_graph(int n);
Graph complete_graph(int n);
Graph complete_bipartite(int a, int b);
Graph star_graph(int n);  // n = total vertex count, center 0
Graph balanced_tree(int branching, int depth);
Graph heawood_graph();
Graph prism_graph();  // K3 x K2, 3-regular on 6 vertices
Graph random_regular(int n, int degree, uint64_t seed);

// Connected components of (V, edge_subset); edge ids index Graph::edges.
// Every vertex appears, isolated ones as singletons. Components and their
// members are sorted.
std::vector<std::vector<int>> components(const Graph& g, const std::vector<int>& edge_ids);
std::vector<std::vector<int>> components(const Graph& g,
                                         const std::vector<std::pair<int, int>>& edge_subset);

// Component labels (smallest member) for the subgraph (V, mask over edge ids).
// Cheap form used by the samplers and the random-cluster weights.
std::vector<int> component_labels(const Graph& g, uint64_t edge_mask);

int girth(const Graph& g);  // INT_MAX if acyclic
bool is_bipartite(const Graph& g, std::vector<int>* side = nullptr);
bool is_regular(const Graph& g);
bool is_connected(const Graph& g);
std::vector<int> bfs_distances(const Graph& g, int source);  // -1 if unreachable

}  // namespace spinlab
