#include "spinlab/saw_tree.hpp"

#include <algorithm>
#include <numeric>

namespace spinlab {

namespace {

struct SawBuilder {
  const Graph& g;
  const std::map<int, int>& pinning;
  std::vector<int> rank;  // position of each vertex in the ordering
  std::optional<long> depth_cap;
  long node_limit;

  std::vector<std::pair<int, int>> tree_edges;
  std::vector<int8_t> pin;
  std::vector<int> origin, parent;
  std::vector<int> path;       // current walk, graph vertices
  std::vector<int> path_pos;   // graph vertex -> index in path, -1 if absent
  bool truncated = false;

  int new_node(int graph_v, int par, int8_t p) {
    require(long(origin.size()) < node_limit, Err::TreeTooLarge,
            "SAW tree exceeds node limit " + std::to_string(node_limit));
    origin.push_back(graph_v);
    parent.push_back(par);
    pin.push_back(p);
    if (par >= 0) tree_edges.emplace_back(par, int(origin.size()) - 1);
    return int(origin.size()) - 1;
  }

  // Walk currently ends at graph vertex v = path.back(), tree node `node`.
  void extend(int node) {
    int v = path.back();
    if (depth_cap && long(path.size()) - 1 >= *depth_cap) {
      truncated = true;
      return;
    }
    int prev = path.size() >= 2 ? path[path.size() - 2] : -1;
    for (int w : g.adjacency[size_t(v)]) {
      if (w == prev) continue;
      int at = path_pos[size_t(w)];
      if (at >= 0) {
        // cycle closing at the copy of w = path[at]: pinned 0 when the walk
        // successor of w precedes the current vertex in reverse order
        int succ = path[size_t(at) + 1];
        int8_t p = rank[size_t(succ)] > rank[size_t(v)] ? int8_t(0) : int8_t(1);
        new_node(w, node, p);
        continue;
      }
      auto pinned_it = pinning.find(w);
      if (pinned_it != pinning.end()) {
        new_node(w, node, int8_t(pinned_it->second));
        continue;
      }
      int child = new_node(w, node, -1);
      path.push_back(w);
      path_pos[size_t(w)] = int(path.size()) - 1;
      extend(child);
      path_pos[size_t(w)] = -1;
      path.pop_back();
    }
  }
};

}  // namespace

PinnedTree saw_tree(const Graph& g, int root, const std::map<int, int>& pinning,
                    const std::vector<int>& ordering, std::optional<long> depth_cap,
                    long node_limit) {
  require(root >= 0 && root < g.n, Err::VertexOutOfRange, "root " + std::to_string(root));
  require(pinning.find(root) == pinning.end(), Err::RootPinned, "root must be unpinned");
  std::vector<int> rank(size_t(g.n));
  if (ordering.empty()) {
    std::iota(rank.begin(), rank.end(), 0);
  } else {
    require(int(ordering.size()) == g.n, Err::VertexOutOfRange, "ordering must permute V");
    std::vector<int> seen(size_t(g.n), 0);
    for (int i = 0; i < g.n; ++i) {
      int v = ordering[size_t(i)];
      require(v >= 0 && v < g.n && !seen[size_t(v)], Err::VertexOutOfRange,
              "ordering must permute V");
      seen[size_t(v)] = 1;
      rank[size_t(v)] = i;
    }
  }

  SawBuilder b{g, pinning, std::move(rank), depth_cap, node_limit, {}, {}, {}, {}, {}, {}, false};
  b.path_pos.assign(size_t(g.n), -1);
  int root_node = b.new_node(root, -1, -1);
  b.path.push_back(root);
  b.path_pos[size_t(root)] = 0;
  b.extend(root_node);

  PinnedTree t;
  t.tree = build_graph(int(b.origin.size()), b.tree_edges);
  t.root = 0;
  t.pin = std::move(b.pin);
  t.origin = std::move(b.origin);
  t.parent = std::move(b.parent);
  t.truncated = b.truncated;
  return t;
}

}  // namespace spinlab
