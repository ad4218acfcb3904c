#include "spinlab/graph.hpp"

#include <algorithm>
#include <climits>
#include <deque>
#include <numeric>
#include <set>

#include "spinlab/rng.hpp"

namespace spinlab {

int Graph::edge_id(int u, int v) const {
  if (u > v) std::swap(u, v);
  auto it = std::lower_bound(edges.begin(), edges.end(), std::make_pair(u, v));
  if (it == edges.end() || *it != std::make_pair(u, v)) return -1;
  return int(it - edges.begin());
}

int Graph::oriented_id(int u, int v) const {
  int e = edge_id(u, v);
  if (e < 0) return -1;
  return 2 * e + (u < v ? 0 : 1);
}

Graph build_graph(int n, const std::vector<std::pair<int, int>>& edge_list) {
  require(n >= 0, Err::VertexOutOfRange, "negative vertex count");
  Graph g;
  g.n = n;
  std::set<std::pair<int, int>> seen;
  for (auto [u, v] : edge_list) {
    require(u != v, Err::SelfLoop, "edge (" + std::to_string(u) + "," + std::to_string(v) + ")");
    require(u >= 0 && v >= 0 && u < n && v < n, Err::VertexOutOfRange,
            "edge (" + std::to_string(u) + "," + std::to_string(v) + ")");
    if (u > v) std::swap(u, v);
    require(seen.insert({u, v}).second, Err::DuplicateEdge,
            "edge (" + std::to_string(u) + "," + std::to_string(v) + ")");
  }
  g.edges.assign(seen.begin(), seen.end());
  g.adjacency.assign(size_t(n), {});
  for (auto [u, v] : g.edges) {
    g.adjacency[size_t(u)].push_back(v);
    g.adjacency[size_t(v)].push_back(u);
    g.oriented_edges.emplace_back(u, v);
    g.oriented_edges.emplace_back(v, u);
  }
  for (auto& a : g.adjacency) {
    std::sort(a.begin(), a.end());
    g.max_degree = std::max<int>(g.max_degree, int(a.size()));
  }
  return g;
}

Graph path_graph(int n) {
  std::vector<std::pair<int, int>> e;
  for (int i = 0; i + 1 < n; ++i) e.emplace_back(i, i + 1);
  return build_graph(n, e);
}

Graph cycle_graph(int n) {
  require(n >= 3, Err::InfeasibleFamily, "cycle needs n >= 3");
  std::vector<std::pair<int, int>> e;
  for (int i = 0; i < n; ++i) e.emplace_back(i, (i + 1) % n);
  return build_graph(n, e);
}

Graph complete_graph(int n) {
  std::vector<std::pair<int, int>> e;
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j) e.emplace_back(i, j);
  return build_graph(n, e);
}

Graph complete_bipartite(int a, int b) {
  require(a >= 1 && b >= 1, Err::InfeasibleFamily, "sides must be nonempty");
  std::vector<std::pair<int, int>> e;
  for (int i = 0; i < a; ++i)
    for (int j = 0; j < b; ++j) e.emplace_back(i, a + j);
  return build_graph(a + b, e);
}

Graph star_graph(int n) {
  require(n >= 2, Err::InfeasibleFamily, "star needs n >= 2");
  std::vector<std::pair<int, int>> e;
  for (int i = 1; i < n; ++i) e.emplace_back(0, i);
  return build_graph(n, e);
}

Graph balanced_tree(int branching, int depth) {
  require(branching >= 1 && depth >= 0, Err::InfeasibleFamily, "bad branching/depth");
  std::vector<std::pair<int, int>> e;
  std::vector<int> frontier = {0};
  int next = 1;
  for (int d = 0; d < depth; ++d) {
    std::vector<int> nf;
    for (int v : frontier)
      for (int c = 0; c < branching; ++c) {
        e.emplace_back(v, next);
        nf.push_back(next++);
      }
    frontier = std::move(nf);
  }
  return build_graph(next, e);
}

Graph heawood_graph() {
  // Hamiltonian cycle on 14 vertices plus the LCF [5,-5]^7 chords.
  std::vector<std::pair<int, int>> e;
  for (int i = 0; i < 14; ++i) e.emplace_back(i, (i + 1) % 14);
  for (int i = 0; i < 14; i += 2) e.emplace_back(i, (i + 5) % 14);
  return build_graph(14, e);
}

Graph prism_graph() {
  return build_graph(6, {{0, 1}, {1, 2}, {0, 2}, {3, 4}, {4, 5}, {3, 5}, {0, 3}, {1, 4}, {2, 5}});
}

Graph random_regular(int n, int degree, uint64_t seed) {
  require(n >= 1 && degree >= 0 && degree < n, Err::InfeasibleFamily, "need 0 <= degree < n");
  require((int64_t(n) * degree) % 2 == 0, Err::InfeasibleFamily, "n*degree must be even");
  Rng rng(seed, 0, /*phase=*/0x9e67);
  // Configuration model: pair up stubs uniformly, resample on loops or
  // parallel edges. Deterministic for a fixed seed.
  for (int attempt = 0; attempt < 100000; ++attempt) {
    std::vector<int> stubs;
    stubs.reserve(size_t(n) * size_t(degree));
    for (int v = 0; v < n; ++v)
      for (int k = 0; k < degree; ++k) stubs.push_back(v);
    for (size_t i = stubs.size(); i > 1; --i) std::swap(stubs[i - 1], stubs[rng.next_below(i)]);
    std::set<std::pair<int, int>> e;
    bool ok = true;
    for (size_t i = 0; i + 1 < stubs.size(); i += 2) {
      int u = stubs[i], v = stubs[i + 1];
      if (u == v) {
        ok = false;
        break;
      }
      if (u > v) std::swap(u, v);
      if (!e.insert({u, v}).second) {
        ok = false;
        break;
      }
    }
    if (ok) return build_graph(n, std::vector<std::pair<int, int>>(e.begin(), e.end()));
  }
  fail(Err::InfeasibleFamily, "configuration model failed to produce a simple graph");
}

namespace {

struct UnionFind {
  std::vector<int> parent, size;
  explicit UnionFind(int n) : parent(size_t(n)), size(size_t(n), 1) {
    std::iota(parent.begin(), parent.end(), 0);
  }
  int find(int x) {
    while (parent[size_t(x)] != x) {
      parent[size_t(x)] = parent[size_t(parent[size_t(x)])];
      x = parent[size_t(x)];
    }
    return x;
  }
  void unite(int a, int b) {
    a = find(a);
    b = find(b);
    if (a == b) return;
    if (size[size_t(a)] < size[size_t(b)]) std::swap(a, b);
    parent[size_t(b)] = a;
    size[size_t(a)] += size[size_t(b)];
  }
};

}  // namespace

std::vector<std::vector<int>> components(const Graph& g, const std::vector<int>& edge_ids) {
  UnionFind uf(g.n);
  for (int e : edge_ids) {
    require(e >= 0 && e < g.m(), Err::EdgeNotInGraph, "edge id " + std::to_string(e));
    uf.unite(g.edges[size_t(e)].first, g.edges[size_t(e)].second);
  }
  std::vector<std::vector<int>> by_root(size_t(g.n));
  for (int v = 0; v < g.n; ++v) by_root[size_t(uf.find(v))].push_back(v);
  std::vector<std::vector<int>> out;
  for (auto& c : by_root)
    if (!c.empty()) out.push_back(std::move(c));
  return out;
}

std::vector<std::vector<int>> components(const Graph& g,
                                         const std::vector<std::pair<int, int>>& edge_subset) {
  std::vector<int> ids;
  ids.reserve(edge_subset.size());
  for (auto [u, v] : edge_subset) {
    int e = g.edge_id(u, v);
    require(e >= 0, Err::EdgeNotInGraph,
            "edge (" + std::to_string(u) + "," + std::to_string(v) + ")");
    ids.push_back(e);
  }
  return components(g, ids);
}

std::vector<int> component_labels(const Graph& g, uint64_t edge_mask) {
  UnionFind uf(g.n);
  for (int e = 0; e < g.m(); ++e)
    if (edge_mask >> e & 1) uf.unite(g.edges[size_t(e)].first, g.edges[size_t(e)].second);
  std::vector<int> label(size_t(g.n), -1);
  for (int v = 0; v < g.n; ++v) {
    int r = uf.find(v);
    if (label[size_t(r)] < 0) label[size_t(r)] = r;
    label[size_t(v)] = label[size_t(r)];
  }
  return label;
}

int girth(const Graph& g) {
  // Shortest cycle through each start vertex by BFS.
  int best = INT_MAX;
  for (int s = 0; s < g.n; ++s) {
    std::vector<int> dist(size_t(g.n), -1), par(size_t(g.n), -1);
    std::deque<int> q{s};
    dist[size_t(s)] = 0;
    while (!q.empty()) {
      int u = q.front();
      q.pop_front();
      for (int w : g.adjacency[size_t(u)]) {
        if (dist[size_t(w)] < 0) {
          dist[size_t(w)] = dist[size_t(u)] + 1;
          par[size_t(w)] = u;
          q.push_back(w);
        } else if (w != par[size_t(u)]) {
          best = std::min(best, dist[size_t(u)] + dist[size_t(w)] + 1);
        }
      }
    }
  }
  return best;
}

bool is_bipartite(const Graph& g, std::vector<int>* side) {
  std::vector<int> color(size_t(g.n), -1);
  for (int s = 0; s < g.n; ++s) {
    if (color[size_t(s)] >= 0) continue;
    color[size_t(s)] = 0;
    std::deque<int> q{s};
    while (!q.empty()) {
      int u = q.front();
      q.pop_front();
      for (int w : g.adjacency[size_t(u)]) {
        if (color[size_t(w)] < 0) {
          color[size_t(w)] = 1 - color[size_t(u)];
          q.push_back(w);
        } else if (color[size_t(w)] == color[size_t(u)]) {
          return false;
        }
      }
    }
  }
  if (side) *side = color;
  return true;
}

bool is_regular(const Graph& g) {
  for (int v = 0; v < g.n; ++v)
    if (g.degree(v) != g.max_degree) return false;
  return true;
}

bool is_connected(const Graph& g) {
  if (g.n == 0) return true;
  auto d = bfs_distances(g, 0);
  for (int v = 0; v < g.n; ++v)
    if (d[size_t(v)] < 0) return false;
  return true;
}

std::vector<int> bfs_distances(const Graph& g, int source) {
  std::vector<int> dist(size_t(g.n), -1);
  std::deque<int> q{source};
  dist[size_t(source)] = 0;
  while (!q.empty()) {
    int u = q.front();
    q.pop_front();
    for (int w : g.adjacency[size_t(u)])
      if (dist[size_t(w)] < 0) {
        dist[size_t(w)] = dist[size_t(u)] + 1;
        q.push_back(w);
      }
  }
  return dist;
}

}  // namespace spinlab
