#pragma once

#include <map>
#include <optional>
#include <vector>

#include "spinlab/graph.hpp"

namespace spinlab {

// Self-avoiding-walk tree rooted at a graph vertex. Cycle-closing copies and
// copies of pinned graph vertices are pinned leaves; free copies keep the
// degree of their origin.
struct PinnedTree {
  Graph tree;
  int root = 0;
  std::vector<int8_t> pin;     // per tree vertex: -1 free, else 0/1
  std::vector<int> origin;     // tree vertex -> graph vertex
  std::vector<int> parent;     // -1 at root
  bool truncated = false;      // some branch hit the depth cap

  bool is_free(int v) const { return pin[size_t(v)] < 0; }
};

// ordering: permutation of V used for the cycle-closing pin rule; empty means
// vertex-index order. depth_cap truncates the walk enumeration; truncated
// leaves stay free (conservative for influence upper bounds).
PinnedTree saw_tree(const Graph& g, int root, const std::map<int, int>& pinning = {},
                    const std::vector<int>& ordering = {},
                    std::optional<long> depth_cap = std::nullopt, long node_limit = 1000000);

}  // namespace spinlab
