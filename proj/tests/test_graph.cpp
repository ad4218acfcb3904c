#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <climits>
#include <set>

#include "spinlab/graph.hpp"
#include "spinlab/saw_tree.hpp"
#include "test_support.hpp"

using namespace spinlab;

TEST_CASE("build_graph basics") {
  Graph k2 = build_graph(2, {{0, 1}});
  CHECK(k2.max_degree == 1);
  CHECK(k2.m() == 1);
  CHECK(k2.oriented_edges.size() == 2);

  Graph c4 = build_graph(4, {{0, 1}, {1, 2}, {2, 3}, {3, 0}});
  CHECK(c4.max_degree == 2);
  CHECK(c4.oriented_edges.size() == 8);
  CHECK(c4.edge_id(3, 0) >= 0);
  CHECK(c4.edge_id(0, 2) == -1);
  CHECK(c4.oriented_id(1, 0) == c4.oriented_id(0, 1) + 1);

  CHECK_THROWS_AS(build_graph(3, {{0, 1}, {0, 1}}), Error);
  CHECK_THROWS_AS(build_graph(3, {{1, 0}, {0, 1}}), Error);  // same edge, both orders
  CHECK_THROWS_AS(build_graph(3, {{2, 2}}), Error);
  CHECK_THROWS_AS(build_graph(2, {{0, 5}}), Error);
  try {
    build_graph(3, {{0, 1}, {0, 1}});
  } catch (const Error& e) {
    CHECK(e.code() == Err::DuplicateEdge);
  }
}

TEST_CASE("generators") {
  Graph h = heawood_graph();
  CHECK(h.n == 14);
  CHECK(h.m() == 21);
  CHECK(is_regular(h));
  CHECK(h.max_degree == 3);
  CHECK(girth(h) == 6);  // BFS oracle
  CHECK(is_bipartite(h));

  Graph k33 = complete_bipartite(3, 3);
  CHECK(k33.n == 6);
  CHECK(k33.m() == 9);
  CHECK(is_regular(k33));
  CHECK(k33.max_degree == 3);
  CHECK(girth(k33) == 4);

  CHECK(girth(cycle_graph(4)) == 4);
  CHECK(cycle_graph(4).max_degree == 2);
  CHECK(girth(path_graph(5)) == INT_MAX);

  Graph bt = balanced_tree(2, 3);
  CHECK(bt.n == 15);
  CHECK(bt.m() == 14);

  Graph pr = prism_graph();
  CHECK(is_regular(pr));
  CHECK(pr.max_degree == 3);
  CHECK(girth(pr) == 3);
}

TEST_CASE("random_regular") {
  CHECK_THROWS_AS(random_regular(5, 3, 1), Error);  // odd n*degree
  for (uint64_t seed : {1ull, 2ull, 77ull}) {
    Graph g = random_regular(8, 3, seed);
    CHECK(g.n == 8);
    CHECK(is_regular(g));
    CHECK(g.max_degree == 3);
    // deterministic per seed
    Graph g2 = random_regular(8, 3, seed);
    CHECK(g.edges == g2.edges);
  }
  CHECK(random_regular(8, 3, 1).edges != random_regular(8, 3, 2).edges);
}

TEST_CASE("components") {
  Graph c4 = cycle_graph(4);
  auto singletons = components(c4, std::vector<int>{});
  CHECK(singletons.size() == 4);
  auto whole = components(c4, std::vector<int>{0, 1, 2, 3});
  CHECK(whole.size() == 1);
  CHECK(whole[0].size() == 4);
  auto dominoes = components(c4, std::vector<std::pair<int, int>>{{0, 1}, {2, 3}});
  CHECK(dominoes.size() == 2);
  CHECK_THROWS_AS(components(c4, std::vector<std::pair<int, int>>{{0, 2}}), Error);

  // idempotent under adding intra-component edges
  Graph k4 = complete_graph(4);
  auto base = components(k4, std::vector<std::pair<int, int>>{{0, 1}, {1, 2}});
  auto more = components(k4, std::vector<std::pair<int, int>>{{0, 1}, {1, 2}, {0, 2}});
  CHECK(base == more);
}

TEST_CASE("saw tree of a tree is the tree itself") {
  for (int n = 2; n <= 9; ++n) {
    for (const Graph& t : spinlab::testing::all_trees(n)) {
      PinnedTree pt = saw_tree(t, 0);
      CHECK(pt.tree.n == t.n);
      CHECK(pt.tree.m() == t.m());
      // origin map bijective
      std::set<int> seen(pt.origin.begin(), pt.origin.end());
      CHECK(int(seen.size()) == t.n);
      CHECK(spinlab::testing::tree_canonical(pt.tree) == spinlab::testing::tree_canonical(t));
      for (int v = 0; v < pt.tree.n; ++v) CHECK(pt.is_free(v));
    }
  }
}

TEST_CASE("saw tree cycle-closing pins") {
  // 4-cycle from the root: two branches of length 3, one closing copy pinned
  // each way
  Graph c4 = cycle_graph(4);
  PinnedTree pt = saw_tree(c4, 0);
  CHECK(pt.tree.n == 9);
  int pinned0 = 0, pinned1 = 0, free_count = 0;
  for (int v = 0; v < pt.tree.n; ++v) {
    if (pt.pin[size_t(v)] == 0) ++pinned0;
    else if (pt.pin[size_t(v)] == 1) ++pinned1;
    else ++free_count;
  }
  CHECK(pinned0 == 1);
  CHECK(pinned1 == 1);
  CHECK(free_count == 7);
  for (int v = 0; v < pt.tree.n; ++v)
    if (pt.pin[size_t(v)] >= 0) {
      CHECK(pt.origin[size_t(v)] == 0);       // closing copies revisit the root
      CHECK(pt.tree.degree(v) == 1);          // and are leaves
    }

  // triangle: two branches of length 2, closing copies pinned oppositely
  PinnedTree tri = saw_tree(complete_graph(3), 0);
  CHECK(tri.tree.n == 7);
  std::multiset<int> pins;
  for (int v = 0; v < tri.tree.n; ++v)
    if (tri.pin[size_t(v)] >= 0) pins.insert(int(tri.pin[size_t(v)]));
  CHECK(pins == std::multiset<int>{0, 1});
}

TEST_CASE("saw tree free copies keep their graph degree") {
  for (const Graph& g : {cycle_graph(4), complete_graph(4), complete_bipartite(2, 3),
                         prism_graph(), cycle_graph(5)}) {
    for (int root = 0; root < g.n; ++root) {
      PinnedTree pt = saw_tree(g, root);
      for (int v = 0; v < pt.tree.n; ++v)
        if (pt.is_free(v)) CHECK(pt.tree.degree(v) == g.degree(pt.origin[size_t(v)]));
    }
  }
}

TEST_CASE("saw tree with pinning and caps") {
  Graph c4 = cycle_graph(4);
  CHECK_THROWS_AS(saw_tree(c4, 0, {{0, 1}}), Error);  // RootPinned
  PinnedTree pt = saw_tree(c4, 0, {{2, 1}});
  // copies of vertex 2 are pinned leaves
  for (int v = 0; v < pt.tree.n; ++v)
    if (pt.origin[size_t(v)] == 2) {
      CHECK(pt.pin[size_t(v)] == 1);
      CHECK(pt.tree.degree(v) == 1);
    }
  PinnedTree capped = saw_tree(c4, 0, {}, {}, 1);
  CHECK(capped.truncated);
  CHECK(capped.tree.n == 3);  // root plus two depth-1 leaves
  CHECK_THROWS_AS(saw_tree(complete_graph(8), 0, {}, {}, std::nullopt, 100), Error);
}

TEST_CASE("saw tree respects the ordering parameter") {
  Graph c4 = cycle_graph(4);
  PinnedTree a = saw_tree(c4, 0);
  PinnedTree b = saw_tree(c4, 0, {}, {3, 2, 1, 0});
  // flipping the order swaps which closing copy is pinned 0 vs 1
  auto pins_of = [](const PinnedTree& t) {
    std::vector<int> p;
    for (int v = 0; v < t.tree.n; ++v)
      if (t.pin[size_t(v)] >= 0) p.push_back(t.pin[size_t(v)]);
    return p;
  };
  CHECK(pins_of(a).size() == 2);
  CHECK(pins_of(b).size() == 2);
  CHECK(pins_of(a) != pins_of(b));
}
