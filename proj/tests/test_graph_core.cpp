#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "test_util.hpp"

#include "sparsedecomp/graph.hpp"

using namespace sparsedecomp;
using namespace sdt;

TEST_CASE("ordered pair counts") {
  Graph tri = complete_graph(3);
  VertexSet all{0, 1, 2};
  CHECK(ordered_pair_count(tri, all, all) == 6); // 2 e(X) = e(X, X)

  Graph p3 = path_graph(3);
  CHECK(ordered_pair_count(p3, {0, 2}, {1}) == 2);
  CHECK(ordered_pair_count(p3, {0, 2}, {1}) == ordered_pairs_oracle(p3, {0, 2}, {1}));

  Graph two = Graph::from_edges(4, {{0, 1}, {2, 3}});
  CHECK(ordered_pair_count(two, {0, 1}, {2, 3}) == 0);

  CHECK_THROWS_AS(ordered_pair_count(two, {5}, {0}), std::invalid_argument);
}

TEST_CASE("2 e(X) = e(X,X) on random graphs") {
  Rng rng(7);
  for (int t = 0; t < 50; ++t) {
    int n = 3 + static_cast<int>(rng.below(12));
    Graph g = random_graph_gnp(n, Rat(1, 2), rng.next_u64());
    VertexSet x;
    for (int v = 0; v < n; ++v)
      if (rng.bernoulli(1, 2)) x.push_back(v);
    long long inside = 0;
    for (const auto& [u, v] : g.edges())
      if (set_contains(x, u) && set_contains(x, v)) ++inside;
    CHECK(ordered_pair_count(g, x, x) == 2 * inside);
  }
}

TEST_CASE("density") {
  Graph kb = complete_bipartite(2, 3);
  CHECK(density(kb, range_set(0, 2), range_set(2, 5)) == Rat(1));

  Graph none = Graph::empty(4);
  CHECK(density(none, {0, 1}, {2, 3}) == Rat(0));

  // star with center 0, leaves 1,2,3; u={1,2}, w={0,3} -> 2 of 4 pairs
  Graph star = Graph::from_edges(4, {{0, 1}, {0, 2}, {0, 3}});
  CHECK(density(star, {1, 2}, {0, 3}) == Rat(1, 2));
  CHECK(density(star, {1, 2}, {0, 3}) == density(star, {0, 3}, {1, 2}));

  CHECK_THROWS_AS(density(star, {}, {0}), std::invalid_argument);
  CHECK_THROWS_AS(density(star, {0, 1}, {1, 2}), std::invalid_argument);
}

TEST_CASE("density in [0,1] and symmetric on random pairs") {
  Rng rng(11);
  for (int t = 0; t < 60; ++t) {
    int n = 4 + static_cast<int>(rng.below(10));
    Graph g = random_graph_gnp(n, Rat(1, 3), rng.next_u64());
    VertexSet u, w;
    for (int v = 0; v < n; ++v) {
      auto r = rng.below(3);
      if (r == 0) u.push_back(v);
      if (r == 1) w.push_back(v);
    }
    if (u.empty() || w.empty()) continue;
    Rat d = density(g, u, w);
    CHECK(d >= 0);
    CHECK(d <= 1);
    CHECK(d == density(g, w, u));
  }
}

TEST_CASE("common refinement") {
  Partition p{{{1, 2}, {3, 4}}};
  Partition q{{{1, 3}, {2, 4}}};
  Partition r = common_refinement(p, q);
  CHECK(r.blocks.size() == 4);

  Partition same = common_refinement(p, p);
  CHECK(same.blocks == p.blocks);

  Partition a{{{1, 2, 3}}};
  Partition b{{{1, 2}, {3}}};
  Partition ab = common_refinement(a, b);
  CHECK(ab.blocks == b.blocks);

  Partition bad{{{1, 2}}};
  CHECK_THROWS_AS(common_refinement(p, bad), std::invalid_argument);
}

TEST_CASE("common refinement refines both and is coarsest") {
  Rng rng(13);
  for (int t = 0; t < 40; ++t) {
    int n = 6 + static_cast<int>(rng.below(8));
    auto random_partition = [&](int blocks) {
      Partition p;
      p.blocks.resize(blocks);
      for (int v = 0; v < n; ++v) p.blocks[rng.below(blocks)].push_back(v);
      p.blocks.erase(std::remove_if(p.blocks.begin(), p.blocks.end(),
                                    [](const VertexSet& b) { return b.empty(); }),
                     p.blocks.end());
      return p;
    };
    Partition p = random_partition(3), q = random_partition(3);
    Partition r = common_refinement(p, q);
    auto refines = [](const Partition& fine, const Partition& coarse) {
      for (const auto& f : fine.blocks) {
        bool inside = false;
        for (const auto& c : coarse.blocks)
          if (set_intersection(f, c).size() == f.size()) inside = true;
        if (!inside) return false;
      }
      return true;
    };
    CHECK(refines(r, p));
    CHECK(refines(r, q));
    // coarsest: blocks are exactly the nonempty pairwise intersections
    for (const auto& pb : p.blocks)
      for (const auto& qb : q.blocks) {
        VertexSet cell = set_intersection(pb, qb);
        if (cell.empty()) continue;
        bool found = false;
        for (const auto& rb : r.blocks)
          if (rb == cell) found = true;
        CHECK(found);
      }
  }
}

TEST_CASE("min degree subgraph examples") {
  Graph k4 = complete_graph(4);
  CHECK(min_degree_subgraph(k4, 3) == k4);

  // any tree peels away at ell = 2
  Graph tree = Graph::from_edges(7, {{0, 1}, {0, 2}, {1, 3}, {1, 4}, {2, 5}, {2, 6}});
  CHECK(min_degree_subgraph(tree, 2).e() == 0);

  // K3 plus a pendant: the pendant goes, the triangle stays
  Graph k3p = Graph::from_edges(4, {{0, 1}, {0, 2}, {1, 2}, {2, 3}});
  Graph core = min_degree_subgraph(k3p, 2);
  CHECK(core.e() == 3);
  CHECK(core.support() == VertexSet{0, 1, 2});
  CHECK(core.e() >= k3p.e() - 1 * 4);
}

TEST_CASE("min degree subgraph: order independence and edge bound") {
  Rng rng(17);
  for (int t = 0; t < 1000; ++t) {
    int n = 3 + static_cast<int>(rng.below(14));
    Graph g = random_graph_gnp(n, Rat(1 + static_cast<long long>(rng.below(4)), 6),
                               rng.next_u64());
    long long ell = 1 + static_cast<long long>(rng.below(4));
    Graph core = min_degree_subgraph(g, ell);
    // edge bound e(g') >= e(g) - (ell-1) n
    CHECK(core.e() >= g.e() - (ell - 1) * n);
    // mindeg over the support
    for (Vertex v : core.support()) CHECK(core.degree(v) >= ell);
    // peeling in reversed vertex order gives the same core
    std::vector<long long> deg(n);
    std::vector<char> dead(n, 0);
    for (int v = 0; v < n; ++v) deg[v] = g.degree(v);
    bool changed = true;
    while (changed) {
      changed = false;
      for (int v = n - 1; v >= 0; --v) {
        if (dead[v] || deg[v] >= ell) continue;
        dead[v] = 1;
        changed = true;
        for (Vertex w : g.neighbors(v))
          if (!dead[w]) --deg[w];
      }
    }
    VertexSet other;
    for (int v = 0; v < n; ++v)
      if (!dead[v] && g.degree(v) > 0) other.push_back(v);
    VertexSet mine = min_degree_core_vertices(g, ell);
    // compare on vertices that carry edges (isolated survivors are immaterial)
    VertexSet mine_live;
    for (Vertex v : mine)
      if (core.degree(v) > 0) mine_live.push_back(v);
    VertexSet other_live;
    Graph other_core = g.induced(other);
    for (Vertex v : other)
      if (other_core.degree(v) > 0) other_live.push_back(v);
    CHECK(mine_live == other_live);
  }
}
