#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "test_util.hpp"

#include "sparsedecomp/generators.hpp"
#include "sparsedecomp/lks.hpp"

using namespace sparsedecomp;
using namespace sdt;

namespace {

// random member: wires a planted large side to the degree threshold
Graph random_member(int n, long long k, const Rat& eta, std::uint64_t seed, int max_extra = 3) {
  Rng rng(seed);
  LksParams p{k, eta};
  long long need_large = ceil_ll((Rat(1, 2) + eta) * Rat(n));
  long long degree = ceil_ll(p.large_threshold());
  std::vector<Edge> es;
  std::vector<long long> deg(n, 0);
  for (int v = 0; v < need_large; ++v) {
    long long want = degree + static_cast<long long>(rng.below(max_extra + 1));
    int guard = 0;
    while (deg[v] < want && guard++ < 8 * n) {
      int w = static_cast<int>(rng.below(n));
      if (w == v) continue;
      Edge e = make_edge(v, w);
      if (std::find(es.begin(), es.end(), e) != es.end()) continue;
      es.push_back(e);
      ++deg[v];
      ++deg[w];
    }
  }
  return Graph::from_edges(n, std::move(es));
}

} // namespace

TEST_CASE("degree split") {
  LksParams p{3, Rat(1, 100)};
  Graph k5 = complete_graph(5);
  DegreeSplit s = degree_split(k5, p); // threshold 3.03, degrees 4
  CHECK(s.large.size() == 5);
  CHECK(s.small.empty());

  Graph none = Graph::empty(6);
  DegreeSplit s2 = degree_split(none, p);
  CHECK(s2.small.size() == 6);

  // K10 minus the edges inside a 6-set: 4 vertices of degree 9, 6 of degree 4.
  // At threshold 9 (k = 9, eta = 0) the clique side is the large side; at
  // k = 10 nothing reaches the threshold and membership fails outright.
  Graph fig = lks_extremal(10);
  DegreeSplit s3 = degree_split(fig, LksParams{9, Rat(0)});
  CHECK(s3.large.size() == 4);
  CHECK(s3.small.size() == 6);
  CHECK(set_union(s3.small, s3.large).size() == 10);
  CHECK(sets_disjoint(s3.small, s3.large));
  CHECK_FALSE(is_lks(fig, LksParams{9, Rat(0)})); // 4 < 5
  CHECK(degree_split(fig, LksParams{10, Rat(1, 1000)}).large.empty());
  CHECK_FALSE(is_lks(fig, LksParams{10, Rat(1, 1000)}));
}

TEST_CASE("is_lks") {
  LksParams p{3, Rat(1, 10)};
  CHECK(is_lks(complete_graph(6), p)); // degrees 5 >= 3.3
  CHECK_FALSE(is_lks(Graph::empty(6), p));
  LksParams p10{10, Rat(1, 1000)};
  CHECK_FALSE(is_lks(lks_extremal(10), p10)); // 4 < ceil((1/2+eta) 10)
}

TEST_CASE("is_lks monotone under edge addition") {
  Rng rng(23);
  LksParams p{4, Rat(1, 8)};
  for (int t = 0; t < 100; ++t) {
    int n = 10 + static_cast<int>(rng.below(10));
    Graph g = random_graph_gnp(n, Rat(1, 3), rng.next_u64());
    if (!is_lks(g, p)) continue;
    int u = static_cast<int>(rng.below(n)), v = static_cast<int>(rng.below(n));
    if (u == v || g.has_edge(u, v)) continue;
    std::vector<Edge> es = g.edges();
    es.push_back(make_edge(u, v));
    CHECK(is_lks(Graph::from_edges(n, std::move(es)), p));
  }
}

TEST_CASE("is_lks_min oracle agreement") {
  LksParams p{3, Rat(1, 5)};
  CHECK_FALSE(is_lks_min(Graph::empty(8), p));
  CHECK_FALSE(is_lks_min(complete_graph(8), p)); // slack everywhere

  // exhaustive edge-removal oracle on small instances
  Rng rng(31);
  int checked = 0;
  for (int t = 0; t < 200 && checked < 40; ++t) {
    int n = 8 + static_cast<int>(rng.below(5));
    Graph g = random_member(n, 3, Rat(1, 5), rng.next_u64());
    if (!is_lks(g, p)) continue;
    ++checked;
    bool minimal = true;
    for (const auto& e : g.edges()) {
      Graph h = g.minus_edges({e});
      if (is_lks(h, p)) minimal = false;
    }
    CHECK(is_lks_min(g, p) == minimal);
    Graph m = minimize_to_lks_min(g, p);
    CHECK(is_lks_min(m, p));
  }
  CHECK(checked >= 20);
}

TEST_CASE("minimize_to_lks_min") {
  LksParams p{3, Rat(1, 10)};
  Graph k6 = complete_graph(6);
  Graph m = minimize_to_lks_min(k6, p);
  CHECK(is_lks_min(m, p));
  CHECK(m.n() == 6);
  // already-minimal input is a fixpoint
  CHECK(minimize_to_lks_min(m, p) == m);
  CHECK_THROWS_AS(minimize_to_lks_min(Graph::empty(6), p), std::invalid_argument);
}

TEST_CASE("minimize output passes is_lks_min on 200 random members") {
  Rng rng(37);
  int done = 0;
  for (int t = 0; t < 600 && done < 200; ++t) {
    int n = 10 + static_cast<int>(rng.below(20));
    long long k = 3 + static_cast<long long>(rng.below(3));
    Rat eta(1, 6);
    LksParams p{k, eta};
    Graph g = random_member(n, k, eta, rng.next_u64());
    if (!is_lks(g, p)) continue;
    ++done;
    Graph m = minimize_to_lks_min(g, p);
    CHECK(is_lks_min(m, p));
    CHECK(m.e() <= g.e());
  }
  CHECK(done == 200);
}

TEST_CASE("is_lks_small") {
  LksParams p{2, Rat(1, 5)};
  // edge-heavy complete graph fails e <= k n
  CHECK_FALSE(is_lks_small(complete_graph(8), p));

  // S-vertex adjacent to an overly heavy vertex violates property 2
  // center 0 with degree 5 > ceil(2.4) = 3; leaves are S-vertices
  Graph star5 = Graph::from_edges(6, {{0, 1}, {0, 2}, {0, 3}, {0, 4}, {0, 5}});
  CHECK_FALSE(is_lks_small(star5, p));
}

TEST_CASE("lksmin facts") {
  LksParams p{3, Rat(1, 5)};
  Rng rng(41);
  int done = 0;
  for (int t = 0; t < 200 && done < 30; ++t) {
    int n = 9 + static_cast<int>(rng.below(8));
    Graph g = random_member(n, 3, Rat(1, 5), rng.next_u64());
    if (!is_lks(g, p)) continue;
    Graph m = minimize_to_lks_min(g, p);
    ++done;
    auto rep = check_lksmin_facts(m, p);
    CHECK(rep.s_independent);
    CHECK(rep.high_degree_neighbors_exact);
    CHECK(rep.large_count_bounded);
  }
  CHECK(done >= 20);
  CHECK_THROWS_AS(check_lksmin_facts(complete_graph(8), p), std::invalid_argument);
}

TEST_CASE("edge bound e < k n in the regime eta < 1/20, n > k > 20") {
  Rng rng(43);
  LksParams p{21, Rat(1, 24)};
  int done = 0;
  for (int t = 0; t < 40 && done < 10; ++t) {
    Graph g = random_member(60, 21, Rat(1, 24), rng.next_u64());
    if (!is_lks(g, p)) continue;
    Graph m = minimize_to_lks_min(g, p);
    ++done;
    auto rep = check_lksmin_facts(m, p);
    CHECK(rep.edge_bound_applicable);
    CHECK(rep.edge_bound_holds);
    CHECK(m.e() < 21 * 60);
  }
  CHECK(done >= 5);
}
