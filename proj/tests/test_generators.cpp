#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "test_util.hpp"

#include "sparsedecomp/generators.hpp"
#include "sparsedecomp/trees.hpp"

using namespace sparsedecomp;
using namespace sdt;

TEST_CASE("lks extremal construction") {
  Graph g = lks_extremal(8);
  CHECK(g.e() == 28 - 10); // C(8,2) - C(5,2)
  CHECK_THROWS_AS(lks_extremal(7), std::invalid_argument);

  // n/2 - 1 vertices of full degree, n/2 + 1 of degree n/2 - 1
  Graph h = lks_extremal(10);
  int full = 0, low = 0;
  for (int v = 0; v < 10; ++v) {
    if (h.degree(v) == 9) ++full;
    if (h.degree(v) == 4) ++low;
  }
  CHECK(full == 4);
  CHECK(low == 6);
}

TEST_CASE("es extremal construction") {
  Graph g = es_extremal(10, 6);
  CHECK(g.e() == 2 * 8 + 1); // s(n-s) + C(s,2), s = 2
  Graph g2 = es_extremal(5, 2);
  CHECK(g2.e() == 0);
  // the s-set dominates everything
  Graph h = es_extremal(12, 8);
  for (int v = 0; v < 12; ++v)
    CHECK(h.deg_in(v, {0, 1, 2}) >= (v < 3 ? 2 : 3));
}

TEST_CASE("tree enumeration counts") {
  const long long expected[] = {1, 1, 1, 2, 3, 6, 11, 23, 47, 106};
  for (int k = 1; k <= 9; ++k) // k = 10 runs in the acceptance suite
    CHECK(static_cast<long long>(all_trees(k).size()) == expected[k - 1]);
  CHECK_THROWS_AS(all_trees(11), std::invalid_argument);
}

TEST_CASE("tree canonical form distinguishes path and star") {
  CHECK(tree_canonical_form(RootedTree::path(4)) != tree_canonical_form(RootedTree::star(4)));
  CHECK(tree_canonical_form(RootedTree::path(2)) == tree_canonical_form(RootedTree::star(2)));
}

TEST_CASE("tree independence number") {
  CHECK(tree_independence_number(RootedTree::star(5)) == 4);
  CHECK(tree_independence_number(RootedTree::path(5)) == 3);
  CHECK(tree_independence_number(RootedTree::path(4)) == 2);
}

TEST_CASE("random graph generators") {
  CHECK(random_graph_gnp(10, Rat(0), 1).e() == 0);
  CHECK(random_graph_gnp(10, Rat(1), 1).e() == 45);
  CHECK(random_graph_gnm(10, 17, 5).e() == 17);

  Graph r = regular_graph(6, 2, 3);
  for (int v = 0; v < 6; ++v) CHECK(r.degree(v) == 2);
  CHECK_THROWS_AS(regular_graph(5, 3, 1), std::invalid_argument);

  // determinism
  CHECK(random_graph_gnp(20, Rat(1, 3), 42) == random_graph_gnp(20, Rat(1, 3), 42));
  CHECK(regular_graph(10, 3, 9) == regular_graph(10, 3, 9));
}

TEST_CASE("disjoint union") {
  Graph u = disjoint_union({complete_graph(3), complete_graph(4)});
  CHECK(u.n() == 7);
  CHECK(u.e() == 3 + 6);
  CHECK(u.has_edge(3, 4));
  CHECK(!u.has_edge(2, 3));
}

TEST_CASE("locally dense generator") {
  auto inst = locally_dense(2, 5, 1, Rat(1), 1);
  REQUIRE(inst.pattern.e() == 1);
  CHECK(inst.host.e() == 25); // density 1 means complete bipartite

  auto inst0 = locally_dense(4, 5, 0, Rat(1, 2), 1);
  CHECK(inst0.host.e() == 0); // no pattern edges, no host edges

  // e(G) within 3 sigma of the expectation on every pattern pair
  auto inst2 = locally_dense(6, 20, 2, Rat(1, 2), 77);
  for (const auto& [i, j] : inst2.pattern.edges()) {
    long long cnt = cross_edges(inst2.host, inst2.ensemble[i], inst2.ensemble[j]);
    double mean = 400 * 0.5, sigma = std::sqrt(400 * 0.25);
    CHECK(std::abs(cnt - mean) <= 3 * sigma);
  }
  // pattern maxdeg respected
  CHECK(inst2.pattern.max_degree() <= 2);
}
