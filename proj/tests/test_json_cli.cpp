#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "corpus.hpp"
#include "test_util.hpp"

#include "sparsedecomp/decomposition.hpp"
#include "sparsedecomp/json_io.hpp"

using namespace sparsedecomp;
using namespace sdt;

TEST_CASE("graph json round trip, sorted and 0-based") {
  Graph g = Graph::from_edges(5, {{3, 1}, {0, 4}, {1, 0}});
  Json j = graph_to_json(g);
  CHECK(j["edges"][0][0] == 0);
  CHECK(j["edges"][0][1] == 1); // lexicographic, u < v
  Graph back = graph_from_json(j);
  CHECK(back == g);
  CHECK_THROWS_AS(graph_from_json(Json{{"n", 2}, {"edges", Json::array({Json::array({0, 5})})}}),
                  std::invalid_argument);
}

TEST_CASE("rationals travel exactly; floats are rejected") {
  CHECK(rational_from_json(Json("3/4")) == Rat(3, 4));
  CHECK(rational_from_json(Json(7)) == Rat(7));
  CHECK(rational_to_json(Rat(1, 3)) == Json("1/3"));
  CHECK(rational_to_json(Rat(5)) == Json(5));
  CHECK_THROWS_AS(rational_from_json(Json(0.25)), std::invalid_argument);
  CHECK_THROWS_AS(parse_rational("0.25"), std::invalid_argument);
  CHECK(parse_rational("-7/2") == Rat(-7, 2));
}

TEST_CASE("tree and spot family json") {
  RootedTree t = RootedTree::complete_binary(7);
  RootedTree back = tree_from_json(tree_to_json(t));
  CHECK(back.parent == t.parent);
  CHECK(back.root == t.root);

  SpotFamily fam;
  Graph kb = complete_bipartite(3, 3);
  fam.spots.push_back({range_set(0, 3), range_set(3, 6), kb.edges()});
  SpotFamily fam2 = SpotFamily::from_json(fam.to_json());
  CHECK(fam2.spots.size() == 1);
  CHECK(fam2.spots[0].u == fam.spots[0].u);
  CHECK(fam2.spots[0].f == fam.spots[0].f);
}

TEST_CASE("decomposition json round trip preserves the verifier verdict") {
  CorpusSpec spec;
  spec.n = 220;
  spec.k = 20;
  spec.seed = 77;
  Graph g = corpus_graph(spec);
  DecompParams p = desk_params(spec.k, 77);
  p.omega_star = std::max(Rat(5, 2), Rat(g.max_degree() + 1) / Rat(spec.k));
  auto d = decompose_bounded(g, parity_prepartition(g.n()), p, nullptr);
  Json j = d.to_json();
  BoundedDecomposition back = BoundedDecomposition::from_json(j);
  auto challenges = builtin_challenges(g, back, p, 4, 9);
  CHECK(verify_bounded(g, back, p, challenges).all_pass());
  // serialization is stable
  CHECK(dump_json(back.to_json()) == dump_json(j));
}

TEST_CASE("params json round trip") {
  DecompParams p = desk_params(20, 5);
  DecompParams q = DecompParams::from_json(p.to_json());
  CHECK(q.k == p.k);
  CHECK(q.gamma == p.gamma);
  CHECK(q.b == p.b);
  CHECK(dump_json(q.to_json()) == dump_json(p.to_json()));
}

TEST_CASE("garbage partition json") {
  GarbagePartition gp;
  gp.garbage = {7};
  gp.clusters = {{0, 1}, {2, 3}};
  GarbagePartition back = GarbagePartition::from_json(gp.to_json());
  CHECK(back.garbage == gp.garbage);
  CHECK(back.clusters == gp.clusters);

  GarbagePartition gp2;
  gp2.clusters = {{4, 5}, {6, 8}};
  Json sets = partitions_to_json({gp, gp2});
  CHECK(sets.contains("sets"));
  auto parts = partitions_from_json(sets);
  REQUIRE(parts.size() == 2);
  CHECK(parts[1].clusters == gp2.clusters);
}
