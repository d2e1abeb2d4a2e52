#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "test_util.hpp"

#include "sparsedecomp/degree_gap.hpp"
#include "sparsedecomp/generators.hpp"

using namespace sparsedecomp;
using namespace sdt;

namespace {

OmegaSequence generic_omegas(const Rat& eta, Rat omega1 = Rat(3)) {
  long long count = floor_ll(Rat(4) / eta) + 1;
  return OmegaSequence(omega1, eta / 2, count);
}

OmegaSequence lks_omegas(const Rat& eta) {
  long long count = floor_ll(Rat(100) / (eta * eta)) + 2;
  return OmegaSequence(Rat(5, 2), eta * eta / 100, count);
}

Graph planted_member(int n, long long k, const Rat& eta, std::uint64_t seed, int hub_count,
                     int hub_degree) {
  Rng rng(seed);
  LksParams p{k, eta};
  long long need_large = ceil_ll((Rat(1, 2) + eta) * Rat(n));
  long long degree = ceil_ll(p.large_threshold());
  std::vector<Edge> es;
  std::vector<long long> deg(n, 0);
  auto add_until = [&](int v, long long want) {
    int guard = 0;
    while (deg[v] < want && guard++ < 20 * n) {
      int w = static_cast<int>(rng.below(n));
      if (w == v) continue;
      Edge e = make_edge(v, w);
      if (std::find(es.begin(), es.end(), e) != es.end()) continue;
      es.push_back(e);
      ++deg[v];
      ++deg[w];
    }
  };
  for (int v = 0; v < hub_count; ++v) add_until(v, hub_degree);
  for (int v = 0; v < need_large; ++v) add_until(v, degree);
  return Graph::from_edges(n, std::move(es));
}

} // namespace

TEST_CASE("omega sequence") {
  OmegaSequence s(Rat(3), Rat(1, 4), 10);
  CHECK(s.value(1) == Rat(3));
  CHECK(s.value(2) == Rat(12));
  CHECK(s.value(3) == Rat(48));
  CHECK_THROWS_AS(s.value(11), std::out_of_range);
  CHECK_THROWS_AS(OmegaSequence(Rat(3), Rat(2), 5), std::invalid_argument);

  auto ex = OmegaSequence::from_values({Rat(3), Rat(12), Rat(48)});
  CHECK(ex.value(2) == Rat(12));
  CHECK_THROWS_AS(OmegaSequence::from_values({Rat(3), Rat(2)}), std::invalid_argument);
}

TEST_CASE("generic gap: trivial cases") {
  Rat eta(1, 2);
  auto omegas = generic_omegas(eta);
  // d-regular with d below Omega_1 k: all buckets empty, nothing removed
  Graph reg = regular_graph(12, 4, 5);
  auto res = create_gap_generic(reg, 2, eta, omegas);
  CHECK(res.removed_edges.empty());
  CHECK(res.subgraph == reg);
  CHECK(res.star_index <= floor_ll(Rat(4) / eta));
  CHECK(has_degree_gap(res.subgraph, omegas, 2, res.star_index));

  auto res2 = create_gap_generic(Graph::empty(8), 2, eta, omegas);
  CHECK(res2.subgraph.e() == 0);

  CHECK_THROWS_AS(create_gap_generic(reg, 2, eta, OmegaSequence(Rat(3), Rat(1, 4), 2)),
                  std::invalid_argument);
}

TEST_CASE("generic gap: star whose centre sits in a bucket") {
  // star K(1, m): centre degree m = 30 in [Omega_2 k, Omega_3 k) = [24, 96)
  Rat eta(1, 2);
  auto omegas = generic_omegas(eta); // 3, 12, 48, ... with k = 2: 6, 24, 96
  Graph star = Graph::from_edges(31, [] {
    std::vector<Edge> es;
    for (int leaf = 1; leaf <= 30; ++leaf) es.push_back({0, leaf});
    return es;
  }());
  auto res = create_gap_generic(star, 2, eta, omegas);
  CHECK(has_degree_gap(res.subgraph, omegas, 2, res.star_index));
  CHECK(res.subgraph.e() + static_cast<long long>(res.removed_edges.size()) == star.e());
}

TEST_CASE("generic gap: e-loss bound on random graphs with integer average degree") {
  Rng rng(51);
  for (int t = 0; t < 100; ++t) {
    int n = 20 + 2 * static_cast<int>(rng.below(40));
    long long k = 2 + 2 * static_cast<long long>(rng.below(3));
    Graph g = random_graph_gnm(n, k * n / 2, rng.next_u64()); // average degree k
    Rat eta(1, 4);
    auto omegas = generic_omegas(eta);
    auto res = create_gap_generic(g, k, eta, omegas);
    CHECK(has_degree_gap(res.subgraph, omegas, k, res.star_index));
    CHECK(res.star_index <= floor_ll(Rat(4) / eta));
    CHECK(Rat(g.e() - res.subgraph.e()) <= eta * Rat(k) * Rat(n));
    // only deletions, same vertex set
    for (const auto& e : res.subgraph.edges()) CHECK(g.has_edge(e.first, e.second));
  }
}

TEST_CASE("lks gap: preconditions") {
  LksParams p{3, Rat(1, 4)};
  auto omegas = lks_omegas(p.eta);
  CHECK_THROWS_AS(create_gap_lks(complete_graph(8), p, omegas), std::invalid_argument);
  // ratio too coarse
  CHECK_THROWS_AS(OmegaSequence(Rat(5, 2), Rat(1, 2), 1602).validate_lks(p.eta),
                  std::invalid_argument);
}

TEST_CASE("lks gap: clean members need only the final cleanup") {
  Rng rng(53);
  LksParams p{3, Rat(1, 4)};
  auto omegas = lks_omegas(p.eta);
  int done = 0;
  for (int t = 0; t < 200 && done < 40; ++t) {
    int n = 12 + static_cast<int>(rng.below(12));
    Graph g = planted_member(n, p.k, p.eta, rng.next_u64(), 0, 0);
    if (!is_lks(g, p)) continue;
    Graph m = minimize_to_lks_min(g, p);
    ++done;
    auto res = create_gap_lks(m, p, omegas);
    CHECK(res.star_index <= floor_ll(Rat(100) / (p.eta * p.eta)));
    CHECK(has_degree_gap(res.subgraph, omegas, p.k, res.star_index));
    LksParams half{p.k, p.eta / 2};
    CHECK(is_lks(res.subgraph, half));
    // |L_{eta/2}| >= (1/2 + eta/2) n
    DegreeSplit s = degree_split(res.subgraph, half);
    CHECK(Rat(static_cast<long long>(s.large.size())) >=
          (Rat(1, 2) + p.eta / 2) * Rat(res.subgraph.n()));
  }
  CHECK(done == 40);
}

TEST_CASE("lks gap: members with hubs pass both postconditions") {
  // random LKSmin instances, n <= 60, k <= 8, eta = 1/4 with planted hubs
  Rng rng(59);
  int done = 0;
  for (int t = 0; t < 120 && done < 25; ++t) {
    long long k = 3 + static_cast<long long>(rng.below(6));
    LksParams p{k, Rat(1, 4)};
    auto omegas = lks_omegas(p.eta);
    int n = 30 + static_cast<int>(rng.below(31));
    // a couple of hubs above Omega_1 k = 2.5 k
    Graph g = planted_member(n, k, p.eta, rng.next_u64(), 2,
                             static_cast<int>(3 * k + rng.below(4)));
    if (!is_lks(g, p)) continue;
    Graph m = minimize_to_lks_min(g, p);
    if (!is_lks_min(m, p)) continue;
    ++done;
    auto res = create_gap_lks(m, p, omegas);
    CHECK(has_degree_gap(res.subgraph, omegas, k, res.star_index));
    CHECK(res.star_index <= floor_ll(Rat(100) / (p.eta * p.eta)));
    LksParams half{k, p.eta / 2};
    CHECK(is_lks(res.subgraph, half));
  }
  CHECK(done == 25);
}
