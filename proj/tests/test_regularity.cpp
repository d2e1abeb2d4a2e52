#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "test_util.hpp"

#include "sparsedecomp/generators.hpp"
#include "sparsedecomp/regularity.hpp"

#include <memory>

using namespace sparsedecomp;
using namespace sdt;

namespace {

// half-graph on a+b vertices: edge (i, a+j) iff i <= j (0-based shifted)
Graph half_graph(int a, int b) {
  std::vector<Edge> es;
  for (int i = 0; i < a; ++i)
    for (int j = 0; j < b; ++j)
      if (i <= j) es.emplace_back(i, a + j);
  return Graph::from_edges(a + b, std::move(es));
}

GarbagePartition trivial_partition(const VertexSet& ground) {
  GarbagePartition p;
  p.clusters.push_back(ground);
  return p;
}

PairPartitionState make_state(const Graph& g, GarbagePartition a, GarbagePartition b) {
  PairPartitionState st;
  st.host = std::make_shared<Graph>(g);
  st.a_side = std::move(a);
  st.b_side = std::move(b);
  return st;
}

// split `ground` into clusters of size c, remainder to garbage
GarbagePartition equal_partition(const VertexSet& ground, size_t c) {
  GarbagePartition p;
  size_t full = ground.size() / c;
  for (size_t i = 0; i < full; ++i)
    p.clusters.push_back(VertexSet(ground.begin() + i * c, ground.begin() + (i + 1) * c));
  for (size_t i = full * c; i < ground.size(); ++i) p.garbage.push_back(ground[i]);
  return p;
}

} // namespace

TEST_CASE("exact regularity oracle") {
  RegularityConfig cfg;
  Graph kb = complete_bipartite(6, 6);
  CHECK(is_regular_pair(kb, range_set(0, 6), range_set(6, 12), Rat(1, 100), cfg).regular);
  Graph none = Graph::empty(12);
  CHECK(is_regular_pair(none, range_set(0, 6), range_set(6, 12), Rat(1, 100), cfg).regular);

  Graph hg = half_graph(8, 8);
  auto verdict = is_regular_pair(hg, range_set(0, 8), range_set(8, 16), Rat(1, 4), cfg);
  CHECK_FALSE(verdict.regular);
  CHECK(verdict.exact);
  REQUIRE(verdict.witness.has_value());
  // the witness is a genuine deviation
  const auto& w = *verdict.witness;
  Rat d = density(hg, range_set(0, 8), range_set(8, 16));
  Rat ds = density(hg, w.u_sub, w.w_sub);
  Rat dev = ds > d ? ds - d : d - ds;
  CHECK(dev >= Rat(1, 4));
  CHECK(Rat(static_cast<long long>(w.u_sub.size())) >= Rat(1, 4) * 8);
  CHECK(Rat(static_cast<long long>(w.w_sub.size())) >= Rat(1, 4) * 8);

  Graph big = complete_bipartite(17, 17);
  RegularityConfig strict;
  strict.force_exact = true;
  CHECK_THROWS_AS(
      is_regular_pair(big, range_set(0, 17), range_set(17, 34), Rat(1, 4), strict),
      std::invalid_argument);
}

TEST_CASE("heuristic witnesses are always valid deviations") {
  Rng rng(79);
  RegularityConfig heur;
  heur.force_heuristic = true;
  int found = 0;
  for (int t = 0; t < 60; ++t) {
    int a = 6 + static_cast<int>(rng.below(6));
    Graph g = half_graph(a, a); // strongly irregular
    auto v = is_regular_pair(g, range_set(0, a), range_set(a, 2 * a), Rat(1, 5), heur);
    if (!v.regular) {
      REQUIRE(v.witness.has_value());
      Rat d = density(g, range_set(0, a), range_set(a, 2 * a));
      Rat ds = density(g, v.witness->u_sub, v.witness->w_sub);
      Rat dev = ds > d ? ds - d : d - ds;
      CHECK(dev >= Rat(1, 5));
      ++found;
    }
  }
  CHECK(found >= 30);
}

TEST_CASE("subpairs of regular pairs stay regular (small exhaustive)") {
  // every exact eps-regular pair (U, W) and alpha > eps: subpairs of size
  // >= alpha|U|, alpha|W| are 2eps/alpha-regular with density >= d - eps
  RegularityConfig cfg;
  Rng rng(83);
  int tested = 0;
  for (int t = 0; t < 400 && tested < 5; ++t) {
    Graph g = random_graph_gnp(8, Rat(1, 2), rng.next_u64());
    VertexSet u = range_set(0, 4), w = range_set(4, 8);
    Rat eps(1, 3);
    auto base = is_regular_pair(g, u, w, eps, cfg);
    if (!base.regular) continue;
    ++tested;
    Rat d = density(g, u, w);
    Rat alpha(1, 2);
    for (std::uint32_t mu = 1; mu < 16; ++mu) {
      if (__builtin_popcount(mu) < 2) continue; // alpha |U| = 2
      for (std::uint32_t mw = 1; mw < 16; ++mw) {
        if (__builtin_popcount(mw) < 2) continue;
        VertexSet us, ws;
        for (int i = 0; i < 4; ++i) {
          if (mu & (1u << i)) us.push_back(u[i]);
          if (mw & (1u << i)) ws.push_back(w[i]);
        }
        auto sub = is_regular_pair(g, us, ws, 2 * eps / alpha, cfg);
        CHECK(sub.regular);
        CHECK(density(g, us, ws) >= d - eps);
      }
    }
  }
  CHECK(tested >= 3);
}

TEST_CASE("edges in sparse subpairs of a dense pair are few") {
  // at most beta e(H) / alpha edges lie in subpairs of density <= beta
  Rng rng(89);
  for (int t = 0; t < 50; ++t) {
    int a = 6 + static_cast<int>(rng.below(8));
    int b = 6 + static_cast<int>(rng.below(8));
    Graph g = random_graph_gnp(a + b, Rat(1, 2), rng.next_u64());
    VertexSet u = range_set(0, a), w = range_set(a, a + b);
    Graph h = Graph::from_edges(a + b, [&] {
      std::vector<Edge> es;
      for (const auto& [x, y] : g.edges())
        if ((x < a) != (y < a)) es.push_back({x, y});
      return es;
    }());
    if (h.e() == 0) continue;
    Rat alpha = density(h, u, w);
    if (alpha == 0) continue;
    Rat beta = alpha / 3;
    auto pu = equal_partition(u, 2);
    auto pw = equal_partition(w, 2);
    long long sparse_edges = 0;
    for (const auto& cu : pu.clusters)
      for (const auto& cw : pw.clusters)
        if (density(h, cu, cw) <= beta) sparse_edges += cross_edges(h, cu, cw);
    CHECK(Rat(sparse_edges) <= beta * Rat(h.e()) / alpha);
  }
}

TEST_CASE("index basics") {
  Graph none = Graph::empty(12);
  auto st = make_state(none, trivial_partition(range_set(0, 6)),
                       trivial_partition(range_set(6, 12)));
  CHECK(partition_index(st) == Rat(0));

  for (int m : {3, 5, 8}) {
    Graph kb = complete_bipartite(m, m);
    auto st2 = make_state(kb, trivial_partition(range_set(0, m)),
                          trivial_partition(range_set(m, 2 * m)));
    CHECK(partition_index(st2) == Rat(1, 4));
  }
}

TEST_CASE("index monotone under refinement") {
  Rng rng(97);
  for (int t = 0; t < 120; ++t) {
    int a = 6 + static_cast<int>(rng.below(8));
    int b = 6 + static_cast<int>(rng.below(8));
    Graph g = random_graph_gnp(a + b, Rat(1, 2), rng.next_u64());
    VertexSet u = range_set(0, a), w = range_set(a, a + b);
    size_t c1 = 2 + rng.below(2);
    auto pa = equal_partition(u, c1 * 2);
    auto pb = equal_partition(w, c1 * 2);
    auto st = make_state(g, pa, pb);
    Rat before = partition_index(st);
    CHECK(before >= 0);
    CHECK(before <= 1);
    // refine up to garbage: halve every cluster
    GarbagePartition ra, rb;
    ra.garbage = pa.garbage;
    rb.garbage = pb.garbage;
    for (const auto& c : pa.clusters) {
      ra.clusters.push_back(VertexSet(c.begin(), c.begin() + c1));
      ra.clusters.push_back(VertexSet(c.begin() + c1, c.end()));
    }
    for (const auto& c : pb.clusters) {
      rb.clusters.push_back(VertexSet(c.begin(), c.begin() + c1));
      rb.clusters.push_back(VertexSet(c.begin() + c1, c.end()));
    }
    auto st2 = make_state(g, ra, rb);
    Rat after = partition_index(st2);
    CHECK(after >= before);
    CHECK(after <= 1);
  }
}

TEST_CASE("pump on the half graph gains at least eps^5/3691") {
  Graph hg = half_graph(16, 16);
  auto st = make_state(hg, trivial_partition(range_set(0, 16)),
                       trivial_partition(range_set(16, 32)));
  Rat eps(1, 4);
  auto res = pump(st, eps, 1, 1);
  Rat gain = res.index_after - res.index_before;
  Rat bound = eps * eps * eps * eps * eps / 3691;
  CHECK(gain >= bound);
  // postconditions
  res.state.validate();
  CHECK(res.state.a_side.clusters.size() >= 2);
  CHECK(res.state.a_side.clusters.size() <= 32); // 2 q 16^q with q = 1
}

TEST_CASE("pump rejects regular input") {
  Graph kb = complete_bipartite(8, 8);
  auto st = make_state(kb, trivial_partition(range_set(0, 8)),
                       trivial_partition(range_set(8, 16)));
  CHECK_THROWS_AS(pump(st, Rat(1, 4), 1, 1), std::invalid_argument);
}

TEST_CASE("pump postconditions on 50 random irregular instances") {
  Rng rng(101);
  Rat eps(1, 4);
  Rat bound = eps * eps * eps * eps * eps / 3691;
  int pumped = 0;
  for (int t = 0; t < 400 && pumped < 50; ++t) {
    int a = 12 + static_cast<int>(rng.below(5));
    int b = 12 + static_cast<int>(rng.below(5));
    Graph g = half_graph(a, b); // irregular-rich family
    // sprinkle noise for variety
    {
      std::vector<Edge> es = g.edges();
      for (int r = 0; r < 6; ++r) {
        int x = static_cast<int>(rng.below(a));
        int y = a + static_cast<int>(rng.below(b));
        es.push_back(make_edge(x, y));
      }
      g = Graph::from_edges(a + b, std::move(es));
    }
    size_t c = 3;
    auto pa = equal_partition(range_set(0, a), c);
    auto pb = equal_partition(range_set(a, a + b), c);
    auto st = make_state(g, pa, pb);
    long long p = 1 + static_cast<long long>(rng.below(2));
    long long q = std::max(pa.clusters.size(), pb.clusters.size());
    PumpResult res;
    try {
      res = pump(st, eps, p, q);
    } catch (const std::invalid_argument&) {
      continue; // regular input
    }
    ++pumped;
    Rat gain = res.index_after - res.index_before;
    CHECK(gain >= bound);
    // garbage growth <= |side| / 2^p
    CHECK(Rat(static_cast<long long>(res.state.a_side.garbage.size())) <=
          Rat(static_cast<long long>(pa.garbage.size())) + Rat(a) / Rat(1LL << p));
    CHECK(Rat(static_cast<long long>(res.state.b_side.garbage.size())) <=
          Rat(static_cast<long long>(pb.garbage.size())) + Rat(b) / Rat(1LL << p));
    // counts within [p+1, 2 q 16^q]
    long long cap = 2 * q;
    for (long long i = 0; i < q; ++i) cap *= 16;
    CHECK(static_cast<long long>(res.state.a_side.clusters.size()) >= p + 1);
    CHECK(static_cast<long long>(res.state.a_side.clusters.size()) <= cap);
    // refinement up to garbage: new clusters live inside old circ-blocks
    for (const auto& nc : res.state.a_side.clusters) {
      bool inside = false;
      for (const auto& oc : pa.clusters)
        if (set_intersection(nc, oc).size() == nc.size()) inside = true;
      if (!inside && nc.size() == 1 && set_contains(pa.garbage, nc[0])) inside = true;
      CHECK(inside);
    }
    // old garbage stays garbage
    for (Vertex v : pa.garbage) CHECK(set_contains(res.state.a_side.garbage, v));
    // equal sizes across both sides
    if (!res.state.a_side.clusters.empty() && !res.state.b_side.clusters.empty())
      CHECK(res.state.a_side.cluster_size() == res.state.b_side.cluster_size());
  }
  CHECK(pumped == 50);
}

TEST_CASE("simultaneous pump carries spectators to the common size") {
  Graph g1 = half_graph(12, 12);
  Graph g2 = half_graph(12, 12);
  // disjoint copies inside one host, plus a spectator ground set
  std::vector<Edge> es = g1.edges();
  for (const auto& [x, y] : g2.edges()) es.push_back({x + 24, y + 24});
  Graph host = Graph::from_edges(56, std::move(es));
  auto pa1 = equal_partition(range_set(0, 12), 4);
  auto pb1 = equal_partition(range_set(12, 24), 4);
  auto pa2 = equal_partition(range_set(24, 36), 4);
  auto pb2 = equal_partition(range_set(36, 48), 4);
  GarbagePartition spect = equal_partition(range_set(48, 56), 4);
  auto st1 = make_state(host, pa1, pb1);
  auto st2 = make_state(host, pa2, pb2);
  auto out = pump_simultaneous({st1, st2}, {spect}, Rat(1, 4), 1, 4);
  REQUIRE(out.pairs.size() == 2);
  REQUIRE(out.spectators.size() == 1);
  long long size = out.pairs[0].a_side.cluster_size();
  CHECK(out.pairs[0].b_side.cluster_size() == size);
  CHECK(out.pairs[1].a_side.cluster_size() == size);
  CHECK(out.pairs[1].b_side.cluster_size() == size);
  CHECK(out.spectators[0].cluster_size() == size);
  // spectator garbage growth bound |C| / 2^p
  CHECK(Rat(static_cast<long long>(out.spectators[0].garbage.size())) <= Rat(8) / 2);
  Rat eps(1, 4);
  for (const Rat& gain : out.gains)
    CHECK(gain >= eps * eps * eps * eps * eps / 3691);
}

TEST_CASE("vizing matchings") {
  // a matching needs one class
  Graph m = Graph::from_edges(6, {{0, 1}, {2, 3}, {4, 5}});
  CHECK(vizing_matchings(m).size() == 1);
  // chi'(K3) = 3
  CHECK(vizing_matchings(complete_graph(3)).size() == 3);
  // stars need exactly maxdeg classes
  for (int leaves : {3, 5, 8}) {
    Graph star = Graph::from_edges(leaves + 1, [&] {
      std::vector<Edge> es;
      for (int i = 1; i <= leaves; ++i) es.push_back({0, i});
      return es;
    }());
    CHECK(static_cast<int>(vizing_matchings(star).size()) == leaves);
  }
  CHECK(vizing_matchings(Graph::empty(4)).empty());
}

TEST_CASE("vizing on random graphs: proper partition into <= maxdeg+1 matchings") {
  Rng rng(107);
  for (int t = 0; t < 300; ++t) {
    int n = 4 + static_cast<int>(rng.below(24));
    Graph g = random_graph_gnp(n, Rat(1 + static_cast<long long>(rng.below(4)), 5),
                               rng.next_u64());
    auto classes = vizing_matchings(g);
    CHECK(static_cast<int>(classes.size()) <= g.max_degree() + 1);
    long long total = 0;
    for (const auto& cls : classes) {
      CHECK(!cls.empty());
      total += static_cast<long long>(cls.size());
      std::vector<char> touched(n, 0);
      for (const auto& [u, v] : cls) {
        CHECK(g.has_edge(u, v));
        CHECK(!touched[u]);
        CHECK(!touched[v]);
        touched[u] = touched[v] = 1;
      }
    }
    CHECK(total == g.e());
  }
}

namespace {

// conclusions (a)-(e) of the locally dense regularity lemma
void check_regularize_conclusions(const Graph& h, const Graph& pattern,
                                  const std::vector<VertexSet>& ensemble,
                                  const Partition& zeta, const Rat& eps,
                                  const RegularizeResult& res) {
  REQUIRE(res.parts.size() == ensemble.size());
  long long common = -1;
  long long garbage_total = 0, ground_total = 0;
  for (size_t i = 0; i < ensemble.size(); ++i) {
    const auto& part = res.parts[i];
    part.validate();
    CHECK(part.ground() == ensemble[i]);
    // (a) cluster-count window
    CHECK(Rat(static_cast<long long>(part.clusters.size())) >= Rat(1) / eps);
    // (b) one common size
    if (!part.clusters.empty()) {
      if (common < 0) common = part.cluster_size();
      CHECK(part.cluster_size() == common);
    }
    // (c) prepartition respected
    for (const auto& c : part.clusters) {
      bool inside = false;
      for (const auto& z : zeta.blocks)
        if (set_intersection(c, z).size() == c.size()) inside = true;
      CHECK(inside);
    }
    garbage_total += static_cast<long long>(part.garbage.size());
    ground_total += static_cast<long long>(ensemble[i].size());
  }
  // (d) total garbage below eps of the ground
  CHECK(Rat(garbage_total) < eps * Rat(ground_total));
  // (e) at most eps |Y| irregular pairs, exact oracle
  RegularityConfig cfg;
  long long total = 0, irregular = 0;
  for (const auto& [x, y] : pattern.edges())
    for (const auto& cu : res.parts[x].clusters)
      for (const auto& cw : res.parts[y].clusters) {
        ++total;
        if (!is_regular_pair(h, cu, cw, eps, cfg).regular) ++irregular;
      }
  CHECK(Rat(irregular) <= eps * Rat(total));
}

} // namespace

TEST_CASE("regularize: edgeless pattern returns the initial partition") {
  auto inst = locally_dense(3, 12, 0, Rat(1, 2), 5);
  Partition zeta{{range_set(0, 36)}};
  auto res = regularize_locally_dense(inst.host, inst.pattern, inst.ensemble, zeta, Rat(1, 4));
  CHECK(res.rounds == 0);
  CHECK(res.pair_total == 0);
  for (size_t i = 0; i < inst.ensemble.size(); ++i)
    CHECK(res.parts[i].ground() == inst.ensemble[i]);
}

TEST_CASE("regularize: complete pair is settled in round zero") {
  auto inst = locally_dense(2, 14, 1, Rat(1), 5); // one pattern edge, density 1
  REQUIRE(inst.pattern.e() == 1);
  Partition zeta{{range_set(0, 28)}};
  Rat eps(1, 4);
  auto res = regularize_locally_dense(inst.host, inst.pattern, inst.ensemble, zeta, eps);
  CHECK(res.rounds == 0);
  CHECK(res.pair_irregular == 0);
  check_regularize_conclusions(inst.host, inst.pattern, inst.ensemble, zeta, eps, res);
}

TEST_CASE("regularize: locally dense instances meet all five conclusions") {
  Rng rng(109);
  for (int t = 0; t < 6; ++t) {
    auto inst = locally_dense(4 + static_cast<int>(rng.below(3)), 24, 2, Rat(1, 2),
                              rng.next_u64());
    Partition zeta{{range_set(0, inst.host.n())}};
    Rat eps(1, 4);
    auto res =
        regularize_locally_dense(inst.host, inst.pattern, inst.ensemble, zeta, eps);
    check_regularize_conclusions(inst.host, inst.pattern, inst.ensemble, zeta, eps, res);
  }
}

TEST_CASE("regularize respects a nontrivial prepartition") {
  auto inst = locally_dense(4, 24, 2, Rat(1, 2), 11);
  // split the ground set into two halves by parity
  VertexSet even, odd;
  for (int v = 0; v < inst.host.n(); ++v) (v % 2 == 0 ? even : odd).push_back(v);
  Partition zeta{{even, odd}};
  Rat eps(1, 4);
  auto res = regularize_locally_dense(inst.host, inst.pattern, inst.ensemble, zeta, eps);
  check_regularize_conclusions(inst.host, inst.pattern, inst.ensemble, zeta, eps, res);
}

TEST_CASE("account_uncaptured") {
  // complete bipartite pair: everything regular and dense, nothing lost
  auto inst = locally_dense(2, 12, 1, Rat(1), 7);
  REQUIRE(inst.pattern.e() == 1);
  Partition zeta{{range_set(0, 24)}};
  Rat eps(1, 4), gamma(1, 4);
  auto res = regularize_locally_dense(inst.host, inst.pattern, inst.ensemble, zeta, eps);
  long long k = 12;
  Rat omega = Rat(inst.host.max_degree() + 1) / Rat(k);
  auto rep = account_uncaptured(inst.host, inst.pattern, inst.ensemble, res.parts, gamma,
                                eps, omega, k);
  CHECK(rep.irregular_edges == 0);
  CHECK(rep.garbage_edges == 0);
  CHECK(rep.sparse_edges == 0);
  CHECK(rep.good_edges == inst.host.e());
  CHECK(rep.irregular_bound);
  CHECK(rep.garbage_bound);
  CHECK(rep.sparse_bound);
  CHECK(rep.total_bound);

  // random locally dense instance: categories partition E(H), bounds hold
  auto inst2 = locally_dense(5, 24, 2, Rat(1, 2), 13);
  Partition zeta2{{range_set(0, inst2.host.n())}};
  bool dense_enough = true;
  for (const auto& [i, j] : inst2.pattern.edges())
    if (density(inst2.host, inst2.ensemble[i], inst2.ensemble[j]) < gamma)
      dense_enough = false;
  REQUIRE(dense_enough);
  auto res2 =
      regularize_locally_dense(inst2.host, inst2.pattern, inst2.ensemble, zeta2, eps);
  long long k2 = (inst2.host.e() + inst2.host.n() - 1) / inst2.host.n() + 1;
  Rat omega2 = Rat(inst2.host.max_degree() + 1) / Rat(k2);
  auto rep2 = account_uncaptured(inst2.host, inst2.pattern, inst2.ensemble, res2.parts,
                                 gamma, eps, omega2, k2);
  CHECK(rep2.irregular_edges + rep2.garbage_edges + rep2.sparse_edges + rep2.good_edges ==
        inst2.host.e());
  CHECK(rep2.irregular_bound);
  CHECK(rep2.garbage_bound);
  CHECK(rep2.sparse_bound);
  CHECK(rep2.total_bound);
}
