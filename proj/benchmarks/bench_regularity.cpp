#include "sparsedecomp/generators.hpp"
#include "sparsedecomp/regularity.hpp"

#include <benchmark/benchmark.h>

#include <memory>

using namespace sparsedecomp;

static void BM_ExactRegularity(benchmark::State& state) {
  int side = static_cast<int>(state.range(0));
  Graph g = random_graph_gnp(2 * side, Rat(1, 2), 9);
  VertexSet u, w;
  for (int v = 0; v < side; ++v) u.push_back(v);
  for (int v = side; v < 2 * side; ++v) w.push_back(v);
  RegularityConfig cfg;
  for (auto _ : state) {
    auto verdict = is_regular_pair(g, u, w, Rat(1, 4), cfg);
    benchmark::DoNotOptimize(verdict);
  }
}
BENCHMARK(BM_ExactRegularity)->Arg(8)->Arg(12)->Arg(16);

static void BM_PartitionIndex(benchmark::State& state) {
  int side = static_cast<int>(state.range(0));
  Graph g = random_graph_gnp(2 * side, Rat(1, 2), 13);
  PairPartitionState st;
  st.host = std::make_shared<Graph>(g);
  for (int v = 0; v < side; v += 4)
    st.a_side.clusters.push_back({v, v + 1, v + 2, v + 3});
  for (int v = side; v < 2 * side; v += 4)
    st.b_side.clusters.push_back({v, v + 1, v + 2, v + 3});
  for (auto _ : state) {
    auto idx = partition_index(st);
    benchmark::DoNotOptimize(idx);
  }
}
BENCHMARK(BM_PartitionIndex)->Arg(16)->Arg(64)->Arg(256);

static void BM_VizingMatchings(benchmark::State& state) {
  Graph g = random_graph_gnm(static_cast<int>(state.range(0)), 3 * state.range(0), 21);
  for (auto _ : state) {
    auto classes = vizing_matchings(g);
    benchmark::DoNotOptimize(classes);
  }
}
BENCHMARK(BM_VizingMatchings)->Arg(100)->Arg(1000);

BENCHMARK_MAIN();
