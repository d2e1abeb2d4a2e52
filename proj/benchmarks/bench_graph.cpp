#include "sparsedecomp/generators.hpp"
#include "sparsedecomp/graph.hpp"

#include <benchmark/benchmark.h>

using namespace sparsedecomp;

static void BM_MinDegreeCore(benchmark::State& state) {
  int n = static_cast<int>(state.range(0));
  Graph g = random_graph_gnm(n, 4LL * n, 42);
  for (auto _ : state) {
    auto core = min_degree_core_vertices(g, 5);
    benchmark::DoNotOptimize(core);
  }
}
BENCHMARK(BM_MinDegreeCore)->Arg(1000)->Arg(10000)->Arg(100000);

static void BM_CommonRefinement(benchmark::State& state) {
  int n = static_cast<int>(state.range(0));
  Rng rng(7);
  Partition p, q;
  p.blocks.resize(16);
  q.blocks.resize(16);
  for (int v = 0; v < n; ++v) {
    p.blocks[rng.below(16)].push_back(v);
    q.blocks[rng.below(16)].push_back(v);
  }
  auto strip = [](Partition& part) {
    part.blocks.erase(std::remove_if(part.blocks.begin(), part.blocks.end(),
                                     [](const VertexSet& b) { return b.empty(); }),
                      part.blocks.end());
  };
  strip(p);
  strip(q);
  for (auto _ : state) {
    auto r = common_refinement(p, q);
    benchmark::DoNotOptimize(r);
  }
}
BENCHMARK(BM_CommonRefinement)->Arg(1000)->Arg(20000);

static void BM_Density(benchmark::State& state) {
  int n = static_cast<int>(state.range(0));
  Graph g = random_graph_gnm(n, 8LL * n, 11);
  VertexSet u, w;
  for (int v = 0; v < n; ++v) (v % 2 == 0 ? u : w).push_back(v);
  for (auto _ : state) {
    auto d = density(g, u, w);
    benchmark::DoNotOptimize(d);
  }
}
BENCHMARK(BM_Density)->Arg(1000)->Arg(10000);

BENCHMARK_MAIN();
