#include "sparsedecomp/dense_spots.hpp"
#include "sparsedecomp/generators.hpp"

#include <benchmark/benchmark.h>

using namespace sparsedecomp;

namespace {

Graph blob_host(int blobs, int bg_n, std::uint64_t seed) {
  std::vector<Graph> parts;
  for (int t = 0; t < blobs; ++t) {
    std::vector<Edge> es;
    for (int u = 0; u < 15; ++u)
      for (int w = 15; w < 31; ++w) es.push_back({u, w});
    parts.push_back(Graph::from_edges(31, std::move(es)));
  }
  parts.push_back(random_graph_gnm(bg_n, 5 * bg_n / 4, seed));
  return disjoint_union(parts);
}

} // namespace

static void BM_FindDenseSpotHeuristic(benchmark::State& state) {
  Graph g = blob_host(static_cast<int>(state.range(0)), 500, 3);
  FinderConfig cfg;
  cfg.mode = FinderMode::Heuristic;
  for (auto _ : state) {
    auto spot = find_dense_spot(g, Rat(5), Rat(1, 4), cfg);
    benchmark::DoNotOptimize(spot);
  }
}
BENCHMARK(BM_FindDenseSpotHeuristic)->Arg(2)->Arg(8)->Arg(24);

static void BM_ExtractSpotFamily(benchmark::State& state) {
  Graph g = blob_host(static_cast<int>(state.range(0)), 500, 3);
  FinderConfig cfg;
  cfg.mode = FinderMode::Heuristic;
  for (auto _ : state) {
    auto fam = extract_spot_family(g, Rat(5), Rat(1, 4), cfg);
    benchmark::DoNotOptimize(fam);
  }
}
BENCHMARK(BM_ExtractSpotFamily)->Arg(2)->Arg(8);

static void BM_FindDenseSpotExact(benchmark::State& state) {
  Graph g = random_graph_gnp(static_cast<int>(state.range(0)), Rat(1, 3), 5);
  FinderConfig cfg;
  cfg.mode = FinderMode::Exact;
  for (auto _ : state) {
    auto spot = find_dense_spot(g, Rat(2), Rat(1, 2), cfg);
    benchmark::DoNotOptimize(spot);
  }
}
BENCHMARK(BM_FindDenseSpotExact)->Arg(10)->Arg(12)->Arg(14);

BENCHMARK_MAIN();
