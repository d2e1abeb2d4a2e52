#pragma once

#include "sparsedecomp/graph.hpp"
#include "sparsedecomp/rng.hpp"
#include "sparsedecomp/trees.hpp"

#include <cstdint>
#include <vector>

namespace sparsedecomp {

// K_n with all edges deleted inside a fixed set of n/2 + 1 vertices
// (the high-degree side is {0, ..., n/2 - 2}). n even, n >= 4.
Graph lks_extremal(int n);

// A set of s = floor((k-2)/2) vertices joined to everything, including each
// other; no other edges. e = s (n - s) + C(s, 2).
Graph es_extremal(int n, int k);

struct LocallyDenseInstance {
  Graph host;
  Graph pattern;                 // on ell vertices, maxdeg bounded
  std::vector<VertexSet> ensemble;
};

// ell disjoint sets of the given size, a random bounded-degree pattern, and
// an independent random bipartite graph of the given density on each
// pattern edge.
LocallyDenseInstance locally_dense(int ell, int set_size, int pattern_maxdeg,
                                   const Rat& density, std::uint64_t seed);

Graph random_graph_gnp(int n, const Rat& p, std::uint64_t seed);
Graph random_graph_gnm(int n, long long m, std::uint64_t seed);
Graph regular_graph(int n, int d, std::uint64_t seed); // configuration model
// union of d random matchings; degrees may dip slightly below d where
// matchings collide, which keeps it viable at degrees where rejection
// sampling of an exactly regular graph stops converging
Graph near_regular_graph(int n, int d, std::uint64_t seed);
Graph disjoint_union(const std::vector<Graph>& gs);

} // namespace sparsedecomp
