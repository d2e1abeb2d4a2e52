#pragma once

#include "sparsedecomp/degree_gap.hpp"
#include "sparsedecomp/dense_spots.hpp"
#include "sparsedecomp/graph.hpp"
#include "sparsedecomp/json_io.hpp"
#include "sparsedecomp/lks.hpp"
#include "sparsedecomp/regularity.hpp"

#include <optional>
#include <string>

namespace sparsedecomp {

struct DecompParams {
  long long k = 1;
  Rat gamma, eps, nu, rho;                   // in (0,1)
  Rat lambda, omega_star, omega_star2;       // > 2
  Rat b;                                     // avoiding threshold >= 0
  int prepartition_classes = 2;              // s

  FinderConfig finder;
  RegularityConfig reg;

  void validate() const;
  Json to_json() const;
  static DecompParams from_json(const Json& j);
};

// (V, D, G_reg, G_exp, E) with the prepartition it was built against.
struct BoundedDecomposition {
  std::vector<VertexSet> clusters;
  SpotFamily spots;
  Graph g_reg;
  Graph g_exp;
  VertexSet avoiding;
  Partition prepartition;

  VertexSet cluster_union() const;
  Json to_json() const;
  static BoundedDecomposition from_json(const Json& j);
};

struct SparseDecomposition {
  VertexSet huge;
  BoundedDecomposition bounded;

  Json to_json() const;
  static SparseDecomposition from_json(const Json& j);
};

struct DecomposeReport {
  long long uncaptured = 0;
  bool uncaptured_bound = false; // <= (4 eps/gamma + eps Omega + gamma + rho) k n
  long long spot_loss = 0;       // |E(D) \ (E(G_reg) u E_{G_D}[E, E u UV])|
  bool spot_loss_bound = false;  // <= (4 eps/gamma + eps Omega + gamma) k n
  std::string gexp_certification; // "exact" or "heuristic"
  Json details;

  Json to_json() const;
};

// The bounded-decomposition pipeline: extract edge-disjoint dense spots,
// peel the rest to the expander part, split spot intersections into atoms,
// regularize the large atoms along the spot pattern, collect the small atoms
// into the avoiding set.
BoundedDecomposition decompose_bounded(const Graph& g, const Partition& prepartition,
                                       const DecompParams& params,
                                       DecomposeReport* report = nullptr);

struct SparseOutcome {
  SparseDecomposition decomposition;
  long long star_index = 0;
  Graph cleaned;       // the gap subgraph G' the decomposition refers to
  DecompParams params; // effective parameters: Omega* = Omega_i, Omega** = Omega_{i+1}
  DecomposeReport report;
};

// LKS members: minimize, create the degree gap, split off the huge-degree
// set at Omega_{i+1} k, and decompose the rest with the S/L prepartition.
SparseOutcome decompose_sparse_lks(const Graph& g, const LksParams& p,
                                   const OmegaSequence& omegas, DecompParams params);

// Any graph: the generic gap procedure plus the same split.
SparseOutcome decompose_generic(const Graph& g, const Rat& eta,
                                const OmegaSequence& omegas, DecompParams params);

struct ClauseReport {
  struct Entry {
    std::string name;
    bool pass = false;
    Json details;
  };
  std::vector<Entry> entries;

  bool all_pass() const;
  const Entry* find(const std::string& name) const;
  Json to_json() const;
};

// The eight defining clauses plus the avoiding-threshold dichotomy. Challenge
// sets exercise the avoiding property; each must have size <= Lambda k. When
// Lambda k <= 6 and the ground set is tiny the check is exhaustive over all
// candidate sets as well.
ClauseReport verify_bounded(const Graph& g, const BoundedDecomposition& d,
                            const DecompParams& params,
                            const std::vector<VertexSet>& challenges);

ClauseReport verify_sparse(const Graph& g, const SparseDecomposition& s,
                           const DecompParams& params,
                           const std::vector<VertexSet>& challenges);

// empty set, the whole vertex set (clipped to a random Lambda k subset when
// larger), random Lambda k sets, and a greedy adversary aimed at hitting
// every spot around the avoiding set
std::vector<VertexSet> builtin_challenges(const Graph& g, const BoundedDecomposition& d,
                                          const DecompParams& params, int random_count,
                                          std::uint64_t seed);

Graph captured_edges_bounded(const Graph& g, const BoundedDecomposition& d);
Graph captured_edges(const Graph& g, const SparseDecomposition& s);

struct ClusterGraphResult {
  Graph graph; // one node per cluster
  bool maxdeg_bound = false;     // maxdeg <= Omega*/(gamma^2 nu)
  bool spot_reach_bound = false; // per-vertex spot-reachable clusters < 2 Omega*^2/(gamma^2 nu)
  Json details;
};

ClusterGraphResult cluster_graph(const Graph& g, const BoundedDecomposition& d,
                                 const DecompParams& params);

struct DegenerationReport {
  bool huge_empty = false;
  bool gexp_empty = false;
  bool avoiding_small = false; // |E| <= eps k
  bool applicable = false;     // parameter relations met
  Json details;

  Json to_json() const;
};

// Dense-regime degeneration: with k = c n and conforming parameters the
// sparse decomposition collapses onto the regularized part.
DegenerationReport check_dense_degeneration(const Graph& g, const SparseDecomposition& s,
                                            const DecompParams& params, const Rat& c);

} // namespace sparsedecomp
