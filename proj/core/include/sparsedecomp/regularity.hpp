#pragma once

#include "sparsedecomp/graph.hpp"
#include "sparsedecomp/json_io.hpp"

#include <memory>
#include <optional>

namespace sparsedecomp {

// Partition with a distinguished garbage cluster. Non-garbage clusters all
// have the same size; the garbage cluster is broken into singletons wherever
// the index is computed.
struct GarbagePartition {
  VertexSet garbage;
  std::vector<VertexSet> clusters;

  VertexSet ground() const;
  long long cluster_size() const { return clusters.empty() ? 0 : static_cast<long long>(clusters[0].size()); }
  void validate() const;
  Json to_json() const;
  static GarbagePartition from_json(const Json& j);
};

// Bipartite side pair (A, B) with partitions, over a shared host graph.
struct PairPartitionState {
  std::shared_ptr<const Graph> host;
  GarbagePartition a_side;
  GarbagePartition b_side;

  void validate() const;
};

struct RegularityWitness {
  VertexSet u_sub;
  VertexSet w_sub;
  Rat pair_density;
  Rat sub_density;
};

struct RegularityVerdict {
  bool regular = false;
  bool exact = false; // true when decided by full enumeration
  std::optional<RegularityWitness> witness;
};

struct RegularityConfig {
  int exact_cap = 16;     // exact enumeration up to this side size
  bool force_exact = false;
  bool force_heuristic = false;
};

// eps-regularity of the pair (u, w). Exact mode enumerates all qualifying
// subpairs (cap per side); the heuristic searches degree- and
// neighbourhood-deviation witnesses and its "regular" verdicts are advisory.
RegularityVerdict is_regular_pair(const Graph& g, const VertexSet& u, const VertexSet& w,
                                  const Rat& eps, const RegularityConfig& cfg = {});

// Mean square density, garbage broken into singletons, normalized by
// (|A|+|B|)^2. Always in [0, 1]; never decreases under refinement.
Rat partition_index(const PairPartitionState& state);

struct PumpResult {
  PairPartitionState state;
  Rat index_before;
  Rat index_after;
  long long irregular_pairs = 0;
};

// Index pumping: given an eps-irregular pair of partitions (more than
// eps*s*t irregular cluster pairs), refine by witness sets and re-equalize.
// Index gain at least eps^5/3691; cluster counts land in [p+1, 2q*16^q];
// per-side garbage grows by at most |side|/2^p.
PumpResult pump(const PairPartitionState& state, const Rat& eps, long long p, long long q,
                const RegularityConfig& cfg = {});

struct SimultaneousPumpResult {
  std::vector<PairPartitionState> pairs;
  std::vector<GarbagePartition> spectators;
  std::vector<Rat> gains;
};

// Same, applied to several vertex-disjoint bipartite pairs at once while
// carrying spectator partitions along; all refined partitions end with one
// common non-garbage cluster size.
SimultaneousPumpResult pump_simultaneous(const std::vector<PairPartitionState>& pairs,
                                         const std::vector<GarbagePartition>& spectators,
                                         const Rat& eps, long long p, long long q,
                                         const RegularityConfig& cfg = {});

// Edge set partitioned into at most maxdeg(f)+1 nonempty matchings.
std::vector<std::vector<Edge>> vizing_matchings(const Graph& f);

struct RegularizeConfig {
  Rat eps_tilde;               // defaults to eps/8 when zero
  long long round_cap = -1;    // defaults to the index-budget bound
  RegularityConfig reg;
};

struct RegularizeResult {
  std::vector<GarbagePartition> parts; // one per ensemble set
  long long rounds = 0;
  long long cluster_size = 0;
  long long pair_total = 0;      // |Y|: cluster pairs over pattern edges
  long long pair_irregular = 0;  // among Y, at the full eps, by the configured oracle
  Json report;
};

// Regularity lemma for locally dense graphs: one synchronized system of
// partitions regularizing every bipartite graph h[W_i, W_j] along pattern
// edges. Conclusions: cluster-count window, one common cluster size,
// prepartition respected, total garbage < eps * sum |W_i|, and at most
// eps |Y| irregular pairs among Y.
RegularizeResult regularize_locally_dense(const Graph& h, const Graph& pattern,
                                          const std::vector<VertexSet>& ensemble,
                                          const Partition& prepartition, const Rat& eps,
                                          const RegularizeConfig& cfg = {});

// Smallest ensemble-set size regularize_locally_dense accepts at this eps
// (driven by the cluster-count floor of the pumping schedule).
long long regularize_min_set_size(const Rat& eps, const Rat& eps_tilde);

// {"sets": [{"garbage": [...], "clusters": [[...], ...]}, ...]}
Json partitions_to_json(const std::vector<GarbagePartition>& parts);
std::vector<GarbagePartition> partitions_from_json(const Json& j);

struct UncapturedReport {
  long long irregular_edges = 0;
  long long garbage_edges = 0;
  long long sparse_edges = 0;
  long long good_edges = 0;
  bool irregular_bound = false; // <= 4 eps n k / gamma
  bool garbage_bound = false;   // <= eps Omega n k
  bool sparse_bound = false;    // <= gamma k n
  bool total_bound = false;     // <= (4 eps / gamma + eps Omega + gamma) n k
  Json to_json() const;
};

// Edge accounting after regularization: every edge of h must be captured by
// a pattern edge, pattern pairs have density >= gamma, maxdeg(h) <= Omega k,
// e(h) <= k n.
UncapturedReport account_uncaptured(const Graph& h, const Graph& pattern,
                                    const std::vector<VertexSet>& ensemble,
                                    const std::vector<GarbagePartition>& parts,
                                    const Rat& gamma, const Rat& eps, const Rat& omega,
                                    long long k, const RegularityConfig& cfg = {});

} // namespace sparsedecomp
