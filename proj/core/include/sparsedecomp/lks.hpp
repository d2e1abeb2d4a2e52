#pragma once

#include "sparsedecomp/graph.hpp"
#include "sparsedecomp/json_io.hpp"

namespace sparsedecomp {

struct LksParams {
  long long k = 1;
  Rat eta;

  void validate() const; // k >= 1, 0 < eta < 1
  // degree threshold (1 + eta) k, exact
  Rat large_threshold() const { return (Rat(1) + eta) * Rat(k); }
};

// S/L split at degree (1+eta)k: large holds deg >= (1+eta)k.
struct DegreeSplit {
  VertexSet small;
  VertexSet large;
};

DegreeSplit degree_split(const Graph& g, const LksParams& p);

// |large| >= (1/2 + eta) n
bool is_lks(const Graph& g, const LksParams& p);

// member and edge-minimal for membership
bool is_lks_min(const Graph& g, const LksParams& p);

// Spanning edge-minimal member below g. Deterministic: repeated lexicographic
// sweeps, removing any edge whose removal keeps membership, until a full
// sweep removes nothing.
Graph minimize_to_lks_min(const Graph& g, const LksParams& p);

// Member whose neighbors of high-degree vertices are degree-capped, whose
// S-neighbors have degree exactly ceil((1+eta)k), and with e(G) <= kn.
bool is_lks_small(const Graph& g, const LksParams& p);

struct LksMinFactsReport {
  bool s_independent = false;
  bool high_degree_neighbors_exact = false;
  bool large_count_bounded = false;      // |L| <= ceil((1/2+eta) n) + 1
  bool edge_bound_applicable = false;    // eta < 1/20 and n > k > 20
  bool edge_bound_holds = false;         // e(G) < k n
  long long edges = 0;
  long long large_count = 0;

  bool all_clauses() const {
    return s_independent && high_degree_neighbors_exact && large_count_bounded;
  }
  Json to_json() const;
};

// Structural facts of edge-minimal members; requires is_lks_min(g, p).
LksMinFactsReport check_lksmin_facts(const Graph& g, const LksParams& p);

} // namespace sparsedecomp
