#pragma once

#include "sparsedecomp/graph.hpp"
#include "sparsedecomp/json_io.hpp"

#include <cstdint>
#include <optional>

namespace sparsedecomp {

// Bipartite witness (U, W; F), unoriented. F is the edge set of the spot;
// spots in a family are edge-disjoint but may share vertices.
struct DenseSpot {
  VertexSet u;
  VertexSet w;
  std::vector<Edge> f;

  VertexSet vertices() const { return set_union(u, w); }
  void normalize(); // sort edges, orient (u, w) canonically
  Json to_json() const;
  static DenseSpot from_json(const Json& j);
};

struct SpotFamily {
  std::vector<DenseSpot> spots;

  // Subgraph of the host consisting of all spot edges and their endpoints.
  Graph captured_graph(int n) const;
  VertexSet vertex_union() const;
  bool edge_disjoint() const;
  Json to_json() const;
  static SpotFamily from_json(const Json& j);
};

enum class FinderMode { Auto, Exact, Heuristic };

struct FinderConfig {
  FinderMode mode = FinderMode::Auto;
  int exact_cap = 14;        // exact search only up to this many non-isolated vertices
  std::uint64_t seed = 1;
  int random_restarts = 3;   // random bipartitions per candidate subset
  int ladder_steps = 16;     // peel-order suffixes probed per component
  long long edge_budget = 40000000; // cut-search work cap per probe
};

// Structural + threshold check: d(D) > gamma and mindeg(D) > m.
bool is_dense_spot(const Graph& g, const DenseSpot& cand, const Rat& m, const Rat& gamma);

// Exact mode decides existence (3-way enumeration over the support, capped);
// heuristic mode peels to dense cores and tries bipartitions, may miss spots
// but never fabricates one.
std::optional<DenseSpot> find_dense_spot(const Graph& g, const Rat& m, const Rat& gamma,
                                         const FinderConfig& cfg = {});

// Greedy maximal family: repeatedly find a spot in the residual graph, take
// all residual edges between its sides, remove them, repeat. Relative to the
// configured finder the residual of the result contains no spot.
SpotFamily extract_spot_family(const Graph& g, const Rat& m, const Rat& gamma,
                               const FinderConfig& cfg = {});

bool is_nowhere_dense(const Graph& g, const Rat& m, const Rat& gamma,
                      const FinderConfig& cfg = {});

// Max-cut bipartition plus trimming turns a (beta k, beta)-thick graph
// (v >= beta k vertices, e >= beta v^2 edges) into a (beta k/4, beta/4)-dense
// spot. `vertices` selects the thick subgraph inside g.
std::optional<DenseSpot> thick_to_spot(const Graph& g, const VertexSet& vertices,
                                       const Rat& beta, long long k);

struct SpotFactsReport {
  bool size_fact = true;   // max side <= (Omega/gamma) k per spot
  bool count_fact = true;  // every vertex lies in < Omega/gamma spots
  long long max_side = 0;
  long long max_spots_per_vertex = 0;
  Json to_json() const;
};

// Requires maxdeg(g) <= omega_star * k and a family of (gamma k, gamma)-spots.
SpotFactsReport check_spot_facts(const Graph& g, const SpotFamily& fam,
                                 const Rat& omega_star, const Rat& gamma, long long k);

} // namespace sparsedecomp
