#pragma once

#include "sparsedecomp/dense_spots.hpp"
#include "sparsedecomp/graph.hpp"
#include "sparsedecomp/json_io.hpp"
#include "sparsedecomp/trees.hpp"

#include <cstdint>
#include <optional>

namespace sparsedecomp {

struct ShrubDecomposition {
  std::vector<int> cut_vertices;          // W, tree-vertex ids
  std::vector<std::vector<int>> shrubs;   // components of t - W, each of order <= tau k
};

// Greedy deepest-heavy-subtree cutting until every component has order at
// most tau k.
ShrubDecomposition shrub_decompose(const RootedTree& t, const Rat& tau, long long k);

// Partial injective, edge-preserving map tree-vertex -> host-vertex.
struct Embedding {
  std::vector<int> phi; // indexed by tree vertex, -1 if unembedded
  VertexSet reserve;

  bool total() const;
  Json to_json() const;
};

bool embedding_valid(const RootedTree& t, const Graph& g, const Embedding& e);

// BFS-order greedy embedding, trying every host start vertex in id order.
// Succeeds whenever mindeg(g) > v(t) - 2.
std::optional<Embedding> greedy_embed(const RootedTree& t, const Graph& g);

struct PathEmbedStats {
  long long max_disqualified = 0; // unused neighbours failing the look-ahead
  bool lookahead_ok = true;       // every step satisfied the inequality
  bool disqualified_bound = true; // max_disqualified <= 16 sqrt(gamma) k
};

// One-step look-ahead path embedding into a nowhere-dense host: each next
// image keeps degree into the current image below sqrt(gamma) k. The success
// guarantee needs rho > 17 sqrt(gamma), mindeg > rho k and certified
// (gamma k, gamma)-nowhere-density; violations raise.
std::optional<Embedding> embed_path_expander(long long path_len, const Graph& gexp,
                                             const Rat& gamma, const Rat& rho,
                                             std::uint64_t seed,
                                             const FinderConfig& finder = {},
                                             PathEmbedStats* stats = nullptr);

struct AvoidingEmbedParams {
  Rat tau;
  Rat gamma;
  Rat eps;
  long long k = 1;
};

// Extend a partial embedding by one end shrub through the avoiding set: the
// shrub root lands on a non-exceptional avoiding neighbour of the anchor and
// the rest fills the witnessing dense spot greedily.
std::optional<Embedding> embed_shrub_avoiding(const RootedTree& shrub, const Graph& g,
                                              const SpotFamily& fam, const VertexSet& avoiding,
                                              Vertex anchor, const VertexSet& used,
                                              const AvoidingEmbedParams& params);

struct ReserveEmbedParams {
  int q_levels = 2;   // cut vertices = the first q levels, |W| = 2^q - 1 on binary trees
  Rat rho;
  Rat delta;
  long long retries = 20;
  std::uint64_t seed = 1;
};

struct ReserveEmbedTrace {
  long long attempts = 0;
  std::vector<Rat> root_margins; // deg(phi(r_i), V \ im) - (delta k / 2 - 2h)
  bool margins_ok = true;
  long long reserve_size = 0;
};

// Look-ahead embedding of a bounded-degree tree with a randomly grown
// reserve set: children candidates are drawn in pairs, half host the tree,
// half feed the reserve, and the reserve is touched only at shrub roots.
std::optional<Embedding> embed_tree_reserve(const RootedTree& t, const Graph& gexp,
                                            const VertexSet& seeds,
                                            const ReserveEmbedParams& params,
                                            ReserveEmbedTrace* trace = nullptr);

} // namespace sparsedecomp
