#pragma once

#include "sparsedecomp/rational.hpp"

#include <cstdint>
#include <optional>
#include <utility>
#include <vector>

namespace sparsedecomp {

using Vertex = int;
using Edge = std::pair<Vertex, Vertex>; // normalized u < v

// Sorted list of distinct vertex ids.
using VertexSet = std::vector<Vertex>;

VertexSet make_vertex_set(std::vector<Vertex> vs);
bool is_sorted_unique(const VertexSet& vs);
VertexSet set_union(const VertexSet& a, const VertexSet& b);
VertexSet set_intersection(const VertexSet& a, const VertexSet& b);
VertexSet set_difference(const VertexSet& a, const VertexSet& b);
bool set_contains(const VertexSet& a, Vertex v);
bool sets_disjoint(const VertexSet& a, const VertexSet& b);

// Simple undirected graph on vertices 0..n-1. No loops, no multi-edges.
// Instances are immutable once built; all operations return new graphs.
class Graph {
public:
  Graph() : n_(0) {}
  static Graph from_edges(int n, std::vector<Edge> edges);
  static Graph empty(int n) { return from_edges(n, {}); }

  int n() const { return n_; }
  long long e() const { return static_cast<long long>(edges_.size()); }
  const std::vector<Edge>& edges() const { return edges_; }
  const std::vector<Vertex>& neighbors(Vertex v) const { return adj_[v]; }
  int degree(Vertex v) const { return static_cast<int>(adj_[v].size()); }
  int deg_in(Vertex v, const VertexSet& s) const;
  bool has_edge(Vertex u, Vertex v) const;

  int min_degree() const;  // over all n vertices; n == 0 gives INT_MAX
  int max_degree() const;
  // Vertices of nonzero degree; the natural vertex set of edge-subgraphs.
  VertexSet support() const;

  Graph minus_edges(const std::vector<Edge>& es) const;
  Graph keep_edges(const std::vector<Edge>& es) const; // subgraph on same ids
  Graph induced(const VertexSet& vs) const;            // same id space
  Graph minus_vertices(const VertexSet& vs) const;

  bool operator==(const Graph& o) const { return n_ == o.n_ && edges_ == o.edges_; }

private:
  int n_;
  std::vector<Edge> edges_;           // sorted lexicographically, u < v
  std::vector<std::vector<Vertex>> adj_;
  void rebuild_adj();
};

Edge make_edge(Vertex u, Vertex v);

// Partition of a ground set into nonempty disjoint blocks.
struct Partition {
  std::vector<VertexSet> blocks;

  VertexSet ground() const;
  void validate() const; // throws on overlap / empty block
};

// e(X, Y): ordered pairs (x, y) in X x Y with xy an edge. 2 e(X) = e(X, X).
long long ordered_pair_count(const Graph& g, const VertexSet& x, const VertexSet& y);

// Crossing edge count between disjoint sets (each edge counted once).
long long cross_edges(const Graph& g, const VertexSet& u, const VertexSet& w);

// d(U, W) = e(U, W) / (|U| |W|) for disjoint nonempty U, W.
Rat density(const Graph& g, const VertexSet& u, const VertexSet& w);

// Coarsest common refinement of two partitions of the same ground set.
Partition common_refinement(const Partition& p, const Partition& q);

// The unique maximal subgraph of minimum degree >= ell, by peeling vertices
// of degree < ell. Satisfies e(g') >= e(g) - (ell-1) n. May be empty.
Graph min_degree_subgraph(const Graph& g, long long ell);
VertexSet min_degree_core_vertices(const Graph& g, long long ell);

} // namespace sparsedecomp
