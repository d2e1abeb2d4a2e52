#pragma once

#include "sparsedecomp/graph.hpp"

#include <string>
#include <vector>

namespace sparsedecomp {

// Rooted tree on vertices 0..k-1, parent[root] == -1.
struct RootedTree {
  std::vector<int> parent;
  int root = 0;

  int order() const { return static_cast<int>(parent.size()); }
  std::vector<std::vector<int>> children() const;
  std::vector<int> bfs_order() const; // root first, every vertex after its parent
  std::vector<int> depths() const;
  int max_degree() const;
  Graph as_graph() const;
  void validate() const; // connectivity, acyclicity, parent consistency

  static RootedTree from_parent(std::vector<int> parent, int root);
  static RootedTree path(int k);
  static RootedTree star(int k); // center is the root
  static RootedTree complete_binary(int k);
  static RootedTree from_pruefer(const std::vector<int>& code); // order = code.size() + 2
};

// Canonical form of the underlying free tree: AHU encoding rooted at the
// tree center (minimum over the one or two centers).
std::string tree_canonical_form(const RootedTree& t);

// Maximum independent set size of a tree (dynamic program).
int tree_independence_number(const RootedTree& t);

// All trees of order k up to isomorphism, via Pruefer enumeration with
// canonical-form dedup. Capped at k <= 10.
std::vector<RootedTree> all_trees(int k);

} // namespace sparsedecomp
