#include "sparsedecomp/generators.hpp"

#include <algorithm>
#include <stdexcept>

namespace sparsedecomp {

Graph lks_extremal(int n) {
  if (n < 4 || n % 2 != 0) throw std::invalid_argument("lks_extremal needs even n >= 4");
  int clique_side = n / 2 - 1; // vertices 0..clique_side-1 keep all their edges
  std::vector<Edge> es;
  for (int u = 0; u < n; ++u)
    for (int v = u + 1; v < n; ++v)
      if (u < clique_side || v < clique_side) es.emplace_back(u, v);
  return Graph::from_edges(n, std::move(es));
}

Graph es_extremal(int n, int k) {
  if (k < 2) throw std::invalid_argument("es_extremal needs k >= 2");
  int s = (k - 2) / 2;
  if (s >= n) throw std::invalid_argument("es_extremal needs floor((k-2)/2) < n");
  std::vector<Edge> es;
  for (int u = 0; u < s; ++u)
    for (int v = u + 1; v < n; ++v) es.emplace_back(u, v);
  return Graph::from_edges(n, std::move(es));
}

LocallyDenseInstance locally_dense(int ell, int set_size, int pattern_maxdeg,
                                   const Rat& density, std::uint64_t seed) {
  if (ell < 1 || set_size < 1 || pattern_maxdeg < 0)
    throw std::invalid_argument("locally_dense: parameters must be positive");
  if (density < 0 || density > 1)
    throw std::invalid_argument("locally_dense: density outside [0,1]");
  Rng rng(seed);

  // random pattern: random edge order, accept while degrees stay bounded
  std::vector<Edge> cand;
  for (int i = 0; i < ell; ++i)
    for (int j = i + 1; j < ell; ++j) cand.emplace_back(i, j);
  rng.shuffle(cand);
  std::vector<int> pdeg(ell, 0);
  std::vector<Edge> pedges;
  for (const auto& [i, j] : cand) {
    if (pdeg[i] < pattern_maxdeg && pdeg[j] < pattern_maxdeg) {
      pedges.emplace_back(i, j);
      ++pdeg[i];
      ++pdeg[j];
    }
  }
  Graph pattern = Graph::from_edges(ell, std::move(pedges));

  std::vector<VertexSet> ensemble(ell);
  for (int i = 0; i < ell; ++i)
    for (int t = 0; t < set_size; ++t) ensemble[i].push_back(i * set_size + t);

  long long num = to_ll(numerator(density));
  long long den = to_ll(denominator(density));
  std::vector<Edge> hedges;
  for (const auto& [i, j] : pattern.edges())
    for (Vertex u : ensemble[i])
      for (Vertex w : ensemble[j])
        if (rng.bernoulli(num, den)) hedges.push_back(make_edge(u, w));
  Graph host = Graph::from_edges(ell * set_size, std::move(hedges));
  return {host, pattern, ensemble};
}

Graph random_graph_gnp(int n, const Rat& p, std::uint64_t seed) {
  if (p < 0 || p > 1) throw std::invalid_argument("gnp: p outside [0,1]");
  Rng rng(seed);
  long long num = to_ll(numerator(p));
  long long den = to_ll(denominator(p));
  std::vector<Edge> es;
  for (int u = 0; u < n; ++u)
    for (int v = u + 1; v < n; ++v)
      if (rng.bernoulli(num, den)) es.emplace_back(u, v);
  return Graph::from_edges(n, std::move(es));
}

Graph random_graph_gnm(int n, long long m, std::uint64_t seed) {
  long long all = static_cast<long long>(n) * (n - 1) / 2;
  if (m < 0 || m > all) throw std::invalid_argument("gnm: bad edge count");
  Rng rng(seed);
  // Floyd's sampling over edge indices
  std::vector<long long> chosen;
  std::vector<char> used(static_cast<size_t>(all), 0);
  for (long long j = all - m; j < all; ++j) {
    long long t = rng.range(0, j);
    long long pick = used[static_cast<size_t>(t)] ? j : t;
    used[static_cast<size_t>(pick)] = 1;
    chosen.push_back(pick);
  }
  std::vector<Edge> es;
  es.reserve(chosen.size());
  for (long long idx : chosen) {
    // unrank: idx-th pair in lexicographic order
    long long lo = 0;
    int u = 0;
    while (idx >= lo + (n - 1 - u)) {
      lo += n - 1 - u;
      ++u;
    }
    int v = u + 1 + static_cast<int>(idx - lo);
    es.emplace_back(u, v);
  }
  return Graph::from_edges(n, std::move(es));
}

Graph regular_graph(int n, int d, std::uint64_t seed) {
  if (d < 0 || d >= n || (static_cast<long long>(n) * d) % 2 != 0)
    throw std::invalid_argument("regular_graph: infeasible degree sequence");
  Rng rng(seed);
  for (int attempt = 0; attempt < 2000; ++attempt) {
    std::vector<int> stubs;
    stubs.reserve(static_cast<size_t>(n) * d);
    for (int v = 0; v < n; ++v)
      for (int i = 0; i < d; ++i) stubs.push_back(v);
    rng.shuffle(stubs);
    std::vector<Edge> es;
    bool ok = true;
    for (size_t i = 0; i + 1 < stubs.size() && ok; i += 2) {
      int u = stubs[i], v = stubs[i + 1];
      if (u == v) ok = false;
      else es.push_back(make_edge(u, v));
    }
    if (!ok) continue;
    std::sort(es.begin(), es.end());
    if (std::adjacent_find(es.begin(), es.end()) != es.end()) continue;
    return Graph::from_edges(n, std::move(es));
  }
  throw std::runtime_error("regular_graph: rejection sampling did not converge");
}

Graph near_regular_graph(int n, int d, std::uint64_t seed) {
  if (n < 2 || d < 1 || d >= n) throw std::invalid_argument("near_regular_graph: bad arguments");
  Rng rng(seed);
  std::vector<Edge> es;
  es.reserve(static_cast<size_t>(n) * d / 2);
  std::vector<Vertex> perm(n);
  for (int v = 0; v < n; ++v) perm[v] = v;
  for (int round = 0; round < d; ++round) {
    rng.shuffle(perm);
    for (int i = 0; i + 1 < n; i += 2) es.push_back(make_edge(perm[i], perm[i + 1]));
  }
  return Graph::from_edges(n, std::move(es)); // duplicates collapse, degrees dip
}

Graph disjoint_union(const std::vector<Graph>& gs) {
  int n = 0;
  std::vector<Edge> es;
  for (const auto& g : gs) {
    for (const auto& [u, v] : g.edges()) es.emplace_back(u + n, v + n);
    n += g.n();
  }
  return Graph::from_edges(n, std::move(es));
}

} // namespace sparsedecomp
