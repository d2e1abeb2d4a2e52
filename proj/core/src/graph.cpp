#include "sparsedecomp/graph.hpp"

#include <algorithm>
#include <climits>
#include <deque>
#include <map>
#include <stdexcept>
#include <string>

namespace sparsedecomp {

Rat parse_rational(const std::string& s) {
  auto slash = s.find('/');
  try {
    if (slash == std::string::npos) {
      return Rat(BigInt(s));
    }
    BigInt num(s.substr(0, slash));
    BigInt den(s.substr(slash + 1));
    if (den == 0) throw std::invalid_argument("zero denominator");
    return Rat(num, den);
  } catch (const std::exception&) {
    throw std::invalid_argument("not an exact rational: '" + s + "'");
  }
}

std::string rational_to_string(const Rat& x) {
  std::string s = numerator(x).str();
  if (denominator(x) != 1) s += "/" + denominator(x).str();
  return s;
}

VertexSet make_vertex_set(std::vector<Vertex> vs) {
  std::sort(vs.begin(), vs.end());
  vs.erase(std::unique(vs.begin(), vs.end()), vs.end());
  return vs;
}

bool is_sorted_unique(const VertexSet& vs) {
  for (size_t i = 1; i < vs.size(); ++i)
    if (vs[i - 1] >= vs[i]) return false;
  return true;
}

VertexSet set_union(const VertexSet& a, const VertexSet& b) {
  VertexSet out;
  out.reserve(a.size() + b.size());
  std::set_union(a.begin(), a.end(), b.begin(), b.end(), std::back_inserter(out));
  return out;
}

VertexSet set_intersection(const VertexSet& a, const VertexSet& b) {
  VertexSet out;
  std::set_intersection(a.begin(), a.end(), b.begin(), b.end(), std::back_inserter(out));
  return out;
}

VertexSet set_difference(const VertexSet& a, const VertexSet& b) {
  VertexSet out;
  std::set_difference(a.begin(), a.end(), b.begin(), b.end(), std::back_inserter(out));
  return out;
}

bool set_contains(const VertexSet& a, Vertex v) {
  return std::binary_search(a.begin(), a.end(), v);
}

bool sets_disjoint(const VertexSet& a, const VertexSet& b) {
  auto ia = a.begin();
  auto ib = b.begin();
  while (ia != a.end() && ib != b.end()) {
    if (*ia < *ib) ++ia;
    else if (*ib < *ia) ++ib;
    else return false;
  }
  return true;
}

Edge make_edge(Vertex u, Vertex v) {
  if (u == v) throw std::invalid_argument("self-loop");
  return u < v ? Edge{u, v} : Edge{v, u};
}

Graph Graph::from_edges(int n, std::vector<Edge> edges) {
  if (n < 0) throw std::invalid_argument("negative vertex count");
  for (auto& e : edges) {
    e = make_edge(e.first, e.second);
    if (e.first < 0 || e.second >= n)
      throw std::invalid_argument("vertex id out of range: (" +
                                  std::to_string(e.first) + "," +
                                  std::to_string(e.second) + ")");
  }
  std::sort(edges.begin(), edges.end());
  edges.erase(std::unique(edges.begin(), edges.end()), edges.end());
  Graph g;
  g.n_ = n;
  g.edges_ = std::move(edges);
  g.rebuild_adj();
  return g;
}

void Graph::rebuild_adj() {
  adj_.assign(n_, {});
  for (const auto& [u, v] : edges_) {
    adj_[u].push_back(v);
    adj_[v].push_back(u);
  }
  for (auto& a : adj_) std::sort(a.begin(), a.end());
}

bool Graph::has_edge(Vertex u, Vertex v) const {
  if (u < 0 || v < 0 || u >= n_ || v >= n_ || u == v) return false;
  const auto& a = adj_[u].size() <= adj_[v].size() ? adj_[u] : adj_[v];
  Vertex t = adj_[u].size() <= adj_[v].size() ? v : u;
  return std::binary_search(a.begin(), a.end(), t);
}

int Graph::deg_in(Vertex v, const VertexSet& s) const {
  int cnt = 0;
  for (Vertex w : adj_[v])
    if (set_contains(s, w)) ++cnt;
  return cnt;
}

int Graph::min_degree() const {
  if (n_ == 0) return INT_MAX; // convention: mindeg of the empty graph
  int m = INT_MAX;
  for (int v = 0; v < n_; ++v) m = std::min(m, degree(v));
  return m;
}

int Graph::max_degree() const {
  int m = 0;
  for (int v = 0; v < n_; ++v) m = std::max(m, degree(v));
  return m;
}

VertexSet Graph::support() const {
  VertexSet out;
  for (int v = 0; v < n_; ++v)
    if (degree(v) > 0) out.push_back(v);
  return out;
}

Graph Graph::minus_edges(const std::vector<Edge>& es) const {
  std::vector<Edge> del(es);
  for (auto& e : del) e = make_edge(e.first, e.second);
  std::sort(del.begin(), del.end());
  std::vector<Edge> kept;
  kept.reserve(edges_.size());
  std::set_difference(edges_.begin(), edges_.end(), del.begin(), del.end(),
                      std::back_inserter(kept));
  return from_edges(n_, std::move(kept));
}

Graph Graph::keep_edges(const std::vector<Edge>& es) const {
  std::vector<Edge> keep(es);
  for (auto& e : keep) e = make_edge(e.first, e.second);
  std::sort(keep.begin(), keep.end());
  std::vector<Edge> kept;
  std::set_intersection(edges_.begin(), edges_.end(), keep.begin(), keep.end(),
                        std::back_inserter(kept));
  return from_edges(n_, std::move(kept));
}

Graph Graph::induced(const VertexSet& vs) const {
  std::vector<Edge> kept;
  for (const auto& [u, v] : edges_)
    if (set_contains(vs, u) && set_contains(vs, v)) kept.emplace_back(u, v);
  return from_edges(n_, std::move(kept));
}

Graph Graph::minus_vertices(const VertexSet& vs) const {
  std::vector<Edge> kept;
  for (const auto& [u, v] : edges_)
    if (!set_contains(vs, u) && !set_contains(vs, v)) kept.emplace_back(u, v);
  return from_edges(n_, std::move(kept));
}

VertexSet Partition::ground() const {
  VertexSet g;
  for (const auto& b : blocks) g = set_union(g, b);
  return g;
}

void Partition::validate() const {
  size_t total = 0;
  for (const auto& b : blocks) {
    if (b.empty()) throw std::invalid_argument("partition with empty block");
    if (!is_sorted_unique(b)) throw std::invalid_argument("block not a set");
    total += b.size();
  }
  if (ground().size() != total)
    throw std::invalid_argument("partition blocks overlap");
}

long long ordered_pair_count(const Graph& g, const VertexSet& x, const VertexSet& y) {
  for (Vertex v : x)
    if (v < 0 || v >= g.n()) throw std::invalid_argument("vertex id out of range");
  for (Vertex v : y)
    if (v < 0 || v >= g.n()) throw std::invalid_argument("vertex id out of range");
  long long cnt = 0;
  for (Vertex v : x) cnt += g.deg_in(v, y);
  return cnt;
}

long long cross_edges(const Graph& g, const VertexSet& u, const VertexSet& w) {
  if (!sets_disjoint(u, w)) throw std::invalid_argument("sets must be disjoint");
  return ordered_pair_count(g, u, w);
}

Rat density(const Graph& g, const VertexSet& u, const VertexSet& w) {
  if (u.empty() || w.empty())
    throw std::invalid_argument("density of an empty pair");
  if (!sets_disjoint(u, w))
    throw std::invalid_argument("density of overlapping sets");
  long long e = cross_edges(g, u, w);
  return Rat(e) / (Rat(static_cast<long long>(u.size())) * Rat(static_cast<long long>(w.size())));
}

Partition common_refinement(const Partition& p, const Partition& q) {
  p.validate();
  q.validate();
  if (p.ground() != q.ground())
    throw std::invalid_argument("partitions of different ground sets");
  std::map<std::pair<int, int>, VertexSet> cells;
  std::vector<int> block_of_q;
  VertexSet ground = p.ground();
  int maxid = ground.empty() ? 0 : ground.back() + 1;
  std::vector<int> qidx(maxid, -1);
  for (int j = 0; j < static_cast<int>(q.blocks.size()); ++j)
    for (Vertex v : q.blocks[j]) qidx[v] = j;
  for (int i = 0; i < static_cast<int>(p.blocks.size()); ++i)
    for (Vertex v : p.blocks[i]) cells[{i, qidx[v]}].push_back(v);
  Partition out;
  for (auto& [key, cell] : cells) out.blocks.push_back(make_vertex_set(std::move(cell)));
  return out;
}

VertexSet min_degree_core_vertices(const Graph& g, long long ell) {
  std::vector<long long> deg(g.n());
  std::vector<char> dead(g.n(), 0);
  std::deque<Vertex> queue;
  for (int v = 0; v < g.n(); ++v) {
    deg[v] = g.degree(v);
    if (deg[v] < ell) {
      dead[v] = 1;
      queue.push_back(v);
    }
  }
  while (!queue.empty()) {
    Vertex v = queue.front();
    queue.pop_front();
    for (Vertex w : g.neighbors(v)) {
      if (dead[w]) continue;
      if (--deg[w] < ell) {
        dead[w] = 1;
        queue.push_back(w);
      }
    }
  }
  VertexSet core;
  for (int v = 0; v < g.n(); ++v)
    if (!dead[v]) core.push_back(v);
  return core;
}

Graph min_degree_subgraph(const Graph& g, long long ell) {
  if (ell <= 0) return g;
  return g.induced(min_degree_core_vertices(g, ell));
}

} // namespace sparsedecomp
