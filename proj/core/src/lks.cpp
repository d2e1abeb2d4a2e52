#include "sparsedecomp/lks.hpp"

#include <stdexcept>

namespace sparsedecomp {

void LksParams::validate() const {
  if (k < 1) throw std::invalid_argument("LksParams: k >= 1 required");
  // eta = 0 degenerates the threshold to deg >= k, which is meaningful; the gap
  // machinery separately insists on eta > 0 through the Omega-ratio bounds
  if (eta < 0 || eta >= 1) throw std::invalid_argument("LksParams: eta in [0,1) required");
}

DegreeSplit degree_split(const Graph& g, const LksParams& p) {
  p.validate();
  Rat thr = p.large_threshold();
  DegreeSplit out;
  for (int v = 0; v < g.n(); ++v) {
    if (Rat(g.degree(v)) >= thr) out.large.push_back(v);
    else out.small.push_back(v);
  }
  return out;
}

namespace {

long long large_count(const Graph& g, const LksParams& p) {
  Rat thr = p.large_threshold();
  long long cnt = 0;
  for (int v = 0; v < g.n(); ++v)
    if (Rat(g.degree(v)) >= thr) ++cnt;
  return cnt;
}

bool lks_by_count(long long large, int n, const Rat& eta) {
  return Rat(large) >= (Rat(1, 2) + eta) * Rat(n);
}

} // namespace

bool is_lks(const Graph& g, const LksParams& p) {
  p.validate();
  return lks_by_count(large_count(g, p), g.n(), p.eta);
}

bool is_lks_min(const Graph& g, const LksParams& p) {
  if (!is_lks(g, p)) return false;
  Rat thr = p.large_threshold();
  for (const auto& [u, v] : g.edges()) {
    // only the endpoints can drop out of L when uv is removed
    long long large = large_count(g, p);
    if (Rat(g.degree(u)) >= thr && Rat(g.degree(u) - 1) < thr) --large;
    if (Rat(g.degree(v)) >= thr && Rat(g.degree(v) - 1) < thr) --large;
    if (lks_by_count(large, g.n(), p.eta)) return false; // uv is removable
  }
  return true;
}

Graph minimize_to_lks_min(const Graph& g, const LksParams& p) {
  if (!is_lks(g, p)) throw std::invalid_argument("minimize_to_lks_min: not a member");
  Rat thr = p.large_threshold();
  std::vector<Edge> edges = g.edges(); // already lexicographic
  std::vector<char> present(edges.size(), 1);
  std::vector<long long> deg(g.n(), 0);
  for (const auto& [u, v] : edges) {
    ++deg[u];
    ++deg[v];
  }
  long long large = 0;
  for (int v = 0; v < g.n(); ++v)
    if (Rat(deg[v]) >= thr) ++large;

  bool changed = true;
  while (changed) {
    changed = false;
    for (size_t i = 0; i < edges.size(); ++i) {
      if (!present[i]) continue;
      auto [u, v] = edges[i];
      long long after = large;
      bool u_drops = Rat(deg[u]) >= thr && Rat(deg[u] - 1) < thr;
      bool v_drops = Rat(deg[v]) >= thr && Rat(deg[v] - 1) < thr;
      if (u_drops) --after;
      if (v_drops) --after;
      if (lks_by_count(after, g.n(), p.eta)) {
        present[i] = 0;
        --deg[u];
        --deg[v];
        large = after;
        changed = true;
      }
    }
  }
  std::vector<Edge> kept;
  for (size_t i = 0; i < edges.size(); ++i)
    if (present[i]) kept.push_back(edges[i]);
  return Graph::from_edges(g.n(), std::move(kept));
}

bool is_lks_small(const Graph& g, const LksParams& p) {
  if (!is_lks(g, p)) return false;
  if (g.e() > p.k * static_cast<long long>(g.n())) return false;
  long long cap1 = ceil_ll((Rat(1) + Rat(2) * p.eta) * Rat(p.k)); // ceil((1+2eta)k)
  long long exact2 = ceil_ll(p.large_threshold());                // ceil((1+eta)k)
  Rat thr = p.large_threshold();
  for (int v = 0; v < g.n(); ++v) {
    if (g.degree(v) > cap1) {
      for (Vertex w : g.neighbors(v))
        if (g.degree(w) > cap1) return false;
    }
    if (Rat(g.degree(v)) < thr) { // v in S
      for (Vertex w : g.neighbors(v))
        if (g.degree(w) != exact2) return false;
    }
  }
  return true;
}

Json LksMinFactsReport::to_json() const {
  Json j;
  j["clauses"] = Json{{"s_independent", s_independent},
                      {"high_degree_neighbors_exact", high_degree_neighbors_exact},
                      {"large_count_bounded", large_count_bounded},
                      {"edge_bound_applicable", edge_bound_applicable},
                      {"edge_bound_holds", edge_bound_holds}};
  j["counts"] = Json{{"edges", edges}, {"large", large_count}};
  return j;
}

LksMinFactsReport check_lksmin_facts(const Graph& g, const LksParams& p) {
  if (!is_lks_min(g, p))
    throw std::invalid_argument("check_lksmin_facts: input not edge-minimal member");
  LksMinFactsReport r;
  r.edges = g.e();
  Rat thr = p.large_threshold();
  long long exact = ceil_ll(thr);

  r.s_independent = true;
  for (const auto& [u, v] : g.edges())
    if (Rat(g.degree(u)) < thr && Rat(g.degree(v)) < thr) r.s_independent = false;

  r.high_degree_neighbors_exact = true;
  for (int v = 0; v < g.n(); ++v)
    if (g.degree(v) > exact)
      for (Vertex w : g.neighbors(v))
        if (g.degree(w) != exact) r.high_degree_neighbors_exact = false;

  r.large_count = large_count(g, p);
  long long cap = ceil_ll((Rat(1, 2) + p.eta) * Rat(g.n())) + 1;
  r.large_count_bounded = r.large_count <= cap;

  r.edge_bound_applicable =
      p.eta < Rat(1, 20) && g.n() > p.k && p.k > 20;
  r.edge_bound_holds = r.edges < p.k * static_cast<long long>(g.n());
  return r;
}

} // namespace sparsedecomp
