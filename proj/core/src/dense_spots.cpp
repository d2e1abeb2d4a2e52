#include "sparsedecomp/dense_spots.hpp"

#include "sparsedecomp/rng.hpp"

#include <algorithm>
#include <deque>
#include <functional>
#include <queue>
#include <stdexcept>

namespace sparsedecomp {

void DenseSpot::normalize() {
  u = make_vertex_set(std::move(u));
  w = make_vertex_set(std::move(w));
  for (auto& e : f) e = make_edge(e.first, e.second);
  std::sort(f.begin(), f.end());
  f.erase(std::unique(f.begin(), f.end()), f.end());
  if (w < u) std::swap(u, w); // (U,W;F) and (W,U;F) are the same object
}

Json DenseSpot::to_json() const {
  Json j;
  j["u"] = vertex_set_to_json(u);
  j["w"] = vertex_set_to_json(w);
  Json fe = Json::array();
  for (const auto& [a, b] : f) fe.push_back(Json::array({a, b}));
  j["f"] = std::move(fe);
  return j;
}

DenseSpot DenseSpot::from_json(const Json& j) {
  DenseSpot d;
  d.u = vertex_set_from_json(j.at("u"));
  d.w = vertex_set_from_json(j.at("w"));
  for (const auto& e : j.at("f")) d.f.push_back(make_edge(e.at(0).get<int>(), e.at(1).get<int>()));
  d.normalize();
  return d;
}

Graph SpotFamily::captured_graph(int n) const {
  std::vector<Edge> es;
  for (const auto& s : spots) es.insert(es.end(), s.f.begin(), s.f.end());
  return Graph::from_edges(n, std::move(es));
}

VertexSet SpotFamily::vertex_union() const {
  VertexSet out;
  for (const auto& s : spots) out = set_union(out, s.vertices());
  return out;
}

bool SpotFamily::edge_disjoint() const {
  std::vector<Edge> all;
  for (const auto& s : spots) all.insert(all.end(), s.f.begin(), s.f.end());
  std::sort(all.begin(), all.end());
  return std::adjacent_find(all.begin(), all.end()) == all.end();
}

Json SpotFamily::to_json() const {
  Json arr = Json::array();
  for (const auto& s : spots) arr.push_back(s.to_json());
  return Json{{"spots", std::move(arr)}};
}

SpotFamily SpotFamily::from_json(const Json& j) {
  SpotFamily fam;
  for (const auto& s : j.at("spots")) fam.spots.push_back(DenseSpot::from_json(s));
  return fam;
}

bool is_dense_spot(const Graph& g, const DenseSpot& cand, const Rat& m, const Rat& gamma) {
  if (cand.u.empty() || cand.w.empty() || cand.f.empty()) return false;
  if (!sets_disjoint(cand.u, cand.w))
    throw std::invalid_argument("dense spot sides must be disjoint");
  std::vector<long long> deg_in_spot(g.n(), 0);
  for (const auto& [a, b] : cand.f) {
    bool ab = set_contains(cand.u, a) && set_contains(cand.w, b);
    bool ba = set_contains(cand.u, b) && set_contains(cand.w, a);
    if (!ab && !ba) throw std::invalid_argument("spot edge outside U x W");
    if (!g.has_edge(a, b)) throw std::invalid_argument("spot edge not in host graph");
    ++deg_in_spot[a];
    ++deg_in_spot[b];
  }
  for (Vertex v : cand.u)
    if (deg_in_spot[v] == 0) return false; // every spot vertex carries an edge
  for (Vertex v : cand.w)
    if (deg_in_spot[v] == 0) return false;
  for (Vertex v : cand.u)
    if (Rat(deg_in_spot[v]) <= m) return false;
  for (Vertex v : cand.w)
    if (Rat(deg_in_spot[v]) <= m) return false;
  Rat dens = Rat(static_cast<long long>(cand.f.size())) /
             (Rat(static_cast<long long>(cand.u.size())) * Rat(static_cast<long long>(cand.w.size())));
  return dens > gamma;
}

namespace {

// ---- exact finder ----------------------------------------------------------

struct ExactSearch {
  const Graph& g;
  const std::vector<Vertex>& verts; // support, size <= cap
  Rat m, gamma;
  std::vector<int> side;       // 0 unassigned/out, 1 = U, 2 = W
  std::vector<int> cross_deg;  // within current assignment
  long long cross_edges = 0;
  long long cnt_u = 0, cnt_w = 0;
  std::optional<DenseSpot> found;

  ExactSearch(const Graph& g_, const std::vector<Vertex>& vs, Rat m_, Rat gamma_)
      : g(g_), verts(vs), m(std::move(m_)), gamma(std::move(gamma_)),
        side(g_.n(), 0), cross_deg(g_.n(), 0) {}

  void check_leaf() {
    if (cnt_u == 0 || cnt_w == 0 || cross_edges == 0) return;
    for (Vertex v : verts) {
      if (side[v] == 0) continue;
      if (Rat(cross_deg[v]) <= m) return;
    }
    if (Rat(cross_edges) <= gamma * Rat(cnt_u) * Rat(cnt_w)) return;
    DenseSpot d;
    for (Vertex v : verts) {
      if (side[v] == 1) d.u.push_back(v);
      if (side[v] == 2) d.w.push_back(v);
    }
    for (const auto& [a, b] : g.edges())
      if ((side[a] == 1 && side[b] == 2) || (side[a] == 2 && side[b] == 1))
        d.f.push_back({a, b});
    d.normalize();
    found = d;
  }

  void assign(size_t idx, bool u_used) {
    if (found) return;
    if (idx == verts.size()) {
      check_leaf();
      return;
    }
    Vertex v = verts[idx];
    // out
    assign(idx + 1, u_used);
    if (found) return;
    // U (by symmetry the first assigned vertex goes to U)
    long long gain_u = 0;
    for (Vertex nb : g.neighbors(v))
      if (side[nb] == 2) ++gain_u;
    side[v] = 1;
    cross_edges += gain_u;
    cross_deg[v] = static_cast<int>(gain_u);
    for (Vertex nb : g.neighbors(v))
      if (side[nb] == 2) ++cross_deg[nb];
    ++cnt_u;
    assign(idx + 1, true);
    --cnt_u;
    for (Vertex nb : g.neighbors(v))
      if (side[nb] == 2) --cross_deg[nb];
    cross_edges -= gain_u;
    side[v] = 0;
    cross_deg[v] = 0;
    if (found || !u_used) return;
    // W
    long long gain_w = 0;
    for (Vertex nb : g.neighbors(v))
      if (side[nb] == 1) ++gain_w;
    side[v] = 2;
    cross_edges += gain_w;
    cross_deg[v] = static_cast<int>(gain_w);
    for (Vertex nb : g.neighbors(v))
      if (side[nb] == 1) ++cross_deg[nb];
    ++cnt_w;
    assign(idx + 1, true);
    --cnt_w;
    for (Vertex nb : g.neighbors(v))
      if (side[nb] == 1) --cross_deg[nb];
    cross_edges -= gain_w;
    side[v] = 0;
    cross_deg[v] = 0;
  }
};

std::optional<DenseSpot> find_exact(const Graph& g, const Rat& m, const Rat& gamma,
                                    const FinderConfig& cfg) {
  VertexSet sup = g.support();
  if (static_cast<int>(sup.size()) > cfg.exact_cap)
    throw std::invalid_argument("exact dense-spot search refused: graph above cap");
  ExactSearch s(g, sup, m, gamma);
  s.assign(0, false);
  return s.found;
}

// ---- heuristic finder ------------------------------------------------------

// Trim vertices of cross-degree <= m, then test density. Returns a valid spot
// or nothing. Operates on the subgraph of g induced by the given sides.
std::optional<DenseSpot> normalize_bipartition(const Graph& g, std::vector<int>& side,
                                               const std::vector<Vertex>& verts,
                                               const Rat& m, const Rat& gamma) {
  std::vector<long long> cd(g.n(), 0);
  long long cross = 0, cu = 0, cw = 0;
  for (Vertex v : verts) {
    if (side[v] == 1) ++cu;
    else if (side[v] == 2) ++cw;
  }
  for (Vertex v : verts) {
    if (side[v] != 1) continue;
    for (Vertex nb : g.neighbors(v))
      if (side[nb] == 2) {
        ++cd[v];
        ++cd[nb];
        ++cross;
      }
  }
  std::deque<Vertex> queue;
  std::vector<char> dead(g.n(), 0);
  for (Vertex v : verts)
    if (side[v] != 0 && Rat(cd[v]) <= m) {
      dead[v] = 1;
      queue.push_back(v);
    }
  while (!queue.empty()) {
    Vertex v = queue.front();
    queue.pop_front();
    if (side[v] == 1) --cu;
    else --cw;
    for (Vertex nb : g.neighbors(v)) {
      if (side[nb] == 0 || side[nb] == side[v]) continue;
      --cross; // each cross edge leaves when its first endpoint is processed
      if (!dead[nb]) {
        --cd[nb];
        if (Rat(cd[nb]) <= m) {
          dead[nb] = 1;
          queue.push_back(nb);
        }
      }
    }
    side[v] = 0;
  }
  if (cu == 0 || cw == 0 || cross == 0) return std::nullopt;
  // the densest connected component of the surviving bipartition is at least
  // as dense as the whole (mediant inequality) and keeps the trimmed degrees
  std::vector<int> cc(g.n(), -1);
  int ncc = 0;
  std::vector<long long> cc_u, cc_w, cc_e;
  for (Vertex v : verts) {
    if (side[v] == 0 || cc[v] >= 0) continue;
    std::deque<Vertex> q{v};
    cc[v] = ncc;
    cc_u.push_back(0);
    cc_w.push_back(0);
    cc_e.push_back(0);
    while (!q.empty()) {
      Vertex x = q.front();
      q.pop_front();
      (side[x] == 1 ? cc_u : cc_w)[ncc] += 1;
      for (Vertex nb : g.neighbors(x)) {
        if (side[nb] == 0 || side[nb] == side[x]) continue;
        ++cc_e[ncc];
        if (cc[nb] < 0) {
          cc[nb] = ncc;
          q.push_back(nb);
        }
      }
    }
    cc_e[ncc] /= 2; // counted from both endpoints
    ++ncc;
  }
  int best = -1;
  Rat best_density(0);
  for (int c = 0; c < ncc; ++c) {
    if (cc_u[c] == 0 || cc_w[c] == 0) continue;
    Rat dens = Rat(cc_e[c]) / (Rat(cc_u[c]) * Rat(cc_w[c]));
    if (dens > best_density) {
      best_density = dens;
      best = c;
    }
  }
  if (best < 0 || best_density <= gamma) return std::nullopt;
  DenseSpot d;
  for (Vertex v : verts) {
    if (cc[v] != best) continue;
    if (side[v] == 1) d.u.push_back(v);
    else if (side[v] == 2) d.w.push_back(v);
  }
  for (Vertex v : d.u)
    for (Vertex nb : g.neighbors(v))
      if (side[nb] == 2 && cc[nb] == best) d.f.push_back(make_edge(v, nb));
  d.normalize();
  return d;
}

// local-move max-cut; at stability every vertex has at least half its degree
// across (pass caps on big graphs only weaken the probe, never its soundness)
void maxcut_local(const Graph& g, const std::vector<Vertex>& verts,
                  std::vector<int>& side, int max_passes = 64) {
  for (int pass = 0; pass < max_passes; ++pass) {
    bool moved = false;
    for (Vertex v : verts) {
      long long same = 0, cross = 0;
      for (Vertex nb : g.neighbors(v)) {
        if (side[nb] == 0) continue;
        if (side[nb] == side[v]) ++same;
        else ++cross;
      }
      if (same > cross) {
        side[v] = side[v] == 1 ? 2 : 1;
        moved = true;
      }
    }
    if (!moved) break;
  }
}

std::optional<DenseSpot> probe_subset(const Graph& g, const std::vector<Vertex>& verts,
                                      const Rat& m, const Rat& gamma, Rng& rng,
                                      int random_restarts, long long edge_budget) {
  if (verts.size() < 2) return std::nullopt;
  // subset edge mass decides how hard the cut search may work
  long long mass = 0;
  for (Vertex v : verts) mass += g.degree(v);
  int passes = static_cast<int>(std::min<long long>(64, std::max<long long>(3, edge_budget / (mass + 1))));
  if (mass > edge_budget) random_restarts = std::min(random_restarts, 1);
  std::vector<int> side(g.n(), 0);
  // BFS parity coloring
  std::vector<int> mark(g.n(), 0);
  for (Vertex v : verts) mark[v] = 1;
  for (Vertex start : verts) {
    if (side[start] != 0) continue;
    side[start] = 1;
    std::deque<Vertex> q{start};
    while (!q.empty()) {
      Vertex v = q.front();
      q.pop_front();
      for (Vertex nb : g.neighbors(v))
        if (mark[nb] && side[nb] == 0) {
          side[nb] = side[v] == 1 ? 2 : 1;
          q.push_back(nb);
        }
    }
  }
  auto attempt = [&](std::vector<int> s) -> std::optional<DenseSpot> {
    maxcut_local(g, verts, s, passes);
    return normalize_bipartition(g, s, verts, m, gamma);
  };
  if (auto hit = attempt(side)) return hit;
  for (int r = 0; r < random_restarts; ++r) {
    std::vector<int> s(g.n(), 0);
    for (Vertex v : verts) s[v] = rng.bernoulli(1, 2) ? 1 : 2;
    if (auto hit = attempt(std::move(s))) return hit;
  }
  return std::nullopt;
}

std::optional<DenseSpot> find_heuristic(const Graph& g, const Rat& m, const Rat& gamma,
                                        const FinderConfig& cfg) {
  if (g.e() == 0) return std::nullopt;
  if (m < 1 && gamma < 1) {
    // any single edge qualifies
    auto [a, b] = g.edges().front();
    DenseSpot d{{a}, {b}, {{a, b}}};
    d.normalize();
    return d;
  }
  // every spot lives inside the floor(m)+1 core; its connected components
  // are probed separately (a spot spanning unrelated components would only
  // be an artifact of the bipartition search)
  long long t = floor_ll(m) + 1;
  VertexSet core = min_degree_core_vertices(g, t);
  if (core.empty()) return std::nullopt;

  Rng rng(cfg.seed);
  std::vector<char> in(g.n(), 0);
  for (Vertex v : core) in[v] = 1;
  std::vector<int> comp(g.n(), -1);
  std::vector<VertexSet> components;
  for (Vertex v : core) {
    if (comp[v] >= 0) continue;
    VertexSet cur;
    std::deque<Vertex> q{v};
    comp[v] = static_cast<int>(components.size());
    while (!q.empty()) {
      Vertex x = q.front();
      q.pop_front();
      cur.push_back(x);
      for (Vertex nb : g.neighbors(x))
        if (in[nb] && comp[nb] < 0) {
          comp[nb] = comp[v];
          q.push_back(nb);
        }
    }
    components.push_back(make_vertex_set(std::move(cur)));
  }

  for (const auto& cverts : components) {
    if (cverts.size() < 2) continue;
    // degeneracy order within the component via lazy-deletion min-heap
    std::vector<long long> deg(g.n(), 0);
    for (Vertex v : cverts)
      for (Vertex nb : g.neighbors(v))
        if (in[nb] && comp[nb] == comp[cverts[0]]) ++deg[v];
    std::vector<Vertex> order;
    order.reserve(cverts.size());
    {
      using Entry = std::pair<long long, Vertex>;
      std::priority_queue<Entry, std::vector<Entry>, std::greater<Entry>> heap;
      for (Vertex v : cverts) heap.push({deg[v], v});
      std::vector<char> gone(g.n(), 0);
      while (!heap.empty()) {
        auto [d, v] = heap.top();
        heap.pop();
        if (gone[v] || d != deg[v]) continue;
        gone[v] = 1;
        order.push_back(v);
        for (Vertex nb : g.neighbors(v))
          if (in[nb] && comp[nb] == comp[v] && !gone[nb]) {
            --deg[nb];
            heap.push({deg[nb], nb});
          }
      }
    }
    // probe a geometric suffix ladder (densest parts last in the order)
    std::vector<size_t> sizes;
    for (size_t s = order.size(); s >= 2; s = s * 3 / 4) {
      sizes.push_back(s);
      if (s == 2 || static_cast<int>(sizes.size()) >= cfg.ladder_steps) break;
    }
    for (size_t s : sizes) {
      std::vector<Vertex> suffix(order.end() - static_cast<long>(s), order.end());
      std::sort(suffix.begin(), suffix.end());
      if (auto hit = probe_subset(g, suffix, m, gamma, rng, cfg.random_restarts,
                                  cfg.edge_budget))
        return hit;
    }
  }
  return std::nullopt;
}

} // namespace

std::optional<DenseSpot> find_dense_spot(const Graph& g, const Rat& m, const Rat& gamma,
                                         const FinderConfig& cfg) {
  FinderMode mode = cfg.mode;
  if (mode == FinderMode::Auto)
    mode = static_cast<int>(g.support().size()) <= cfg.exact_cap ? FinderMode::Exact
                                                                 : FinderMode::Heuristic;
  auto out = mode == FinderMode::Exact ? find_exact(g, m, gamma, cfg)
                                       : find_heuristic(g, m, gamma, cfg);
  if (out && !is_dense_spot(g, *out, m, gamma))
    throw std::logic_error("finder produced an invalid spot");
  return out;
}

SpotFamily extract_spot_family(const Graph& g, const Rat& m, const Rat& gamma,
                               const FinderConfig& cfg) {
  SpotFamily fam;
  Graph residual = g;
  for (;;) {
    auto spot = find_dense_spot(residual, m, gamma, cfg);
    if (!spot) break;
    // absorb every residual edge between the sides; later spots stay
    // edge-disjoint and side pairs end up fully covered by the family
    DenseSpot full = *spot;
    full.f.clear();
    for (Vertex a : full.u)
      for (Vertex nb : residual.neighbors(a))
        if (set_contains(full.w, nb)) full.f.push_back(make_edge(a, nb));
    full.normalize();
    residual = residual.minus_edges(full.f);
    fam.spots.push_back(std::move(full));
  }
  return fam;
}

bool is_nowhere_dense(const Graph& g, const Rat& m, const Rat& gamma,
                      const FinderConfig& cfg) {
  return !find_dense_spot(g, m, gamma, cfg).has_value();
}

std::optional<DenseSpot> thick_to_spot(const Graph& g, const VertexSet& vertices,
                                       const Rat& beta, long long k) {
  std::vector<int> side(g.n(), 0);
  for (size_t i = 0; i < vertices.size(); ++i)
    side[vertices[i]] = i % 2 == 0 ? 1 : 2;
  maxcut_local(g, vertices, side, 1 << 20); // run to stability
  auto out = normalize_bipartition(g, side, vertices, beta * Rat(k) / 4, beta / 4);
  return out;
}

Json SpotFactsReport::to_json() const {
  return Json{{"size_fact", size_fact},
              {"count_fact", count_fact},
              {"max_side", max_side},
              {"max_spots_per_vertex", max_spots_per_vertex}};
}

SpotFactsReport check_spot_facts(const Graph& g, const SpotFamily& fam,
                                 const Rat& omega_star, const Rat& gamma, long long k) {
  if (Rat(g.max_degree()) > omega_star * Rat(k))
    throw std::invalid_argument("check_spot_facts: maxdeg exceeds Omega* k");
  SpotFactsReport r;
  Rat side_cap = omega_star / gamma * Rat(k);
  std::vector<long long> per_vertex(g.n(), 0);
  for (const auto& s : fam.spots) {
    long long side = std::max(s.u.size(), s.w.size());
    r.max_side = std::max(r.max_side, side);
    if (Rat(side) > side_cap) r.size_fact = false;
    for (Vertex v : s.vertices()) ++per_vertex[v];
  }
  Rat count_cap = omega_star / gamma;
  for (int v = 0; v < g.n(); ++v) {
    r.max_spots_per_vertex = std::max(r.max_spots_per_vertex, per_vertex[v]);
    if (Rat(per_vertex[v]) >= count_cap) r.count_fact = false;
  }
  return r;
}

} // namespace sparsedecomp
