#include "sparsedecomp/tree_embed.hpp"

#include "sparsedecomp/rng.hpp"

#include <algorithm>
#include <deque>
#include <stdexcept>

namespace sparsedecomp {

ShrubDecomposition shrub_decompose(const RootedTree& t, const Rat& tau, long long k) {
  t.validate();
  if (tau <= 0 || tau > 1) throw std::invalid_argument("shrub_decompose: tau in (0,1]");
  if (t.order() != k) throw std::invalid_argument("shrub_decompose: v(t) must equal k");
  Rat cap = tau * Rat(k);
  if (cap < 1) throw std::invalid_argument("shrub_decompose: tau k < 1");

  auto ch = t.children();
  auto depth = t.depths();
  std::vector<char> cut(t.order(), 0);

  for (;;) {
    // subtree sizes ignoring cut vertices (a cut vertex separates)
    std::vector<long long> size(t.order(), 0);
    auto order = t.bfs_order();
    for (auto it = order.rbegin(); it != order.rend(); ++it) {
      int v = *it;
      if (cut[v]) {
        size[v] = 0;
        continue;
      }
      size[v] = 1;
      for (int c : ch[v])
        if (!cut[c]) size[v] += size[c];
    }
    // deepest vertex whose live subtree is too large; ties to smallest id
    int pick = -1;
    for (int v = 0; v < t.order(); ++v) {
      if (cut[v] || Rat(size[v]) <= cap) continue;
      if (pick < 0 || depth[v] > depth[pick] || (depth[v] == depth[pick] && v < pick))
        pick = v;
    }
    if (pick < 0) break;
    cut[pick] = 1;
  }

  ShrubDecomposition out;
  for (int v = 0; v < t.order(); ++v)
    if (cut[v]) out.cut_vertices.push_back(v);
  // components of t - W
  std::vector<int> comp(t.order(), -1);
  Graph tg = t.as_graph();
  int nc = 0;
  for (int v = 0; v < t.order(); ++v) {
    if (cut[v] || comp[v] >= 0) continue;
    std::deque<int> q{v};
    comp[v] = nc;
    while (!q.empty()) {
      int x = q.front();
      q.pop_front();
      for (int y : tg.neighbors(x))
        if (!cut[y] && comp[y] < 0) {
          comp[y] = nc;
          q.push_back(y);
        }
    }
    ++nc;
  }
  out.shrubs.resize(nc);
  for (int v = 0; v < t.order(); ++v)
    if (!cut[v]) out.shrubs[comp[v]].push_back(v);
  return out;
}

bool Embedding::total() const {
  for (int x : phi)
    if (x < 0) return false;
  return true;
}

Json Embedding::to_json() const {
  Json m;
  for (size_t v = 0; v < phi.size(); ++v)
    if (phi[v] >= 0) m[std::to_string(v)] = phi[v];
  return Json{{"map", std::move(m)}, {"reserve", vertex_set_to_json(reserve)}};
}

bool embedding_valid(const RootedTree& t, const Graph& g, const Embedding& e) {
  if (static_cast<int>(e.phi.size()) != t.order()) return false;
  std::vector<char> used(g.n(), 0);
  for (int v = 0; v < t.order(); ++v) {
    int x = e.phi[v];
    if (x < 0) continue;
    if (x >= g.n() || used[x]) return false;
    used[x] = 1;
  }
  for (int v = 0; v < t.order(); ++v) {
    int p = t.parent[v];
    if (p < 0 || e.phi[v] < 0 || e.phi[p] < 0) continue;
    if (!g.has_edge(e.phi[v], e.phi[p])) return false;
  }
  return true;
}

std::optional<Embedding> greedy_embed(const RootedTree& t, const Graph& g) {
  t.validate();
  if (t.order() > g.n()) return std::nullopt;
  auto order = t.bfs_order();
  for (int start = 0; start < g.n(); ++start) {
    Embedding e;
    e.phi.assign(t.order(), -1);
    std::vector<char> used(g.n(), 0);
    e.phi[t.root] = start;
    used[start] = 1;
    bool ok = true;
    for (int v : order) {
      if (v == t.root) continue;
      int pimg = e.phi[t.parent[v]];
      int pick = -1;
      for (int w : g.neighbors(pimg))
        if (!used[w]) {
          pick = w;
          break;
        }
      if (pick < 0) {
        ok = false;
        break;
      }
      e.phi[v] = pick;
      used[pick] = 1;
    }
    if (ok) return e;
  }
  return std::nullopt;
}

std::optional<Embedding> embed_path_expander(long long path_len, const Graph& gexp,
                                             const Rat& gamma, const Rat& rho,
                                             std::uint64_t seed, const FinderConfig& finder,
                                             PathEmbedStats* stats) {
  if (path_len < 1) throw std::invalid_argument("path embedding: k >= 1");
  long long k = path_len;
  // rho > 17 sqrt(gamma)  <=>  rho^2 > 289 gamma
  if (rho * rho <= 289 * gamma)
    throw std::invalid_argument("path embedding: rho > 17 sqrt(gamma) required");
  Rng rng(seed);
  Embedding e;
  e.phi.assign(static_cast<size_t>(path_len), -1);
  if (path_len == 1) { // a single vertex embeds anywhere
    if (gexp.n() == 0) throw std::invalid_argument("path embedding: empty host");
    e.phi[0] = 0;
    return e;
  }
  VertexSet sup = gexp.support();
  if (sup.empty()) throw std::invalid_argument("path embedding: empty host");
  for (Vertex v : sup)
    if (Rat(gexp.degree(v)) <= rho * Rat(k))
      throw std::invalid_argument("path embedding: mindeg above rho k required");
  if (!is_nowhere_dense(gexp, gamma * Rat(k), gamma, finder))
    throw std::invalid_argument("path embedding: host not certified nowhere-dense");

  std::vector<char> used(gexp.n(), 0);
  Vertex start = sup[static_cast<size_t>(rng.below(sup.size()))];
  e.phi[0] = start;
  used[start] = 1;
  Rat gk2 = gamma * Rat(k) * Rat(k);           // (sqrt(gamma) k)^2
  Rat dq_cap2 = 256 * gamma * Rat(k) * Rat(k); // (16 sqrt(gamma) k)^2
  std::vector<char> in_image(gexp.n(), 0);
  in_image[start] = 1;
  for (long long step = 1; step < path_len; ++step) {
    Vertex active = e.phi[static_cast<size_t>(step - 1)];
    std::vector<Vertex> candidates;
    long long disqualified = 0;
    for (Vertex w : gexp.neighbors(active)) {
      if (used[w]) continue;
      long long dimg = 0;
      for (Vertex nb : gexp.neighbors(w)) dimg += in_image[nb];
      if (Rat(dimg) * Rat(dimg) < gk2) candidates.push_back(w);
      else ++disqualified;
    }
    if (stats) {
      stats->max_disqualified = std::max(stats->max_disqualified, disqualified);
      if (Rat(disqualified) * Rat(disqualified) > dq_cap2) stats->disqualified_bound = false;
    }
    if (candidates.empty()) {
      if (stats) stats->lookahead_ok = false;
      return std::nullopt;
    }
    Vertex next = candidates[static_cast<size_t>(rng.below(candidates.size()))];
    e.phi[static_cast<size_t>(step)] = next;
    used[next] = 1;
    in_image[next] = 1;
  }
  return e;
}

std::optional<Embedding> embed_shrub_avoiding(const RootedTree& shrub, const Graph& g,
                                              const SpotFamily& fam, const VertexSet& avoiding,
                                              Vertex anchor, const VertexSet& used,
                                              const AvoidingEmbedParams& params) {
  shrub.validate();
  if (Rat(shrub.order()) > params.tau * Rat(params.k))
    throw std::invalid_argument("shrub embedding: shrub larger than tau k");
  Rat gamma2k = params.gamma * params.gamma * Rat(params.k);

  std::vector<VertexSet> spot_vertices;
  for (const auto& sp : fam.spots) spot_vertices.push_back(sp.vertices());

  // candidate roots: avoiding neighbours of the anchor, unused and
  // non-exceptional with respect to `used`
  for (Vertex cand : g.neighbors(anchor)) {
    if (!set_contains(avoiding, cand) || set_contains(used, cand)) continue;
    for (size_t s = 0; s < fam.spots.size(); ++s) {
      if (!set_contains(spot_vertices[s], cand)) continue;
      long long hit = static_cast<long long>(set_intersection(spot_vertices[s], used).size());
      if (Rat(hit) > gamma2k) continue;
      // fill the shrub greedily inside this spot
      Embedding e;
      e.phi.assign(shrub.order(), -1);
      VertexSet occupied = used;
      e.phi[shrub.root] = cand;
      occupied = set_union(occupied, {cand});
      bool ok = true;
      for (int v : shrub.bfs_order()) {
        if (v == shrub.root) continue;
        Vertex pimg = e.phi[shrub.parent[v]];
        int pick = -1;
        for (Vertex w : g.neighbors(pimg)) {
          if (set_contains(occupied, w)) continue;
          if (!set_contains(spot_vertices[s], w)) continue;
          pick = w;
          break;
        }
        if (pick < 0) {
          ok = false;
          break;
        }
        e.phi[v] = pick;
        occupied = set_union(occupied, {pick});
      }
      if (ok) return e;
    }
  }
  return std::nullopt;
}

namespace {

struct ReserveRun {
  const RootedTree& t;
  const Graph& g;
  const VertexSet& seeds;
  const ReserveEmbedParams& p;
  Rng rng;
  long long k;
  Rat look_cap; // rho k / 100

  std::vector<int> phi;
  std::vector<char> used;      // hosts tree vertices
  std::vector<char> reserved;  // sits in R
  VertexSet image;             // current full image

  ReserveRun(const RootedTree& t_, const Graph& g_, const VertexSet& s_,
             const ReserveEmbedParams& p_, std::uint64_t seed)
      : t(t_), g(g_), seeds(s_), p(p_), rng(seed), k(t_.order()),
        look_cap(p_.rho * Rat(t_.order()) / 100) {}

  bool passes_lookahead(Vertex w, const VertexSet& frozen_im) {
    long long d = g.deg_in(w, frozen_im);
    long long dr = 0;
    for (Vertex nb : g.neighbors(w))
      if (reserved[nb]) ++dr;
    return Rat(d + dr) < look_cap;
  }

  // up to `want` fresh candidates adjacent to `from`, seeded order;
  // allow_reserve lets shrub roots consume reserve vertices
  std::vector<Vertex> gather(Vertex from, const VertexSet& frozen_im, size_t want,
                             bool allow_reserve) {
    std::vector<Vertex> nbrs(g.neighbors(from).begin(), g.neighbors(from).end());
    rng.shuffle(nbrs);
    std::vector<Vertex> out;
    for (Vertex w : nbrs) {
      if (used[w]) continue;
      if (reserved[w] && !allow_reserve) continue;
      if (!passes_lookahead(w, frozen_im)) continue;
      out.push_back(w);
      if (out.size() == want) break;
    }
    return out;
  }

  void place(int tv, Vertex host) {
    phi[tv] = host;
    used[host] = 1;
    if (reserved[host]) reserved[host] = 0;
    image = set_union(image, {host});
  }
};

} // namespace

std::optional<Embedding> embed_tree_reserve(const RootedTree& t, const Graph& gexp,
                                            const VertexSet& seeds,
                                            const ReserveEmbedParams& params,
                                            ReserveEmbedTrace* trace) {
  t.validate();
  long long k = t.order();
  if (t.max_degree() > 3)
    throw std::invalid_argument("reserve embedding: tree maxdeg must be <= 3");
  if (Rat(BigInt(1) << params.q_levels) > params.rho * Rat(k))
    throw std::invalid_argument("reserve embedding: 2^q exceeds rho k");
  VertexSet sup = gexp.support();
  for (Vertex v : sup)
    if (Rat(gexp.degree(v)) <= params.rho * Rat(k))
      throw std::invalid_argument("reserve embedding: mindeg above rho k required");
  for (Vertex v : seeds)
    if (Rat(gexp.degree(v)) < params.delta * Rat(k))
      throw std::invalid_argument("reserve embedding: seed set must have mindeg delta k");

  auto depth = t.depths();
  auto ch = t.children();
  std::vector<int> cut, rest;
  for (int v = 0; v < t.order(); ++v)
    (depth[v] < params.q_levels ? cut : rest).push_back(v);
  // shrubs: components of t - W, each hanging below one cut vertex
  std::vector<int> shrub_root;
  for (int v : rest)
    if (depth[v] == params.q_levels) shrub_root.push_back(v);
  long long h = static_cast<long long>(shrub_root.size());

  for (long long attempt = 0; attempt < params.retries; ++attempt) {
    if (trace) ++trace->attempts;
    ReserveRun run(t, gexp, seeds, params, params.seed + static_cast<std::uint64_t>(attempt));
    run.phi.assign(t.order(), -1);
    run.used.assign(gexp.n(), 0);
    run.reserved.assign(gexp.n(), 0);
    run.image.clear();
    bool ok = true;

    // cut vertices go into the seed set
    std::vector<Vertex> seed_pool = seeds;
    run.rng.shuffle(seed_pool);
    for (int v : t.bfs_order()) {
      if (depth[v] >= params.q_levels) continue;
      if (v == t.root) {
        if (seed_pool.empty()) {
          ok = false;
          break;
        }
        run.place(v, seed_pool.front());
        continue;
      }
      Vertex pimg = run.phi[t.parent[v]];
      std::vector<Vertex> nbrs(gexp.neighbors(pimg).begin(), gexp.neighbors(pimg).end());
      run.rng.shuffle(nbrs);
      int pick = -1;
      for (Vertex w : nbrs) {
        if (run.used[w] || run.reserved[w] || !set_contains(seeds, w)) continue;
        if (!run.passes_lookahead(w, run.image)) continue;
        pick = w;
        break;
      }
      if (pick < 0) {
        ok = false;
        break;
      }
      run.place(v, pick);
    }
    if (!ok) continue;

    // shrubs one by one, with a frozen image per shrub
    if (trace) {
      trace->root_margins.clear();
      trace->margins_ok = true;
    }
    for (int r : shrub_root) {
      if (!ok) break;
      VertexSet frozen = run.image;
      // margin bookkeeping at the shrub root's parent
      Vertex pimg = run.phi[t.parent[r]];
      if (trace) {
        long long avail = 0;
        for (Vertex nb : gexp.neighbors(pimg))
          if (!run.used[nb]) ++avail;
        Rat margin = Rat(avail) - (params.delta * Rat(k) / 2 - Rat(2 * h));
        trace->root_margins.push_back(margin);
        if (margin < 0) trace->margins_ok = false;
      }
      // embed the shrub: the root may draw from the reserve; deeper steps
      // gather two candidates per child, host half, bank the rest in R
      auto extend = [&](Vertex from, const std::vector<int>& targets,
                        bool allow_reserve) -> bool {
        auto cands = run.gather(from, frozen, 2 * targets.size(), allow_reserve);
        if (cands.size() < targets.size()) return false;
        std::vector<size_t> ord(cands.size());
        for (size_t i = 0; i < ord.size(); ++i) ord[i] = i;
        run.rng.shuffle(ord);
        for (size_t i = 0; i < targets.size(); ++i) run.place(targets[i], cands[ord[i]]);
        for (size_t i = targets.size(); i < ord.size(); ++i)
          if (!run.used[cands[ord[i]]]) run.reserved[cands[ord[i]]] = 1;
        return true;
      };
      if (!extend(pimg, {r}, true)) {
        ok = false;
        break;
      }
      std::deque<int> bfs{r};
      while (!bfs.empty() && ok) {
        int v = bfs.front();
        bfs.pop_front();
        if (ch[v].empty()) continue;
        if (!extend(run.phi[v], ch[v], false)) {
          ok = false;
          break;
        }
        for (int c : ch[v]) bfs.push_back(c);
      }
    }
    if (!ok) continue;

    Embedding e;
    e.phi = run.phi;
    for (int v = 0; v < gexp.n(); ++v)
      if (run.reserved[v]) e.reserve.push_back(v);
    if (trace) trace->reserve_size = static_cast<long long>(e.reserve.size());
    if (!embedding_valid(t, gexp, e)) continue;
    if (!e.total()) continue;
    return e;
  }
  return std::nullopt;
}

} // namespace sparsedecomp
