#include "sparsedecomp/decomposition.hpp"

#include "sparsedecomp/rng.hpp"

#include <algorithm>
#include <map>
#include <stdexcept>

namespace sparsedecomp {

void DecompParams::validate() const {
  if (k < 1) throw std::invalid_argument("params: k >= 1 required");
  for (const Rat* r : {&gamma, &eps, &nu, &rho})
    if (*r <= 0 || *r >= 1) throw std::invalid_argument("params: gamma, eps, nu, rho must lie in (0,1)");
  for (const Rat* r : {&lambda, &omega_star, &omega_star2})
    if (*r < 2) throw std::invalid_argument("params: Lambda, Omega*, Omega** must be >= 2");
  if (b < 0) throw std::invalid_argument("params: avoiding threshold b must be >= 0");
  if (prepartition_classes < 1) throw std::invalid_argument("params: s >= 1 required");
}

Json DecompParams::to_json() const {
  Json j;
  j["k"] = k;
  j["gamma"] = rational_to_json(gamma);
  j["eps"] = rational_to_json(eps);
  j["nu"] = rational_to_json(nu);
  j["rho"] = rational_to_json(rho);
  j["lambda"] = rational_to_json(lambda);
  j["omega_star"] = rational_to_json(omega_star);
  j["omega_star2"] = rational_to_json(omega_star2);
  j["b"] = rational_to_json(b);
  j["s"] = prepartition_classes;
  j["exact_cap"] = finder.exact_cap;
  j["seed"] = finder.seed;
  return j;
}

DecompParams DecompParams::from_json(const Json& j) {
  DecompParams p;
  p.k = j.at("k").get<long long>();
  p.gamma = rational_from_json(j.at("gamma"));
  p.eps = rational_from_json(j.at("eps"));
  p.nu = rational_from_json(j.at("nu"));
  p.rho = rational_from_json(j.at("rho"));
  p.lambda = rational_from_json(j.at("lambda"));
  p.omega_star = rational_from_json(j.at("omega_star"));
  p.omega_star2 = rational_from_json(j.at("omega_star2"));
  p.b = rational_from_json(j.at("b"));
  if (j.contains("s")) p.prepartition_classes = j.at("s").get<int>();
  if (j.contains("exact_cap")) p.finder.exact_cap = j.at("exact_cap").get<int>();
  if (j.contains("seed")) p.finder.seed = j.at("seed").get<std::uint64_t>();
  p.validate();
  return p;
}

VertexSet BoundedDecomposition::cluster_union() const {
  VertexSet out;
  for (const auto& c : clusters) out = set_union(out, c);
  return out;
}

Json BoundedDecomposition::to_json() const {
  Json j;
  Json cs = Json::array();
  for (const auto& c : clusters) cs.push_back(vertex_set_to_json(c));
  j["clusters"] = std::move(cs);
  j["spots"] = spots.to_json();
  j["g_reg"] = graph_to_json(g_reg);
  j["g_exp"] = graph_to_json(g_exp);
  j["avoiding"] = vertex_set_to_json(avoiding);
  Json pre = Json::array();
  for (const auto& b : prepartition.blocks) pre.push_back(vertex_set_to_json(b));
  j["prepartition"] = std::move(pre);
  return j;
}

BoundedDecomposition BoundedDecomposition::from_json(const Json& j) {
  BoundedDecomposition d;
  for (const auto& c : j.at("clusters")) d.clusters.push_back(vertex_set_from_json(c));
  d.spots = SpotFamily::from_json(j.at("spots"));
  d.g_reg = graph_from_json(j.at("g_reg"));
  d.g_exp = graph_from_json(j.at("g_exp"));
  d.avoiding = vertex_set_from_json(j.at("avoiding"));
  for (const auto& b : j.at("prepartition")) d.prepartition.blocks.push_back(vertex_set_from_json(b));
  return d;
}

Json SparseDecomposition::to_json() const {
  Json j;
  j["huge"] = vertex_set_to_json(huge);
  Json bj = bounded.to_json();
  for (auto& [key, val] : bj.items()) j[key] = std::move(val);
  return j;
}

SparseDecomposition SparseDecomposition::from_json(const Json& j) {
  SparseDecomposition s;
  s.huge = vertex_set_from_json(j.at("huge"));
  s.bounded = BoundedDecomposition::from_json(j);
  return s;
}

Json DecomposeReport::to_json() const {
  Json j;
  j["uncaptured"] = uncaptured;
  j["uncaptured_bound"] = uncaptured_bound;
  j["spot_loss"] = spot_loss;
  j["spot_loss_bound"] = spot_loss_bound;
  j["gexp_certification"] = gexp_certification;
  j["details"] = details;
  return j;
}

// ---------------------------------------------------------------------------
// pipeline

namespace {

// atoms of the common refinement over {U_D, W_D, rest}, restricted to the
// spot-covered vertices; signatures are per-spot side codes
std::vector<VertexSet> spot_atoms(int n, const SpotFamily& fam) {
  VertexSet covered = fam.vertex_union();
  std::vector<std::vector<char>> sig(static_cast<size_t>(n));
  for (Vertex v : covered) sig[v].assign(fam.spots.size(), 0);
  for (size_t s = 0; s < fam.spots.size(); ++s) {
    for (Vertex v : fam.spots[s].u) sig[v][s] = 1;
    for (Vertex v : fam.spots[s].w) sig[v][s] = 2;
  }
  std::map<std::vector<char>, VertexSet> atoms;
  for (Vertex v : covered) atoms[sig[v]].push_back(v);
  std::vector<VertexSet> out;
  for (auto& [key, vs] : atoms) out.push_back(std::move(vs));
  std::sort(out.begin(), out.end());
  return out;
}

struct ChunkInfo {
  VertexSet vertices;
  std::vector<char> sig; // side per spot, shared with its atom
};

} // namespace

BoundedDecomposition decompose_bounded(const Graph& g, const Partition& prepartition,
                                       const DecompParams& params, DecomposeReport* report) {
  params.validate();
  prepartition.validate();
  long long n = g.n();
  long long k = params.k;
  if (g.e() > k * n) throw std::invalid_argument("decompose: e(G) > k n");
  if (Rat(g.max_degree()) > params.omega_star * Rat(k))
    throw std::invalid_argument("decompose: maxdeg(G) > Omega* k");
  if (static_cast<int>(prepartition.blocks.size()) > params.prepartition_classes)
    throw std::invalid_argument("decompose: prepartition has more than s classes");
  {
    VertexSet ground = prepartition.ground();
    for (Vertex v : g.support())
      if (!set_contains(ground, v))
        throw std::invalid_argument("decompose: prepartition does not cover the support");
  }

  Rat m_spot = params.gamma * Rat(k);
  long long peel = floor_ll(params.rho * Rat(k)) + 1;

  // dense spots first, then the expander part; a spot the finder can still
  // see inside the peeled part goes back to the family
  Graph residual = g;
  SpotFamily fam;
  Graph gexp;
  for (;;) {
    auto spot = find_dense_spot(residual, m_spot, params.gamma, params.finder);
    if (!spot) {
      gexp = min_degree_subgraph(residual, peel);
      if (gexp.e() == 0) break;
      spot = find_dense_spot(gexp, m_spot, params.gamma, params.finder);
      if (!spot) break;
    }
    DenseSpot full = *spot;
    full.f.clear();
    for (Vertex a : full.u)
      for (Vertex nb : residual.neighbors(a))
        if (set_contains(full.w, nb)) full.f.push_back(make_edge(a, nb));
    full.normalize();
    residual = residual.minus_edges(full.f);
    fam.spots.push_back(std::move(full));
  }
  Graph g_dense = fam.captured_graph(g.n());

  // chunk scale: large atoms become chunks of size in [ntk, 2 ntk]
  long long p1 = regularize_min_set_size(params.eps, Rat(0));
  long long ntk = std::max(ceil_ll(params.nu * Rat(k)), p1);

  std::vector<VertexSet> atoms = spot_atoms(g.n(), fam);
  VertexSet avoiding;
  std::vector<ChunkInfo> chunks;
  {
    // signature lookup per atom (all members share it)
    std::vector<std::vector<char>> sig(static_cast<size_t>(g.n()));
    for (size_t s = 0; s < fam.spots.size(); ++s) {
      for (Vertex v : fam.spots[s].u) {
        if (sig[v].empty()) sig[v].assign(fam.spots.size(), 0);
        sig[v][s] = 1;
      }
      for (Vertex v : fam.spots[s].w) {
        if (sig[v].empty()) sig[v].assign(fam.spots.size(), 0);
        sig[v][s] = 2;
      }
    }
    for (const auto& atom : atoms) {
      if (static_cast<long long>(atom.size()) <= 2 * ntk) {
        avoiding = set_union(avoiding, atom);
        continue;
      }
      long long cb = (static_cast<long long>(atom.size()) + 2 * ntk - 1) / (2 * ntk);
      size_t base = atom.size() / static_cast<size_t>(cb);
      size_t extra = atom.size() % static_cast<size_t>(cb);
      size_t at = 0;
      for (long long c = 0; c < cb; ++c) {
        size_t len = base + (static_cast<size_t>(c) < extra ? 1 : 0);
        ChunkInfo ci;
        ci.vertices = VertexSet(atom.begin() + at, atom.begin() + at + len);
        ci.sig = sig[atom[0]];
        chunks.push_back(std::move(ci));
        at += len;
      }
    }
  }

  // pattern on chunks: a common spot plus density at least gamma
  Graph pattern = Graph::empty(static_cast<int>(chunks.size()));
  {
    std::vector<Edge> pe;
    for (int a = 0; a < static_cast<int>(chunks.size()); ++a)
      for (int b2 = a + 1; b2 < static_cast<int>(chunks.size()); ++b2) {
        bool coupled = false;
        for (size_t s = 0; s < fam.spots.size() && !coupled; ++s) {
          char sa = chunks[a].sig.empty() ? 0 : chunks[a].sig[s];
          char sb = chunks[b2].sig.empty() ? 0 : chunks[b2].sig[s];
          if ((sa == 1 && sb == 2) || (sa == 2 && sb == 1)) coupled = true;
        }
        if (!coupled) continue;
        if (density(g, chunks[a].vertices, chunks[b2].vertices) >= params.gamma)
          pe.emplace_back(a, b2);
      }
    pattern = Graph::from_edges(static_cast<int>(chunks.size()), std::move(pe));
  }

  // prepartition refined by the expander vertex set and by the set of
  // vertices with more than b neighbours in the avoiding set
  VertexSet gexp_vertices = gexp.support();
  VertexSet v_to_avoiding;
  for (int v = 0; v < g.n(); ++v)
    if (Rat(g.deg_in(v, avoiding)) > params.b) v_to_avoiding.push_back(v);
  Partition zeta;
  {
    std::map<std::tuple<int, bool, bool>, VertexSet> classes;
    std::vector<int> pre_of(g.n(), -1);
    for (int i = 0; i < static_cast<int>(prepartition.blocks.size()); ++i)
      for (Vertex v : prepartition.blocks[i]) pre_of[v] = i;
    for (Vertex v : prepartition.ground())
      classes[{pre_of[v], set_contains(gexp_vertices, v), set_contains(v_to_avoiding, v)}]
          .push_back(v);
    for (auto& [key, vs] : classes) zeta.blocks.push_back(std::move(vs));
  }

  // regularize the locally dense part
  std::vector<VertexSet> ensemble;
  for (const auto& c : chunks) ensemble.push_back(c.vertices);
  RegularizeResult reg;
  if (!ensemble.empty() && pattern.e() > 0) {
    RegularizeConfig rcfg;
    rcfg.reg = params.reg;
    reg = regularize_locally_dense(g_dense, pattern, ensemble, zeta, params.eps, rcfg);
  } else {
    reg.parts.resize(ensemble.size());
    for (size_t i = 0; i < ensemble.size(); ++i) {
      // no bipartite graphs to regularize: single-cluster partitions
      reg.parts[i].clusters.push_back(ensemble[i]);
    }
    reg.cluster_size = ensemble.empty() ? 0 : static_cast<long long>(ensemble[0].size());
  }

  // equal cluster sizes across chunks even in the degenerate branch
  if (pattern.e() == 0 && !ensemble.empty()) {
    size_t minsz = SIZE_MAX;
    for (const auto& e2 : ensemble) minsz = std::min(minsz, e2.size());
    for (size_t i = 0; i < ensemble.size(); ++i) {
      GarbagePartition gp;
      for (size_t at = 0; at + minsz <= ensemble[i].size(); at += minsz)
        gp.clusters.push_back(VertexSet(ensemble[i].begin() + at, ensemble[i].begin() + at + minsz));
      for (size_t at = (ensemble[i].size() / minsz) * minsz; at < ensemble[i].size(); ++at)
        gp.garbage.push_back(ensemble[i][at]);
      gp.garbage = make_vertex_set(std::move(gp.garbage));
      reg.parts[i] = std::move(gp);
    }
    reg.cluster_size = static_cast<long long>(minsz);
  }

  BoundedDecomposition out;
  out.spots = std::move(fam);
  out.g_exp = gexp;
  out.avoiding = avoiding;
  out.prepartition = prepartition;
  for (const auto& part : reg.parts)
    for (const auto& c : part.clusters) out.clusters.push_back(c);
  std::sort(out.clusters.begin(), out.clusters.end());

  // G_reg: all host edges of regular, dense cluster pairs along the pattern
  std::vector<Edge> reg_edges;
  long long pairs_kept = 0, pairs_dropped = 0;
  for (const auto& [ia, ib] : pattern.edges()) {
    for (const auto& ca : reg.parts[ia].clusters)
      for (const auto& cb : reg.parts[ib].clusters) {
        long long cross = cross_edges(g_dense, ca, cb);
        if (cross == 0) continue;
        Rat dens = Rat(cross) / (Rat(static_cast<long long>(ca.size())) *
                                 Rat(static_cast<long long>(cb.size())));
        if (dens <= params.gamma * params.gamma ||
            !is_regular_pair(g_dense, ca, cb, params.eps, params.reg).regular) {
          ++pairs_dropped;
          continue;
        }
        ++pairs_kept;
        for (Vertex x : ca)
          for (Vertex nb : g_dense.neighbors(x))
            if (set_contains(cb, nb)) reg_edges.push_back(make_edge(x, nb));
      }
  }
  out.g_reg = Graph::from_edges(g.n(), std::move(reg_edges));

  if (report) {
    Graph captured = captured_edges_bounded(g, out);
    report->uncaptured = g.e() - captured.e();
    Rat kn = Rat(k) * Rat(n);
    Rat slack = 4 * params.eps / params.gamma + params.eps * params.omega_star + params.gamma;
    report->uncaptured_bound = Rat(report->uncaptured) <= (slack + params.rho) * kn;
    // spot edges not in G_reg and not avoiding-incident towards E u UV
    VertexSet ev_targets = set_union(out.avoiding, out.cluster_union());
    long long loss = 0;
    for (const auto& [x, y] : g_dense.edges()) {
      if (out.g_reg.has_edge(x, y)) continue;
      bool from_avoiding = (set_contains(out.avoiding, x) && set_contains(ev_targets, y)) ||
                           (set_contains(out.avoiding, y) && set_contains(ev_targets, x));
      if (!from_avoiding) ++loss;
    }
    report->spot_loss = loss;
    report->spot_loss_bound = Rat(loss) <= slack * kn;
    report->gexp_certification =
        static_cast<int>(out.g_exp.support().size()) <= params.finder.exact_cap ? "exact"
                                                                                : "heuristic";
    // formal constants of the underlying statements, documentation only:
    // they are astronomically far from desk scale
    Rat exponent = params.omega_star * params.lambda /
                   (params.gamma * params.gamma * params.gamma);
    Rat et = params.eps / 8;
    Json formal = Json{
        {"nu_tilde", "eps * 3^-(" + rational_to_string(exponent) + ")"},
        {"q_maxcl", "iterate q -> 2q*16^q from ceil(4z/et) for ceil(3691(m+1)/et^6) steps"},
        {"round_budget",
         rational_to_string(rat_ceil(Rat(3691) * Rat(pattern.max_degree() + 1) /
                                     (et * et * et * et * et * et)))}};
    report->details = Json{{"spots", out.spots.spots.size()},
                           {"atoms", atoms.size()},
                           {"chunks", ensemble.size()},
                           {"chunk_scale", ntk},
                           {"cluster_size", reg.cluster_size},
                           {"clusters", out.clusters.size()},
                           {"avoiding_size", out.avoiding.size()},
                           {"gexp_vertices", gexp_vertices.size()},
                           {"gexp_edges", out.g_exp.e()},
                           {"pattern_edges", pattern.e()},
                           {"pairs_kept", pairs_kept},
                           {"pairs_dropped", pairs_dropped},
                           {"paper_formula", std::move(formal)},
                           {"regularize", reg.report}};
  }
  return out;
}

// ---------------------------------------------------------------------------
// sparse wrappers

namespace {

SparseOutcome sparse_from_gap(const Graph& cleaned, long long star,
                              const OmegaSequence& omegas, const Partition& pre_no_huge,
                              DecompParams params) {
  long long k = params.k;
  Rat h_threshold = omegas.value(star + 1) * Rat(k);
  VertexSet huge;
  for (int v = 0; v < cleaned.n(); ++v)
    if (Rat(cleaned.degree(v)) >= h_threshold) huge.push_back(v);

  Graph rest = cleaned.minus_vertices(huge);
  params.omega_star = std::max(omegas.value(star), Rat(5, 2));
  params.omega_star2 = std::max(h_threshold / Rat(k), Rat(5, 2));

  SparseOutcome out;
  out.star_index = star;
  out.cleaned = cleaned;
  out.params = params;
  out.decomposition.huge = huge;
  out.decomposition.bounded = decompose_bounded(rest, pre_no_huge, params, &out.report);

  // captured edges of the sparse decomposition, relative to the cleaned graph
  Graph captured = captured_edges(cleaned, out.decomposition);
  out.report.uncaptured = cleaned.e() - captured.e();
  Rat kn = Rat(k) * Rat(cleaned.n());
  Rat slack =
      4 * params.eps / params.gamma + params.eps * params.omega_star + params.gamma;
  out.report.uncaptured_bound = Rat(out.report.uncaptured) <= (slack + params.rho) * kn;
  out.report.details["huge_size"] = huge.size();
  out.report.details["star_index"] = star;
  return out;
}

} // namespace

SparseOutcome decompose_sparse_lks(const Graph& g, const LksParams& p,
                                   const OmegaSequence& omegas, DecompParams params) {
  params.validate();
  if (params.k != p.k) throw std::invalid_argument("decompose_sparse_lks: k mismatch");
  if (!is_lks(g, p)) throw std::invalid_argument("decompose_sparse_lks: not an LKS member");
  Graph minimal = minimize_to_lks_min(g, p);
  GapResult gap = create_gap_lks(minimal, p, omegas);

  // prepartition {S_{eta/2,k}, L_{eta/2,k} \ H} of the cleaned graph
  LksParams half{p.k, p.eta / 2};
  DegreeSplit split = degree_split(gap.subgraph, half);
  Rat h_threshold = omegas.value(gap.star_index + 1) * Rat(p.k);
  VertexSet huge;
  for (int v = 0; v < gap.subgraph.n(); ++v)
    if (Rat(gap.subgraph.degree(v)) >= h_threshold) huge.push_back(v);
  Partition pre;
  VertexSet small_wo = set_difference(split.small, huge);
  VertexSet large_wo = set_difference(split.large, huge);
  if (!small_wo.empty()) pre.blocks.push_back(small_wo);
  if (!large_wo.empty()) pre.blocks.push_back(large_wo);
  if (pre.blocks.empty()) pre.blocks.push_back(set_difference(split.small, huge));

  params.prepartition_classes = std::max(params.prepartition_classes, 2);
  return sparse_from_gap(gap.subgraph, gap.star_index, omegas, pre, params);
}

SparseOutcome decompose_generic(const Graph& g, const Rat& eta,
                                const OmegaSequence& omegas, DecompParams params) {
  params.validate();
  if (omegas.ratio() > eta / 4)
    throw std::invalid_argument("decompose_generic: omega ratio must be <= eta/4");
  GapResult gap = create_gap_generic(g, params.k, eta, omegas);
  Rat h_threshold = omegas.value(gap.star_index + 1) * Rat(params.k);
  VertexSet huge;
  for (int v = 0; v < gap.subgraph.n(); ++v)
    if (Rat(gap.subgraph.degree(v)) >= h_threshold) huge.push_back(v);
  Partition pre;
  VertexSet rest;
  for (int v = 0; v < g.n(); ++v)
    if (!set_contains(huge, v)) rest.push_back(v);
  if (rest.empty()) rest = {};
  if (!rest.empty()) pre.blocks.push_back(rest);
  return sparse_from_gap(gap.subgraph, gap.star_index, omegas, pre, params);
}

// ---------------------------------------------------------------------------
// captured edges and cluster graph

Graph captured_edges_bounded(const Graph& g, const BoundedDecomposition& d) {
  Graph g_dense = d.spots.captured_graph(g.n());
  VertexSet targets = set_union(d.avoiding, d.cluster_union());
  std::vector<Edge> es;
  for (const auto& e : d.g_reg.edges()) es.push_back(e);
  for (const auto& e : d.g_exp.edges()) es.push_back(e);
  for (const auto& [x, y] : g_dense.edges()) {
    if ((set_contains(d.avoiding, x) && set_contains(targets, y)) ||
        (set_contains(d.avoiding, y) && set_contains(targets, x)))
      es.push_back({x, y});
  }
  return Graph::from_edges(g.n(), std::move(es));
}

Graph captured_edges(const Graph& g, const SparseDecomposition& s) {
  Graph base = captured_edges_bounded(g, s.bounded);
  std::vector<Edge> es = base.edges();
  for (const auto& [x, y] : g.edges())
    if (set_contains(s.huge, x) || set_contains(s.huge, y)) es.push_back({x, y});
  return Graph::from_edges(g.n(), std::move(es));
}

ClusterGraphResult cluster_graph(const Graph& g, const BoundedDecomposition& d,
                                 const DecompParams& params) {
  int s = static_cast<int>(d.clusters.size());
  std::vector<Edge> es;
  for (int i = 0; i < s; ++i)
    for (int j = i + 1; j < s; ++j) {
      long long cross = cross_edges(d.g_reg, d.clusters[i], d.clusters[j]);
      if (cross == 0) continue;
      Rat dens = Rat(cross) / (Rat(static_cast<long long>(d.clusters[i].size())) *
                               Rat(static_cast<long long>(d.clusters[j].size())));
      if (dens >= params.gamma * params.gamma) es.emplace_back(i, j);
    }
  ClusterGraphResult out;
  out.graph = Graph::from_edges(s, std::move(es));

  Rat cap = params.omega_star / (params.gamma * params.gamma * params.nu);
  out.maxdeg_bound = Rat(out.graph.max_degree()) <= cap;

  // clusters reachable through spot edges from any vertex outside the huge set
  Graph g_dense = d.spots.captured_graph(g.n());
  std::vector<int> cluster_of(g.n(), -1);
  for (int i = 0; i < s; ++i)
    for (Vertex v : d.clusters[i]) cluster_of[v] = i;
  long long worst = 0;
  for (int v = 0; v < g.n(); ++v) {
    std::vector<char> seen(s, 0);
    long long cnt = 0;
    for (Vertex nb : g_dense.neighbors(v))
      if (cluster_of[nb] >= 0 && !seen[cluster_of[nb]]) {
        seen[cluster_of[nb]] = 1;
        ++cnt;
      }
    worst = std::max(worst, cnt);
  }
  Rat reach_cap = 2 * params.omega_star * params.omega_star /
                  (params.gamma * params.gamma * params.nu);
  out.spot_reach_bound = Rat(worst) < reach_cap || worst == 0;
  out.details = Json{{"cluster_count", s},
                     {"maxdeg", out.graph.max_degree()},
                     {"maxdeg_cap", rational_to_string(cap)},
                     {"max_spot_reach", worst},
                     {"spot_reach_cap", rational_to_string(reach_cap)}};
  return out;
}

// ---------------------------------------------------------------------------
// verifiers

bool ClauseReport::all_pass() const {
  for (const auto& e : entries)
    if (!e.pass) return false;
  return true;
}

const ClauseReport::Entry* ClauseReport::find(const std::string& name) const {
  for (const auto& e : entries)
    if (e.name == name) return &e;
  return nullptr;
}

Json ClauseReport::to_json() const {
  Json j;
  Json clauses;
  for (const auto& e : entries) {
    clauses[e.name] = Json{{"pass", e.pass}};
    if (!e.details.is_null()) clauses[e.name]["details"] = e.details;
  }
  j["clauses"] = std::move(clauses);
  j["all_pass"] = all_pass();
  return j;
}

namespace {

// exceptional vertices of the avoiding set against a forbidden set
VertexSet avoiding_exceptional(const BoundedDecomposition& d, const VertexSet& forbidden,
                               const Rat& gamma2k) {
  VertexSet out;
  std::vector<VertexSet> spot_vertices;
  spot_vertices.reserve(d.spots.spots.size());
  for (const auto& sp : d.spots.spots) spot_vertices.push_back(sp.vertices());
  for (Vertex v : d.avoiding) {
    bool good = false;
    for (size_t s = 0; s < spot_vertices.size() && !good; ++s) {
      if (!set_contains(spot_vertices[s], v)) continue;
      long long hit = static_cast<long long>(set_intersection(spot_vertices[s], forbidden).size());
      if (Rat(hit) <= gamma2k) good = true;
    }
    if (!good) out.push_back(v);
  }
  return out;
}

} // namespace

std::vector<VertexSet> builtin_challenges(const Graph& g, const BoundedDecomposition& d,
                                          const DecompParams& params, int random_count,
                                          std::uint64_t seed) {
  long long cap = floor_ll(params.lambda * Rat(params.k));
  std::vector<VertexSet> out;
  out.push_back({});
  VertexSet all;
  for (int v = 0; v < g.n(); ++v) all.push_back(v);
  if (static_cast<long long>(all.size()) <= cap) {
    out.push_back(all);
  } else {
    Rng rng(seed ^ 0x5eedULL);
    VertexSet shuffled = all;
    rng.shuffle(shuffled);
    out.push_back(make_vertex_set(
        std::vector<Vertex>(shuffled.begin(), shuffled.begin() + cap)));
  }
  Rng rng(seed);
  for (int t = 0; t < random_count; ++t) {
    VertexSet shuffled = all;
    rng.shuffle(shuffled);
    long long take = std::min<long long>(cap, static_cast<long long>(shuffled.size()));
    out.push_back(make_vertex_set(std::vector<Vertex>(shuffled.begin(), shuffled.begin() + take)));
  }
  // greedy adversary: exceptionalize avoiding vertices cheapest-first by
  // loading gamma^2 k + 1 vertices into each of their spots
  long long need = floor_ll(params.gamma * params.gamma * Rat(params.k)) + 1;
  VertexSet adversary;
  std::vector<VertexSet> spot_vertices;
  for (const auto& sp : d.spots.spots) spot_vertices.push_back(sp.vertices());
  for (;;) {
    long long best_cost = -1;
    int best_v = -1;
    for (Vertex v : d.avoiding) {
      long long cost = 0;
      for (const auto& sv : spot_vertices) {
        if (!set_contains(sv, v)) continue;
        long long have = static_cast<long long>(set_intersection(sv, adversary).size());
        cost += std::max<long long>(0, need - have);
      }
      if (cost == 0) continue; // already exceptional
      if (best_cost < 0 || cost < best_cost) {
        best_cost = cost;
        best_v = v;
      }
    }
    if (best_v < 0) break;
    if (static_cast<long long>(adversary.size()) + best_cost > cap) break;
    for (const auto& sv : spot_vertices) {
      if (!set_contains(sv, best_v)) continue;
      long long have = static_cast<long long>(set_intersection(sv, adversary).size());
      for (Vertex cand : sv) {
        if (have >= need) break;
        if (!set_contains(adversary, cand)) {
          adversary.push_back(cand);
          adversary = make_vertex_set(std::move(adversary));
          ++have;
        }
      }
    }
  }
  out.push_back(adversary);
  return out;
}

ClauseReport verify_bounded(const Graph& g, const BoundedDecomposition& d,
                            const DecompParams& params,
                            const std::vector<VertexSet>& challenges) {
  params.validate();
  ClauseReport rep;
  long long k = params.k;
  Rat gk = params.gamma * Rat(k);

  // 1: expander part nowhere-dense with minimum degree above rho k
  {
    bool sub = true;
    for (const auto& [x, y] : d.g_exp.edges())
      if (!g.has_edge(x, y)) sub = false;
    VertexSet sup = d.g_exp.support();
    bool mindeg_ok = true;
    for (Vertex v : sup)
      if (Rat(d.g_exp.degree(v)) <= params.rho * Rat(k)) mindeg_ok = false;
    bool nd = is_nowhere_dense(d.g_exp, gk, params.gamma, params.finder);
    bool exact_mode = static_cast<int>(sup.size()) <= params.finder.exact_cap;
    rep.entries.push_back({"1_gexp",
                           sub && mindeg_ok && nd,
                           Json{{"subgraph", sub},
                                {"mindeg_above_rho_k", mindeg_ok},
                                {"nowhere_dense", nd},
                                {"certification", exact_mode ? "exact" : "heuristic"}}});
  }
  // 2: clusters disjoint
  {
    bool ok = true;
    size_t total = 0;
    VertexSet uni = d.cluster_union();
    for (const auto& c : d.clusters) {
      total += c.size();
      if (c.empty()) ok = false;
    }
    if (uni.size() != total) ok = false;
    rep.entries.push_back({"2_clusters_disjoint", ok, Json{{"clusters", d.clusters.size()}}});
  }
  // 3: G_reg edges live in regular dense cluster pairs which G_reg captures fully
  {
    bool ok = true;
    Json bad = Json::array();
    std::vector<int> cluster_of(g.n(), -1);
    for (int i = 0; i < static_cast<int>(d.clusters.size()); ++i)
      for (Vertex v : d.clusters[i]) cluster_of[v] = i;
    for (const auto& [x, y] : d.g_reg.edges())
      if (!g.has_edge(x, y)) ok = false;
    for (const auto& [x, y] : d.g_exp.edges())
      if (d.g_reg.has_edge(x, y)) ok = false; // must avoid G_exp
    std::map<std::pair<int, int>, long long> pair_edges;
    for (const auto& [x, y] : d.g_reg.edges()) {
      int cx = cluster_of[x], cy = cluster_of[y];
      if (cx < 0 || cy < 0 || cx == cy) {
        ok = false;
        continue;
      }
      ++pair_edges[{std::min(cx, cy), std::max(cx, cy)}];
    }
    for (const auto& [key, cnt] : pair_edges) {
      const VertexSet& cu = d.clusters[key.first];
      const VertexSet& cw = d.clusters[key.second];
      long long in_g = cross_edges(g, cu, cw);
      long long in_reg = cross_edges(d.g_reg, cu, cw);
      bool full = in_g == in_reg;
      Rat dens = Rat(in_g) / (Rat(static_cast<long long>(cu.size())) *
                              Rat(static_cast<long long>(cw.size())));
      bool dense = dens >= params.gamma * params.gamma;
      bool regular = is_regular_pair(g, cu, cw, params.eps, params.reg).regular;
      if (!(full && dense && regular)) {
        ok = false;
        bad.push_back(Json{{"pair", Json::array({key.first, key.second})},
                           {"full", full},
                           {"dense", dense},
                           {"regular", regular}});
      }
    }
    rep.entries.push_back({"3_greg_pairs", ok, Json{{"bad_pairs", bad}}});
  }
  // 4: cluster sizes equal inside [nu k, eps k]
  {
    bool ok = true;
    long long sz = d.clusters.empty() ? -1 : static_cast<long long>(d.clusters[0].size());
    for (const auto& c : d.clusters)
      if (static_cast<long long>(c.size()) != sz) ok = false;
    if (sz >= 0) {
      if (Rat(sz) < params.nu * Rat(k) || Rat(sz) > params.eps * Rat(k)) ok = false;
    }
    rep.entries.push_back({"4_cluster_size", ok, Json{{"size", sz}}});
  }
  // 5: edge-disjoint dense spots in G - G_exp, side pairs fully covered
  {
    bool ok = d.spots.edge_disjoint();
    Graph host = g.minus_edges(d.g_exp.edges());
    for (const auto& sp : d.spots.spots) {
      try {
        if (!is_dense_spot(host, sp, gk, params.gamma)) ok = false;
      } catch (const std::invalid_argument&) {
        ok = false; // structurally broken spot
      }
    }
    // closure: every host edge between the sides of a spot is covered
    Graph g_dense = d.spots.captured_graph(g.n());
    for (const auto& sp : d.spots.spots) {
      for (Vertex a : sp.u)
        for (Vertex nb : g.neighbors(a))
          if (set_contains(sp.w, nb) && !g_dense.has_edge(a, nb)) ok = false;
    }
    rep.entries.push_back({"5_spots", ok, Json{{"count", d.spots.spots.size()}}});
  }
  // 6: G_reg cluster pairs sit inside a single spot
  {
    bool ok = true;
    std::vector<int> cluster_of(g.n(), -1);
    for (int i = 0; i < static_cast<int>(d.clusters.size()); ++i)
      for (Vertex v : d.clusters[i]) cluster_of[v] = i;
    std::map<std::pair<int, int>, bool> seen;
    for (const auto& [x, y] : d.g_reg.edges()) {
      int cx = cluster_of[x], cy = cluster_of[y];
      if (cx < 0 || cy < 0) continue;
      auto key = std::make_pair(std::min(cx, cy), std::max(cx, cy));
      if (seen.count(key)) continue;
      bool found = false;
      for (const auto& sp : d.spots.spots) {
        auto inside = [&](const VertexSet& a, const VertexSet& b) {
          return set_intersection(d.clusters[key.first], a).size() ==
                     d.clusters[key.first].size() &&
                 set_intersection(d.clusters[key.second], b).size() ==
                     d.clusters[key.second].size();
        };
        if (inside(sp.u, sp.w) || inside(sp.w, sp.u)) {
          found = true;
          break;
        }
      }
      seen[key] = found;
      if (!found) ok = false;
    }
    rep.entries.push_back({"6_pairs_in_spots", ok, Json{}});
  }
  // 7: prepartition and spot-side granularity of every cluster
  {
    bool ok = true;
    VertexSet gexp_vertices = d.g_exp.support();
    for (const auto& c : d.clusters) {
      bool in_block = false;
      for (const auto& blk : d.prepartition.blocks) {
        if (set_intersection(c, blk).size() != c.size()) continue;
        VertexSet inter = set_intersection(c, gexp_vertices);
        if (inter.size() == c.size() || inter.empty()) in_block = true;
      }
      if (!in_block) ok = false;
      for (const auto& sp : d.spots.spots) {
        size_t iu = set_intersection(c, sp.u).size();
        size_t iw = set_intersection(c, sp.w).size();
        if (iu != 0 && iu != c.size()) ok = false;
        if (iw != 0 && iw != c.size()) ok = false;
      }
    }
    rep.entries.push_back({"7_granularity", ok, Json{}});
  }
  // 8: the avoiding property on every challenge set
  {
    bool ok = true;
    VertexSet uni = d.cluster_union();
    if (!sets_disjoint(d.avoiding, uni)) ok = false;
    VertexSet spot_union = d.spots.vertex_union();
    for (Vertex v : d.avoiding)
      if (!set_contains(spot_union, v)) ok = false;
    Rat gamma2k = params.gamma * params.gamma * Rat(k);
    Rat epsk = params.eps * Rat(k);
    long long cap = floor_ll(params.lambda * Rat(k));
    Json runs = Json::array();
    for (const auto& u : challenges) {
      if (static_cast<long long>(u.size()) > cap)
        throw std::invalid_argument("verify: challenge set larger than Lambda k");
      VertexSet x = avoiding_exceptional(d, u, gamma2k);
      bool pass = Rat(static_cast<long long>(x.size())) <= epsk;
      if (!pass) ok = false;
      runs.push_back(Json{{"challenge_size", u.size()}, {"exceptional", x.size()}, {"pass", pass}});
    }
    // exhaustive truth at tiny scale
    bool exhaustive = false;
    if (cap <= 6 && g.n() <= 22 && !d.avoiding.empty()) {
      exhaustive = true;
      VertexSet u;
      std::vector<int> idx(static_cast<size_t>(cap), 0);
      // all subsets of size exactly cap (exceptional sets grow with U)
      std::vector<Vertex> all;
      for (int v = 0; v < g.n(); ++v) all.push_back(v);
      std::vector<int> comb(static_cast<size_t>(std::min<long long>(cap, g.n())));
      for (size_t i = 0; i < comb.size(); ++i) comb[i] = static_cast<int>(i);
      for (;;) {
        VertexSet cand;
        for (int c : comb) cand.push_back(all[c]);
        VertexSet x = avoiding_exceptional(d, cand, gamma2k);
        if (Rat(static_cast<long long>(x.size())) > epsk) {
          ok = false;
          break;
        }
        int pos = static_cast<int>(comb.size()) - 1;
        while (pos >= 0 && comb[pos] == g.n() - static_cast<int>(comb.size()) + pos) --pos;
        if (pos < 0) break;
        ++comb[pos];
        for (size_t t = pos + 1; t < comb.size(); ++t) comb[t] = comb[t - 1] + 1;
      }
    }
    rep.entries.push_back({"8_avoiding", ok, Json{{"runs", runs}, {"exhaustive", exhaustive}}});
  }
  // avoiding threshold dichotomy
  {
    bool ok = true;
    for (const auto& c : d.clusters) {
      long long mx = 0, mn = LLONG_MAX;
      for (Vertex v : c) {
        long long dv = g.deg_in(v, d.avoiding);
        mx = std::max(mx, dv);
        mn = std::min(mn, dv);
      }
      if (c.empty()) continue;
      bool low = Rat(mx) <= params.b;
      bool high = Rat(mn) > params.b;
      if (!low && !high) ok = false;
    }
    rep.entries.push_back({"threshold_b", ok, Json{}});
  }
  return rep;
}

ClauseReport verify_sparse(const Graph& g, const SparseDecomposition& s,
                           const DecompParams& params,
                           const std::vector<VertexSet>& challenges) {
  ClauseReport rep;
  // clause 1: degrees of the huge set, and the auxiliary graph H
  {
    bool ok = true;
    for (Vertex v : s.huge)
      if (Rat(g.degree(v)) < params.omega_star2 * Rat(params.k)) ok = false;
    // H: spot edges, expander edges, huge-incident edges
    std::vector<Edge> hes;
    Graph g_dense = s.bounded.spots.captured_graph(g.n());
    for (const auto& e : g_dense.edges()) hes.push_back(e);
    for (const auto& e : s.bounded.g_exp.edges()) hes.push_back(e);
    for (const auto& [x, y] : g.edges())
      if (set_contains(s.huge, x) || set_contains(s.huge, y)) hes.push_back({x, y});
    Graph aux = Graph::from_edges(g.n(), std::move(hes));
    for (int v = 0; v < g.n(); ++v)
      if (!set_contains(s.huge, v) && Rat(aux.degree(v)) > params.omega_star * Rat(params.k))
        ok = false;
    rep.entries.push_back({"sparse_1_degrees", ok, Json{{"huge", s.huge.size()}}});
  }
  Graph rest = g.minus_vertices(s.huge);
  ClauseReport inner = verify_bounded(rest, s.bounded, params, challenges);
  for (auto& e : inner.entries) rep.entries.push_back(std::move(e));
  return rep;
}

Json DegenerationReport::to_json() const {
  return Json{{"huge_empty", huge_empty},
              {"gexp_empty", gexp_empty},
              {"avoiding_small", avoiding_small},
              {"applicable", applicable},
              {"details", details}};
}

DegenerationReport check_dense_degeneration(const Graph& g, const SparseDecomposition& s,
                                            const DecompParams& params, const Rat& c) {
  DegenerationReport r;
  long long n = g.n();
  bool k_linear = Rat(params.k) == c * Rat(n);
  bool omega2_big = params.omega_star2 * Rat(params.k) > Rat(n);
  bool dense = Rat(g.e()) * 8 >= Rat(n) * Rat(n);
  r.applicable = k_linear && omega2_big && dense;
  r.huge_empty = s.huge.empty();
  r.gexp_empty = s.bounded.g_exp.e() == 0;
  r.avoiding_small =
      Rat(static_cast<long long>(s.bounded.avoiding.size())) <= params.eps * Rat(params.k);
  r.details = Json{{"k_linear_in_n", k_linear},
                   {"omega2_k_above_n", omega2_big},
                   {"dense_enough", dense},
                   {"avoiding_size", s.bounded.avoiding.size()},
                   {"c_rho", rational_to_string(c * params.rho)},
                   {"gamma", rational_to_string(params.gamma)}};
  return r;
}

} // namespace sparsedecomp
