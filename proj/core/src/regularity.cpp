#include "sparsedecomp/regularity.hpp"

#include <algorithm>
#include <climits>
#include <map>
#include <stdexcept>

namespace sparsedecomp {

VertexSet GarbagePartition::ground() const {
  VertexSet g = garbage;
  for (const auto& c : clusters) g = set_union(g, c);
  return g;
}

void GarbagePartition::validate() const {
  size_t total = garbage.size();
  size_t sz = clusters.empty() ? 0 : clusters[0].size();
  for (const auto& c : clusters) {
    if (c.empty()) throw std::invalid_argument("empty cluster");
    if (c.size() != sz) throw std::invalid_argument("clusters of unequal size");
    if (!is_sorted_unique(c)) throw std::invalid_argument("cluster not a set");
    total += c.size();
  }
  if (ground().size() != total)
    throw std::invalid_argument("garbage partition blocks overlap");
}

Json GarbagePartition::to_json() const {
  Json j;
  j["garbage"] = vertex_set_to_json(garbage);
  Json cs = Json::array();
  for (const auto& c : clusters) cs.push_back(vertex_set_to_json(c));
  j["clusters"] = std::move(cs);
  return j;
}

GarbagePartition GarbagePartition::from_json(const Json& j) {
  GarbagePartition p;
  p.garbage = vertex_set_from_json(j.at("garbage"));
  for (const auto& c : j.at("clusters")) p.clusters.push_back(vertex_set_from_json(c));
  p.validate();
  return p;
}

void PairPartitionState::validate() const {
  if (!host) throw std::invalid_argument("pair state without host graph");
  a_side.validate();
  b_side.validate();
  if (!sets_disjoint(a_side.ground(), b_side.ground()))
    throw std::invalid_argument("pair state sides overlap");
  long long sa = a_side.cluster_size(), sb = b_side.cluster_size();
  if (sa != 0 && sb != 0 && sa != sb)
    throw std::invalid_argument("pair state cluster sizes differ");
}

// ---------------------------------------------------------------------------
// eps-regularity

namespace {

struct I128Frac {
  // all quantities in the exact check fit in __int128 when eps fits in int64
  long long num, den;
};

I128Frac eps_parts(const Rat& eps) {
  if (numerator(eps) > LLONG_MAX || denominator(eps) > LLONG_MAX)
    throw std::invalid_argument("eps too fine for the regularity oracle");
  return {to_ll(numerator(eps)), to_ll(denominator(eps))};
}

RegularityVerdict exact_regular(const Graph& g, const VertexSet& u, const VertexSet& w,
                                const Rat& eps, int cap) {
  int a = static_cast<int>(u.size());
  int b = static_cast<int>(w.size());
  if (a > cap || b > cap)
    throw std::invalid_argument("exact regularity check refused: side above cap");
  auto [en, ed] = eps_parts(eps);

  // adjacency of each w-vertex as a bitmask over u
  std::vector<std::uint32_t> mask(b, 0);
  for (int j = 0; j < b; ++j)
    for (int i = 0; i < a; ++i)
      if (g.has_edge(w[j], u[i])) mask[j] |= (1u << i);

  long long e0 = 0;
  for (int j = 0; j < b; ++j) e0 += __builtin_popcount(mask[j]);
  __int128 ab = static_cast<__int128>(a) * b;

  int bmin = 1;
  while (static_cast<__int128>(bmin) * ed < static_cast<__int128>(en) * b) ++bmin;
  int amin = 1;
  while (static_cast<__int128>(amin) * ed < static_cast<__int128>(en) * a) ++amin;

  std::vector<int> degs(b), idx(b);
  RegularityVerdict out;
  out.exact = true;
  for (std::uint32_t m = 1; m < (1u << a); ++m) {
    int asz = __builtin_popcount(m);
    if (asz < amin) continue;
    for (int j = 0; j < b; ++j) degs[j] = __builtin_popcount(mask[j] & m);
    for (int j = 0; j < b; ++j) idx[j] = j;
    std::stable_sort(idx.begin(), idx.end(),
                     [&](int x, int y) { return degs[x] < degs[y]; });
    long long lo = 0, hi = 0;
    std::vector<long long> lo_pref(b + 1, 0), hi_pref(b + 1, 0);
    for (int t = 0; t < b; ++t) {
      lo += degs[idx[t]];
      hi += degs[idx[b - 1 - t]];
      lo_pref[t + 1] = lo;
      hi_pref[t + 1] = hi;
    }
    for (int bs = bmin; bs <= b; ++bs) {
      __int128 vol = static_cast<__int128>(asz) * bs;
      for (int which = 0; which < 2; ++which) {
        long long es = which == 0 ? hi_pref[bs] : lo_pref[bs];
        // |e0/(ab) - es/vol| >= eps ?
        __int128 diff = static_cast<__int128>(e0) * vol - static_cast<__int128>(es) * ab;
        if (diff < 0) diff = -diff;
        if (diff * ed >= static_cast<__int128>(en) * ab * vol) {
          RegularityWitness wit;
          for (int i = 0; i < a; ++i)
            if (m & (1u << i)) wit.u_sub.push_back(u[i]);
          for (int t = 0; t < bs; ++t)
            wit.w_sub.push_back(w[which == 0 ? idx[b - 1 - t] : idx[t]]);
          wit.w_sub = make_vertex_set(std::move(wit.w_sub));
          wit.pair_density = Rat(e0) / (Rat(a) * Rat(b));
          wit.sub_density = Rat(es) / (Rat(asz) * Rat(bs));
          out.witness = std::move(wit);
          out.regular = false;
          return out;
        }
      }
    }
  }
  out.regular = true;
  return out;
}

RegularityVerdict heuristic_regular(const Graph& g, const VertexSet& u, const VertexSet& w,
                                    const Rat& eps) {
  RegularityVerdict out;
  out.exact = false;
  Rat d = density(g, u, w);
  Rat au(static_cast<long long>(u.size())), bw(static_cast<long long>(w.size()));

  auto try_witness = [&](const VertexSet& us, const VertexSet& ws) -> bool {
    if (us.empty() || ws.empty()) return false;
    if (Rat(static_cast<long long>(us.size())) < eps * au) return false;
    if (Rat(static_cast<long long>(ws.size())) < eps * bw) return false;
    Rat ds = density(g, us, ws);
    Rat dev = ds > d ? ds - d : d - ds;
    if (dev < eps) return false;
    out.witness = RegularityWitness{us, ws, d, ds};
    out.regular = false;
    return true;
  };

  // degree-deviation sets on either side
  for (int pass = 0; pass < 2; ++pass) {
    const VertexSet& s0 = pass == 0 ? u : w;
    const VertexSet& s1 = pass == 0 ? w : u;
    VertexSet high, low;
    for (Vertex v : s0) {
      Rat dv = Rat(g.deg_in(v, s1)) / Rat(static_cast<long long>(s1.size()));
      if (dv >= d + eps) high.push_back(v);
      if (dv <= d - eps) low.push_back(v);
    }
    if (pass == 0) {
      if (try_witness(high, w) || try_witness(low, w)) return out;
    } else {
      if (try_witness(u, high) || try_witness(u, low)) return out;
    }
  }
  // neighbourhood probes: restrict one side to a vertex neighbourhood
  int budget = 32;
  for (Vertex y : w) {
    if (budget-- <= 0) break;
    VertexSet us = set_intersection(u, g.neighbors(y));
    if (try_witness(us, w)) return out;
  }
  budget = 32;
  for (Vertex x : u) {
    if (budget-- <= 0) break;
    VertexSet ws = set_intersection(w, g.neighbors(x));
    if (try_witness(u, ws)) return out;
  }
  out.regular = true; // advisory
  return out;
}

} // namespace

RegularityVerdict is_regular_pair(const Graph& g, const VertexSet& u, const VertexSet& w,
                                  const Rat& eps, const RegularityConfig& cfg) {
  if (u.empty() || w.empty()) throw std::invalid_argument("regular pair needs nonempty sides");
  if (!sets_disjoint(u, w)) throw std::invalid_argument("regular pair sides must be disjoint");
  if (eps <= 0) throw std::invalid_argument("eps must be positive");
  bool small = static_cast<int>(u.size()) <= cfg.exact_cap &&
               static_cast<int>(w.size()) <= cfg.exact_cap;
  if (cfg.force_exact || (small && !cfg.force_heuristic))
    return exact_regular(g, u, w, eps, cfg.exact_cap);
  return heuristic_regular(g, u, w, eps);
}

// ---------------------------------------------------------------------------
// index

namespace {

// block ids: 0..s-1 real clusters, then one id per garbage singleton
struct BlockIndex {
  std::vector<int> block_of;     // -1 outside ground
  std::vector<long long> sizes;  // per block
  int real = 0;

  explicit BlockIndex(int n, const GarbagePartition& p) : block_of(n, -1) {
    real = static_cast<int>(p.clusters.size());
    for (int i = 0; i < real; ++i) {
      for (Vertex v : p.clusters[i]) block_of[v] = i;
      sizes.push_back(static_cast<long long>(p.clusters[i].size()));
    }
    for (Vertex v : p.garbage) {
      block_of[v] = static_cast<int>(sizes.size());
      sizes.push_back(1);
    }
  }
};

} // namespace

Rat partition_index(const PairPartitionState& state) {
  state.validate();
  const Graph& g = *state.host;
  BlockIndex a(g.n(), state.a_side);
  BlockIndex b(g.n(), state.b_side);
  std::map<std::pair<int, int>, long long> cnt;
  for (const auto& [x, y] : g.edges()) {
    int ax = a.block_of[x], by = b.block_of[y];
    if (ax >= 0 && by >= 0) ++cnt[{ax, by}];
    int ay = a.block_of[y], bx = b.block_of[x];
    if (ay >= 0 && bx >= 0) ++cnt[{ay, bx}];
  }
  Rat sum(0);
  for (const auto& [key, e] : cnt)
    sum += Rat(e) * Rat(e) / (Rat(a.sizes[key.first]) * Rat(b.sizes[key.second]));
  long long na = static_cast<long long>(state.a_side.ground().size());
  long long nb = static_cast<long long>(state.b_side.ground().size());
  Rat norm = Rat(na + nb) * Rat(na + nb);
  if (norm == 0) return Rat(0);
  return sum / norm;
}

// ---------------------------------------------------------------------------
// pumping

namespace {

// refine a cluster by a family of witness subsets: atoms keyed by signature
std::vector<VertexSet> refine_cluster(const VertexSet& cluster,
                                      const std::vector<const VertexSet*>& cuts) {
  std::map<std::vector<bool>, VertexSet> atoms;
  for (Vertex v : cluster) {
    std::vector<bool> sig;
    sig.reserve(cuts.size());
    for (const VertexSet* c : cuts) sig.push_back(set_contains(*c, v));
    atoms[sig].push_back(v);
  }
  std::vector<VertexSet> out;
  for (auto& [sig, vs] : atoms) out.push_back(std::move(vs));
  // deterministic order: by first vertex
  std::sort(out.begin(), out.end());
  return out;
}

BigInt pow2(long long p) {
  BigInt b = 1;
  return b << static_cast<unsigned>(p);
}

// 2 q 16^q, saturated
BigInt count_cap(long long q) {
  BigInt b = 2 * BigInt(q);
  return b << static_cast<unsigned>(4 * q > 4096 ? 4096 : 4 * q);
}

struct SideToRefine {
  const GarbagePartition* input;
  std::vector<std::vector<VertexSet>> pieces; // per input cluster
  long long side_size = 0;
};

// one common chunk size for all sides: the largest m' making every side meet
// the garbage-growth and cluster-count conclusions; m' = 1 always satisfies
// the growth bound since it leaves no remainders
long long choose_chunk_size(const std::vector<SideToRefine>& sides, long long p, long long q) {
  long long min_piece = LLONG_MAX;
  for (const auto& s : sides)
    for (const auto& ps : s.pieces)
      for (const auto& piece : ps)
        min_piece = std::min(min_piece, static_cast<long long>(piece.size()));
  if (min_piece == LLONG_MAX) min_piece = 1;
  BigInt cap = count_cap(q);
  for (long long m = min_piece; m >= 1; --m) {
    bool ok = true;
    for (const auto& s : sides) {
      long long chunks = 0, rem = 0;
      for (const auto& ps : s.pieces)
        for (const auto& piece : ps) {
          chunks += static_cast<long long>(piece.size()) / m;
          rem += static_cast<long long>(piece.size()) % m;
        }
      if (chunks < p + 1 || BigInt(chunks) > cap) ok = false;
      // remainder <= |side| / 2^p  <=>  remainder * 2^p <= |side|
      if (BigInt(rem) * pow2(p) > BigInt(s.side_size)) ok = false;
      if (!ok) break;
    }
    if (ok) return m;
  }
  throw std::invalid_argument("pump: cannot meet cluster-count window (p too large for these sets)");
}

GarbagePartition chop_side(const SideToRefine& s, long long m) {
  GarbagePartition out;
  out.garbage = s.input->garbage; // old garbage stays garbage
  for (const auto& ps : s.pieces)
    for (const auto& piece : ps) {
      size_t full = piece.size() / static_cast<size_t>(m);
      for (size_t c = 0; c < full; ++c) {
        VertexSet cl(piece.begin() + c * m, piece.begin() + (c + 1) * m);
        out.clusters.push_back(std::move(cl));
      }
      for (size_t i = full * m; i < piece.size(); ++i) out.garbage.push_back(piece[i]);
    }
  out.garbage = make_vertex_set(std::move(out.garbage));
  std::sort(out.clusters.begin(), out.clusters.end());
  out.validate();
  return out;
}

void check_pump_hypotheses(const PairPartitionState& st, const Rat& eps, long long p,
                           long long q) {
  st.validate();
  if (eps <= 0 || eps > Rat(1, 4))
    throw std::invalid_argument("pump: eps must lie in (0, 1/4]");
  long long na = static_cast<long long>(st.a_side.ground().size());
  long long nb = static_cast<long long>(st.b_side.ground().size());
  if (2 * nb < na || nb > 2 * na)
    throw std::invalid_argument("pump: side sizes must be within a factor of 2");
  for (const GarbagePartition* side : {&st.a_side, &st.b_side}) {
    long long cnt = static_cast<long long>(side->clusters.size());
    if (cnt < p || cnt > q)
      throw std::invalid_argument("pump: cluster count outside [p, q]");
    long long ground = static_cast<long long>(side->ground().size());
    if (Rat(static_cast<long long>(side->garbage.size())) >= eps * Rat(ground))
      throw std::invalid_argument("pump: garbage cluster too large");
  }
}

struct IrregularPair {
  int i, j;
  VertexSet wit_u, wit_w;
};

std::vector<IrregularPair> find_irregular(const PairPartitionState& st, const Rat& eps,
                                          const RegularityConfig& cfg) {
  std::vector<IrregularPair> out;
  for (int i = 0; i < static_cast<int>(st.a_side.clusters.size()); ++i)
    for (int j = 0; j < static_cast<int>(st.b_side.clusters.size()); ++j) {
      auto verdict =
          is_regular_pair(*st.host, st.a_side.clusters[i], st.b_side.clusters[j], eps, cfg);
      if (!verdict.regular && verdict.witness)
        out.push_back({i, j, verdict.witness->u_sub, verdict.witness->w_sub});
    }
  return out;
}

} // namespace

SimultaneousPumpResult pump_simultaneous(const std::vector<PairPartitionState>& pairs,
                                         const std::vector<GarbagePartition>& spectators,
                                         const Rat& eps, long long p, long long q,
                                         const RegularityConfig& cfg) {
  if (pairs.empty()) throw std::invalid_argument("pump: no pairs");
  long long common = -1;
  for (const auto& st : pairs) {
    check_pump_hypotheses(st, eps, p, q);
    for (const GarbagePartition* side : {&st.a_side, &st.b_side}) {
      long long s = side->cluster_size();
      if (common == -1) common = s;
      if (s != common)
        throw std::invalid_argument("pump: all partitions must share one cluster size");
    }
  }
  for (const auto& sp : spectators) {
    sp.validate();
    long long cnt = static_cast<long long>(sp.clusters.size());
    if (cnt < p || cnt > q)
      throw std::invalid_argument("pump: spectator cluster count outside [p, q]");
    long long ground = static_cast<long long>(sp.ground().size());
    if (Rat(static_cast<long long>(sp.garbage.size())) >= eps * Rat(ground))
      throw std::invalid_argument("pump: spectator garbage too large");
    if (sp.cluster_size() != common)
      throw std::invalid_argument("pump: spectator cluster size differs");
    for (const auto& st : pairs) {
      long long na = static_cast<long long>(st.a_side.ground().size());
      long long nb = static_cast<long long>(st.b_side.ground().size());
      long long c = static_cast<long long>(sp.ground().size());
      if (2 * c < std::max(na, nb) || c > 2 * std::min(na, nb))
        throw std::invalid_argument("pump: spectator size incompatible with pairs");
    }
  }

  // witnesses per pair; every pair must be eps-irregular
  std::vector<std::vector<IrregularPair>> irregular(pairs.size());
  std::vector<Rat> before(pairs.size());
  for (size_t t = 0; t < pairs.size(); ++t) {
    const auto& st = pairs[t];
    before[t] = partition_index(st);
    irregular[t] = find_irregular(st, eps, cfg);
    long long s = static_cast<long long>(st.a_side.clusters.size());
    long long u = static_cast<long long>(st.b_side.clusters.size());
    if (Rat(static_cast<long long>(irregular[t].size())) <= eps * Rat(s) * Rat(u))
      throw std::invalid_argument("pump: partition is eps-regular (no pumping possible)");
  }

  // collect refinement pieces for every side
  std::vector<SideToRefine> sides;
  for (size_t t = 0; t < pairs.size(); ++t) {
    const auto& st = pairs[t];
    for (int which = 0; which < 2; ++which) {
      const GarbagePartition& gp = which == 0 ? st.a_side : st.b_side;
      SideToRefine s;
      s.input = &gp;
      s.side_size = static_cast<long long>(gp.ground().size());
      s.pieces.resize(gp.clusters.size());
      for (size_t c = 0; c < gp.clusters.size(); ++c) {
        std::vector<const VertexSet*> cuts;
        for (const auto& ip : irregular[t]) {
          if (which == 0 && ip.i == static_cast<int>(c)) cuts.push_back(&ip.wit_u);
          if (which == 1 && ip.j == static_cast<int>(c)) cuts.push_back(&ip.wit_w);
        }
        s.pieces[c] = refine_cluster(gp.clusters[c], cuts);
      }
      sides.push_back(std::move(s));
    }
  }
  for (const auto& sp : spectators) {
    SideToRefine s;
    s.input = &sp;
    s.side_size = static_cast<long long>(sp.ground().size());
    s.pieces.resize(sp.clusters.size());
    for (size_t c = 0; c < sp.clusters.size(); ++c) s.pieces[c] = {sp.clusters[c]};
    sides.push_back(std::move(s));
  }

  long long m = choose_chunk_size(sides, p, q);

  SimultaneousPumpResult out;
  size_t side_idx = 0;
  for (size_t t = 0; t < pairs.size(); ++t) {
    PairPartitionState st;
    st.host = pairs[t].host;
    st.a_side = chop_side(sides[side_idx++], m);
    st.b_side = chop_side(sides[side_idx++], m);
    out.pairs.push_back(std::move(st));
  }
  for (size_t t = 0; t < spectators.size(); ++t)
    out.spectators.push_back(chop_side(sides[side_idx++], m));
  for (size_t t = 0; t < pairs.size(); ++t) {
    Rat after = partition_index(out.pairs[t]);
    out.gains.push_back(after - before[t]);
  }
  return out;
}

PumpResult pump(const PairPartitionState& state, const Rat& eps, long long p, long long q,
                const RegularityConfig& cfg) {
  Rat before = partition_index(state);
  auto sim = pump_simultaneous({state}, {}, eps, p, q, cfg);
  PumpResult out{sim.pairs[0], before, before + sim.gains[0], 0};
  out.irregular_pairs = static_cast<long long>(find_irregular(state, eps, cfg).size());
  return out;
}

// ---------------------------------------------------------------------------
// Vizing / Misra-Gries edge colouring

namespace {

struct EdgeColouring {
  int n, colours;
  std::vector<std::vector<int>> at; // at[v][c] = neighbour joined by colour c, or -1

  EdgeColouring(int n_, int colours_) : n(n_), colours(colours_), at(n_, std::vector<int>(colours_ + 1, -1)) {}

  int colour_of(int u, int v) const {
    for (int c = 1; c <= colours; ++c)
      if (at[u][c] == v) return c;
    return 0;
  }
  bool free_at(int v, int c) const { return at[v][c] == -1; }
  int first_free(int v) const {
    for (int c = 1; c <= colours; ++c)
      if (free_at(v, c)) return c;
    throw std::logic_error("edge colouring: no free colour");
  }
  void set(int u, int v, int c) {
    at[u][c] = v;
    at[v][c] = u;
  }
  void unset(int u, int v, int c) {
    at[u][c] = -1;
    at[v][c] = -1;
  }
};

} // namespace

std::vector<std::vector<Edge>> vizing_matchings(const Graph& f) {
  int delta = f.max_degree();
  if (f.e() == 0) return {};
  int colours = delta + 1;
  EdgeColouring col(f.n(), colours);

  for (const auto& [eu, ev] : f.edges()) {
    int u = eu, v = ev;
    // maximal fan of u starting at v: next vertex joined by a colour free at
    // the previous fan vertex, smallest id first
    std::vector<int> fan{v};
    std::vector<char> in_fan(f.n(), 0);
    in_fan[v] = 1;
    for (;;) {
      int next = -1;
      for (int w : f.neighbors(u)) {
        if (in_fan[w]) continue;
        int c = col.colour_of(u, w);
        if (c != 0 && col.free_at(fan.back(), c)) {
          next = w;
          break;
        }
      }
      if (next < 0) break;
      fan.push_back(next);
      in_fan[next] = 1;
    }
    int c = col.first_free(u);
    int d = col.first_free(fan.back());

    if (!col.free_at(u, d)) {
      // invert the maximal cd-path from u (starts along colour d)
      int x = u, want = d, prev = -1;
      std::vector<std::pair<Edge, int>> path; // edge, old colour
      for (;;) {
        int y = col.at[x][want];
        if (y == -1 || y == prev) break;
        path.push_back({make_edge(x, y), want});
        prev = x;
        x = y;
        want = want == d ? c : d;
      }
      for (const auto& [e, oldc] : path) col.unset(e.first, e.second, oldc);
      for (const auto& [e, oldc] : path) col.set(e.first, e.second, oldc == d ? c : d);
    }

    // largest fan prefix still valid after the inversion
    size_t valid = 1;
    while (valid < fan.size()) {
      int cc = col.colour_of(u, fan[valid]);
      if (cc != 0 && col.free_at(fan[valid - 1], cc)) ++valid;
      else break;
    }
    // first prefix vertex with d free
    int j = -1;
    for (size_t t = 0; t < valid; ++t)
      if (col.free_at(fan[t], d)) {
        j = static_cast<int>(t);
        break;
      }
    if (j < 0) throw std::logic_error("edge colouring: fan rotation failed");
    // rotate fan[0..j] and finish with colour d
    for (int t = 0; t < j; ++t) {
      int cc = col.colour_of(u, fan[t + 1]);
      col.unset(u, fan[t + 1], cc);
      col.set(u, fan[t], cc);
    }
    col.set(u, fan[j], d);
  }

  std::vector<std::vector<Edge>> classes(colours);
  for (const auto& [u, v] : f.edges()) {
    int c = col.colour_of(u, v);
    if (c == 0) throw std::logic_error("edge colouring: uncoloured edge");
    classes[c - 1].push_back({u, v});
  }
  std::vector<std::vector<Edge>> out;
  for (auto& cls : classes)
    if (!cls.empty()) out.push_back(std::move(cls));
  return out;
}

// ---------------------------------------------------------------------------
// regularity lemma for locally dense graphs

namespace {

long long ceil_log2(const Rat& x) { // smallest p with 2^p >= x
  long long p = 0;
  Rat pow(1);
  while (pow < x) {
    pow *= 2;
    ++p;
  }
  return p;
}

// eps~-irregularity of the pair of partitions (W_x, W_y) in h
bool partition_pair_irregular(const Graph& h, const GarbagePartition& px,
                              const GarbagePartition& py, const Rat& eps,
                              const RegularityConfig& cfg) {
  long long s = static_cast<long long>(px.clusters.size());
  long long t = static_cast<long long>(py.clusters.size());
  long long bad = 0;
  for (const auto& cu : px.clusters)
    for (const auto& cw : py.clusters)
      if (!is_regular_pair(h, cu, cw, eps, cfg).regular) ++bad;
  return Rat(bad) > eps * Rat(s) * Rat(t);
}

} // namespace

long long regularize_min_set_size(const Rat& eps, const Rat& eps_tilde) {
  Rat et = eps_tilde > 0 ? eps_tilde : eps / 8;
  return std::max(ceil_ll(Rat(1) / eps) + 1, ceil_log2(Rat(4) / et));
}

Json partitions_to_json(const std::vector<GarbagePartition>& parts) {
  Json sets = Json::array();
  for (const auto& p : parts) sets.push_back(p.to_json());
  return Json{{"sets", std::move(sets)}};
}

std::vector<GarbagePartition> partitions_from_json(const Json& j) {
  std::vector<GarbagePartition> out;
  for (const auto& p : j.at("sets")) out.push_back(GarbagePartition::from_json(p));
  return out;
}

RegularizeResult regularize_locally_dense(const Graph& h, const Graph& pattern,
                                          const std::vector<VertexSet>& ensemble,
                                          const Partition& prepartition, const Rat& eps,
                                          const RegularizeConfig& cfg) {
  int ell = static_cast<int>(ensemble.size());
  if (pattern.n() != ell)
    throw std::invalid_argument("regularize: pattern order must match ensemble size");
  if (eps <= 0 || eps >= 1) throw std::invalid_argument("regularize: eps in (0,1)");
  size_t wmin = SIZE_MAX, wmax = 0;
  VertexSet seen;
  for (const auto& wi : ensemble) {
    if (wi.empty()) throw std::invalid_argument("regularize: empty ensemble set");
    if (!sets_disjoint(seen, wi)) throw std::invalid_argument("regularize: ensemble sets overlap");
    seen = set_union(seen, wi);
    wmin = std::min(wmin, wi.size());
    wmax = std::max(wmax, wi.size());
  }
  if (ell > 0 && 2 * wmin < wmax)
    throw std::invalid_argument("regularize: ensemble sizes must be within a factor of 2");
  prepartition.validate();
  // class id per vertex (vertices beyond the prepartition count as class -1)
  std::vector<int> zclass(h.n(), -1);
  for (int zi = 0; zi < static_cast<int>(prepartition.blocks.size()); ++zi)
    for (Vertex v : prepartition.blocks[zi]) zclass[v] = zi;
  for (Vertex v : seen)
    if (zclass[v] < 0)
      throw std::invalid_argument("regularize: ensemble vertex outside the prepartition");

  Rat eps_t = cfg.eps_tilde > 0 ? cfg.eps_tilde : eps / 8;
  long long p1 = std::max(ceil_ll(Rat(1) / eps) + 1, ceil_log2(Rat(4) / eps_t));
  if (static_cast<long long>(wmin) < p1)
    throw std::invalid_argument("regularize: ensemble sets too small for this eps");

  // initial partitions: common cluster size, clusters inside one prepartition
  // class, per-set garbage at most (eps~/2)|W_i|
  long long c0 = 1;
  for (long long c = static_cast<long long>(wmin) / p1; c > 1; --c) {
    bool ok = true;
    for (const auto& wi : ensemble) {
      std::map<int, long long> by_class;
      for (Vertex v : wi) ++by_class[zclass[v]];
      long long clusters = 0, garbage = 0;
      for (auto& [z, cntz] : by_class) {
        clusters += cntz / c;
        garbage += cntz % c;
      }
      if (clusters < p1) ok = false;
      if (Rat(garbage) * 2 > eps_t * Rat(static_cast<long long>(wi.size()))) ok = false;
      if (!ok) break;
    }
    if (ok) {
      c0 = c;
      break;
    }
  }
  std::vector<GarbagePartition> parts(ell);
  for (int i = 0; i < ell; ++i) {
    std::map<int, VertexSet> by_class;
    for (Vertex v : ensemble[i]) by_class[zclass[v]].push_back(v);
    for (auto& [z, vs] : by_class) {
      size_t full = vs.size() / static_cast<size_t>(c0);
      for (size_t c = 0; c < full; ++c)
        parts[i].clusters.push_back(
            VertexSet(vs.begin() + c * c0, vs.begin() + (c + 1) * c0));
      for (size_t t = full * c0; t < vs.size(); ++t) parts[i].garbage.push_back(vs[t]);
    }
    parts[i].garbage = make_vertex_set(std::move(parts[i].garbage));
    std::sort(parts[i].clusters.begin(), parts[i].clusters.end());
    parts[i].validate();
  }

  RegularizeResult res;
  auto host = std::make_shared<Graph>(h);
  auto matchings = vizing_matchings(pattern);
  long long round_cap = cfg.round_cap;
  if (round_cap < 0) {
    // size strictly decreases each round; the index budget is far larger
    round_cap = c0 + 2;
  }

  long long round = 0;
  while (round < round_cap) {
    int pick = -1;
    std::vector<size_t> bad_edges;
    for (size_t q = 0; q < matchings.size() && pick < 0; ++q) {
      std::vector<size_t> bad;
      for (size_t eidx = 0; eidx < matchings[q].size(); ++eidx) {
        auto [x, y] = matchings[q][eidx];
        if (partition_pair_irregular(h, parts[x], parts[y], eps_t, cfg.reg))
          bad.push_back(eidx);
      }
      if (Rat(static_cast<long long>(bad.size())) >=
          eps_t * Rat(static_cast<long long>(matchings[q].size()))) {
        pick = static_cast<int>(q);
        bad_edges = std::move(bad);
      }
    }
    if (pick < 0) break;
    ++round;

    std::vector<PairPartitionState> states;
    std::vector<char> in_pair(ell, 0);
    for (size_t eidx : bad_edges) {
      auto [x, y] = matchings[static_cast<size_t>(pick)][eidx];
      PairPartitionState st;
      st.host = host;
      st.a_side = parts[x];
      st.b_side = parts[y];
      states.push_back(std::move(st));
      in_pair[x] = in_pair[y] = 1;
    }
    std::vector<GarbagePartition> spect;
    std::vector<int> spect_ids;
    for (int i = 0; i < ell; ++i)
      if (!in_pair[i]) {
        spect.push_back(parts[i]);
        spect_ids.push_back(i);
      }
    long long qbound = 0;
    for (const auto& pp : parts)
      qbound = std::max(qbound, static_cast<long long>(pp.clusters.size()));
    long long p_round = p1 + round - 1;
    auto pumped = pump_simultaneous(states, spect, eps_t, p_round, qbound, cfg.reg);
    size_t si = 0;
    for (size_t eidx : bad_edges) {
      auto [x, y] = matchings[static_cast<size_t>(pick)][eidx];
      parts[x] = pumped.pairs[si].a_side;
      parts[y] = pumped.pairs[si].b_side;
      ++si;
    }
    for (size_t t = 0; t < spect_ids.size(); ++t) parts[spect_ids[t]] = pumped.spectators[t];
  }
  if (round >= round_cap && round_cap == c0 + 2)
    throw std::logic_error("regularize: round budget exhausted");

  res.parts = std::move(parts);
  res.rounds = round;
  res.cluster_size = res.parts.empty() ? 0 : res.parts[0].cluster_size();

  // conclusion (e) bookkeeping at the full eps
  long long total = 0, irregular = 0;
  for (const auto& [x, y] : pattern.edges())
    for (const auto& cu : res.parts[x].clusters)
      for (const auto& cw : res.parts[y].clusters) {
        ++total;
        if (!is_regular_pair(h, cu, cw, eps, cfg.reg).regular) ++irregular;
      }
  res.pair_total = total;
  res.pair_irregular = irregular;

  long long garbage_total = 0, ground_total = 0;
  for (int i = 0; i < ell; ++i) {
    garbage_total += static_cast<long long>(res.parts[i].garbage.size());
    ground_total += static_cast<long long>(ensemble[i].size());
  }
  res.report = Json{{"rounds", res.rounds},
                    {"cluster_size", res.cluster_size},
                    {"initial_cluster_size", c0},
                    {"p1", p1},
                    {"eps_tilde", rational_to_string(eps_t)},
                    {"garbage_total", garbage_total},
                    {"ground_total", ground_total},
                    {"pairs_total", res.pair_total},
                    {"pairs_irregular", res.pair_irregular}};
  return res;
}

// ---------------------------------------------------------------------------
// edge accounting

Json UncapturedReport::to_json() const {
  return Json{{"irregular_edges", irregular_edges}, {"garbage_edges", garbage_edges},
              {"sparse_edges", sparse_edges},       {"good_edges", good_edges},
              {"irregular_bound", irregular_bound}, {"garbage_bound", garbage_bound},
              {"sparse_bound", sparse_bound},       {"total_bound", total_bound}};
}

UncapturedReport account_uncaptured(const Graph& h, const Graph& pattern,
                                    const std::vector<VertexSet>& ensemble,
                                    const std::vector<GarbagePartition>& parts,
                                    const Rat& gamma, const Rat& eps, const Rat& omega,
                                    long long k, const RegularityConfig& cfg) {
  long long n = h.n();
  if (Rat(h.max_degree()) > omega * Rat(k))
    throw std::invalid_argument("account_uncaptured: maxdeg exceeds Omega k");
  if (h.e() > k * n) throw std::invalid_argument("account_uncaptured: e(H) > k n");
  int ell = static_cast<int>(ensemble.size());
  std::vector<int> set_of(h.n(), -1);
  for (int i = 0; i < ell; ++i)
    for (Vertex v : ensemble[i]) set_of[v] = i;
  for (const auto& [x, y] : h.edges()) {
    if (set_of[x] < 0 || set_of[y] < 0 || !pattern.has_edge(set_of[x], set_of[y]))
      throw std::invalid_argument("account_uncaptured: edge not captured by a pattern edge");
  }
  for (const auto& [i, j] : pattern.edges())
    if (density(h, ensemble[i], ensemble[j]) < gamma)
      throw std::invalid_argument("account_uncaptured: pattern pair of density below gamma");

  // cluster id per vertex: -1 garbage, -2 outside
  std::vector<int> cluster_of(h.n(), -2);
  std::vector<std::pair<int, int>> cluster_key(1, {-1, -1});
  std::vector<const VertexSet*> cluster_ptr(1, nullptr);
  for (int i = 0; i < ell; ++i) {
    for (Vertex v : parts[i].garbage) cluster_of[v] = -1;
    for (int c = 0; c < static_cast<int>(parts[i].clusters.size()); ++c) {
      int id = static_cast<int>(cluster_ptr.size());
      cluster_ptr.push_back(&parts[i].clusters[c]);
      cluster_key.push_back({i, c});
      for (Vertex v : parts[i].clusters[c]) cluster_of[v] = id;
    }
  }

  UncapturedReport r;
  std::map<std::pair<int, int>, std::vector<Edge>> per_pair;
  for (const auto& [x, y] : h.edges()) {
    if (cluster_of[x] == -1 || cluster_of[y] == -1) {
      ++r.garbage_edges;
      continue;
    }
    int cx = cluster_of[x], cy = cluster_of[y];
    per_pair[{std::min(cx, cy), std::max(cx, cy)}].push_back({x, y});
  }
  Rat gamma2 = gamma * gamma;
  for (const auto& [key, es] : per_pair) {
    const VertexSet& cu = *cluster_ptr[key.first];
    const VertexSet& cw = *cluster_ptr[key.second];
    long long cnt = static_cast<long long>(es.size());
    if (!is_regular_pair(h, cu, cw, eps, cfg).regular) {
      r.irregular_edges += cnt;
    } else if (density(h, cu, cw) <= gamma2) {
      r.sparse_edges += cnt;
    } else {
      r.good_edges += cnt;
    }
  }

  Rat nk = Rat(n) * Rat(k);
  r.irregular_bound = Rat(r.irregular_edges) <= 4 * eps * nk / gamma;
  r.garbage_bound = Rat(r.garbage_edges) <= eps * omega * nk;
  r.sparse_bound = Rat(r.sparse_edges) <= gamma * nk;
  Rat total = Rat(r.irregular_edges + r.garbage_edges + r.sparse_edges);
  r.total_bound = total <= (4 * eps / gamma + eps * omega + gamma) * nk;
  return r;
}

} // namespace sparsedecomp
