#include "sparsedecomp/degree_gap.hpp"

#include <algorithm>
#include <stdexcept>

namespace sparsedecomp {

OmegaSequence::OmegaSequence(Rat omega1, Rat ratio, long long count)
    : omega1_(std::move(omega1)), ratio_(std::move(ratio)), count_(count) {
  if (count_ < 1) throw std::invalid_argument("omega sequence needs >= 1 entries");
  if (omega1_ <= 0) throw std::invalid_argument("omega sequence must be positive");
  if (ratio_ <= 0 || ratio_ >= 1)
    throw std::invalid_argument("omega ratio must lie in (0,1)");
  memo_.push_back(omega1_);
}

OmegaSequence OmegaSequence::from_values(std::vector<Rat> values) {
  if (values.empty()) throw std::invalid_argument("omega sequence needs >= 1 entries");
  Rat worst(0);
  for (size_t i = 0; i + 1 < values.size(); ++i) {
    if (values[i] <= 0 || values[i] >= values[i + 1])
      throw std::invalid_argument("omega sequence must be increasing and positive");
    worst = std::max(worst, values[i] / values[i + 1]);
  }
  OmegaSequence s(values[0], values.size() > 1 ? worst : Rat(1, 2),
                  static_cast<long long>(values.size()));
  s.memo_ = std::move(values);
  s.explicit_ = true;
  return s;
}

const Rat& OmegaSequence::value(long long i) const {
  if (i < 1 || i > count_) throw std::out_of_range("omega index out of range");
  while (static_cast<long long>(memo_.size()) < i)
    memo_.push_back(memo_.back() / ratio_);
  return memo_[static_cast<size_t>(i - 1)];
}

void OmegaSequence::validate_generic(const Rat& eta) const {
  if (ratio_ > eta / 2)
    throw std::invalid_argument("omega ratio must be <= eta/2");
  long long need = floor_ll(Rat(4) / eta) + 1;
  if (count_ < need)
    throw std::invalid_argument("omega sequence too short: need >= floor(4/eta)+1 entries");
}

void OmegaSequence::validate_lks(const Rat& eta) const {
  if (value(1) <= 2) throw std::invalid_argument("omega_1 must exceed 2");
  if (ratio_ > eta * eta / 100)
    throw std::invalid_argument("omega ratio must be <= eta^2/100");
  long long need = floor_ll(Rat(100) / (eta * eta)) + 2;
  if (count_ < need)
    throw std::invalid_argument("omega sequence too short: need >= floor(100/eta^2)+2 entries");
}

long long omega_bucket(long long deg, const OmegaSequence& omegas, long long k,
                       long long top_bucket) {
  Rat d(deg);
  if (d < omegas.value(1) * Rat(k)) return 0;
  long long i = 1;
  while (i < top_bucket && d >= omegas.value(i + 1) * Rat(k)) ++i;
  return i;
}

bool has_degree_gap(const Graph& g, const OmegaSequence& omegas, long long k,
                    long long star_index) {
  Rat lo = omegas.value(star_index) * Rat(k);
  Rat hi = omegas.value(star_index + 1) * Rat(k);
  for (int v = 0; v < g.n(); ++v) {
    Rat d(g.degree(v));
    if (d >= lo && d < hi) return false;
  }
  return true;
}

namespace {

struct MutableGraph {
  int n;
  std::vector<std::vector<char>> adj; // adjacency matrix, n small here
  std::vector<long long> deg;
  std::vector<Edge> removed;

  explicit MutableGraph(const Graph& g)
      : n(g.n()), adj(g.n(), std::vector<char>(g.n(), 0)), deg(g.n(), 0) {
    for (const auto& [u, v] : g.edges()) {
      adj[u][v] = adj[v][u] = 1;
      ++deg[u];
      ++deg[v];
    }
  }

  void remove_edge(int u, int v) {
    adj[u][v] = adj[v][u] = 0;
    --deg[u];
    --deg[v];
    removed.push_back(make_edge(u, v));
  }

  void remove_all_at(int v) {
    for (int w = 0; w < n; ++w)
      if (adj[v][w]) remove_edge(std::min(v, w), std::max(v, w));
  }

  Graph to_graph() const {
    std::vector<Edge> es;
    for (int u = 0; u < n; ++u)
      for (int v = u + 1; v < n; ++v)
        if (adj[u][v]) es.emplace_back(u, v);
    return Graph::from_edges(n, std::move(es));
  }
};

// index in [1, R] minimizing the degree sum over X_i union X_{i+1};
// ties go to the smallest index.
long long pick_star_index(const std::vector<long long>& deg,
                          const OmegaSequence& omegas, long long k, long long R) {
  // degree sums per bucket; buckets above the max degree are all empty
  long long top = R + 1;
  std::vector<long long> bucket_sum(static_cast<size_t>(top) + 1, 0);
  for (long long d : deg)
    bucket_sum[static_cast<size_t>(omega_bucket(d, omegas, k, top))] += d;
  long long best = 1;
  long long best_sum = bucket_sum[1] + bucket_sum[2];
  for (long long i = 2; i <= R; ++i) {
    long long s = bucket_sum[static_cast<size_t>(i)] +
                  (i + 1 <= top ? bucket_sum[static_cast<size_t>(i + 1)] : 0);
    if (s < best_sum) {
      best = i;
      best_sum = s;
    }
    if (best_sum == 0) break;
  }
  return best;
}

} // namespace

GapResult create_gap_generic(const Graph& g, long long k, const Rat& eta,
                             const OmegaSequence& omegas) {
  if (eta <= 0 || eta >= 1) throw std::invalid_argument("eta in (0,1) required");
  if (k < 1) throw std::invalid_argument("k >= 1 required");
  omegas.validate_generic(eta);
  long long R = floor_ll(Rat(4) / eta);

  MutableGraph mg(g);
  long long star = pick_star_index(mg.deg, omegas, k, R);
  long long top = R + 1;

  // delete every edge incident with X_{i*}(G) or X_{i*+1}(G); membership is
  // decided on the original degrees
  std::vector<char> in_e0(mg.n, 0);
  for (int v = 0; v < mg.n; ++v) {
    long long b = omega_bucket(mg.deg[v], omegas, k, top);
    in_e0[v] = (b == star || b == star + 1);
  }
  for (int v = 0; v < mg.n; ++v)
    if (in_e0[v]) mg.remove_all_at(v);
  // vertices re-entering bucket i* lose all their edges
  for (;;) {
    int hit = -1;
    for (int v = 0; v < mg.n && hit < 0; ++v)
      if (omega_bucket(mg.deg[v], omegas, k, top) == star) hit = v;
    if (hit < 0) break;
    mg.remove_all_at(hit);
  }
  return {mg.to_graph(), star, mg.removed};
}

GapResult create_gap_lks(const Graph& g, const LksParams& p,
                         const OmegaSequence& omegas) {
  p.validate();
  omegas.validate_lks(p.eta);
  if (!is_lks_min(g, p))
    throw std::invalid_argument("create_gap_lks: input not in LKSmin");
  long long k = p.k;
  long long R = floor_ll(Rat(100) / (p.eta * p.eta));
  long long top = R + 1;

  MutableGraph mg(g);
  long long star = pick_star_index(mg.deg, omegas, k, R);

  std::vector<char> in_e0(mg.n, 0);
  for (int v = 0; v < mg.n; ++v) {
    long long b = omega_bucket(mg.deg[v], omegas, k, top);
    in_e0[v] = (b == star || b == star + 1);
  }
  for (int v = 0; v < mg.n; ++v)
    if (in_e0[v]) mg.remove_all_at(v);

  // (T1): one edge at a vertex sitting in bucket i*; (T2): an edge from
  // S_{eta/2,k} to the buckets above i*. (T1) is exhausted before each (T2).
  Rat half_thr = (Rat(1) + p.eta / 2) * Rat(k);
  auto t1_step = [&]() -> bool {
    for (int v = 0; v < mg.n; ++v) {
      if (omega_bucket(mg.deg[v], omegas, k, top) != star) continue;
      for (int w = 0; w < mg.n; ++w)
        if (mg.adj[v][w]) {
          mg.remove_edge(std::min(v, w), std::max(v, w));
          return true;
        }
    }
    return false;
  };
  auto t2_step = [&]() -> bool {
    for (int u = 0; u < mg.n; ++u)
      for (int v = u + 1; v < mg.n; ++v) {
        if (!mg.adj[u][v]) continue;
        bool u_small = Rat(mg.deg[u]) < half_thr;
        bool v_small = Rat(mg.deg[v]) < half_thr;
        bool u_high = omega_bucket(mg.deg[u], omegas, k, top) > star;
        bool v_high = omega_bucket(mg.deg[v], omegas, k, top) > star;
        if ((u_small && v_high) || (v_small && u_high)) {
          mg.remove_edge(u, v);
          return true;
        }
      }
    return false;
  };
  for (;;) {
    if (t1_step()) continue;
    if (!t2_step()) break;
  }

  // final cleaning: S_{eta/2,k}-incident edges whose other end does not have
  // degree exactly ceil((1+eta/2)k)
  long long exact = ceil_ll(half_thr);
  for (;;) {
    bool removed = false;
    for (int u = 0; u < mg.n && !removed; ++u)
      for (int v = u + 1; v < mg.n && !removed; ++v) {
        if (!mg.adj[u][v]) continue;
        bool u_small = Rat(mg.deg[u]) < half_thr;
        bool v_small = Rat(mg.deg[v]) < half_thr;
        if ((u_small && mg.deg[v] != exact) || (v_small && mg.deg[u] != exact)) {
          mg.remove_edge(u, v);
          removed = true;
        }
      }
    if (!removed) break;
  }
  return {mg.to_graph(), star, mg.removed};
}

} // namespace sparsedecomp
