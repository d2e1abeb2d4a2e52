#include "sparsedecomp/trees.hpp"

#include <algorithm>
#include <deque>
#include <stdexcept>
#include <unordered_set>

namespace sparsedecomp {

std::vector<std::vector<int>> RootedTree::children() const {
  std::vector<std::vector<int>> ch(order());
  for (int v = 0; v < order(); ++v)
    if (parent[v] >= 0) ch[parent[v]].push_back(v);
  return ch;
}

std::vector<int> RootedTree::bfs_order() const {
  auto ch = children();
  std::vector<int> order_out;
  std::deque<int> q{root};
  while (!q.empty()) {
    int v = q.front();
    q.pop_front();
    order_out.push_back(v);
    for (int c : ch[v]) q.push_back(c);
  }
  return order_out;
}

std::vector<int> RootedTree::depths() const {
  std::vector<int> d(order(), 0);
  for (int v : bfs_order())
    if (parent[v] >= 0) d[v] = d[parent[v]] + 1;
  return d;
}

int RootedTree::max_degree() const {
  std::vector<int> deg(order(), 0);
  for (int v = 0; v < order(); ++v)
    if (parent[v] >= 0) {
      ++deg[v];
      ++deg[parent[v]];
    }
  return deg.empty() ? 0 : *std::max_element(deg.begin(), deg.end());
}

Graph RootedTree::as_graph() const {
  std::vector<Edge> es;
  for (int v = 0; v < order(); ++v)
    if (parent[v] >= 0) es.push_back(make_edge(v, parent[v]));
  return Graph::from_edges(order(), std::move(es));
}

void RootedTree::validate() const {
  int k = order();
  if (k == 0) throw std::invalid_argument("empty tree");
  if (root < 0 || root >= k || parent[root] != -1)
    throw std::invalid_argument("bad root");
  int seen = 0;
  for (int v : bfs_order()) {
    (void)v;
    ++seen;
  }
  if (seen != k) throw std::invalid_argument("parent array is not a tree");
}

RootedTree RootedTree::from_parent(std::vector<int> parent, int root) {
  RootedTree t;
  t.parent = std::move(parent);
  t.root = root;
  t.validate();
  return t;
}

RootedTree RootedTree::path(int k) {
  std::vector<int> p(k);
  p[0] = -1;
  for (int v = 1; v < k; ++v) p[v] = v - 1;
  return from_parent(std::move(p), 0);
}

RootedTree RootedTree::star(int k) {
  std::vector<int> p(k, 0);
  p[0] = -1;
  return from_parent(std::move(p), 0);
}

RootedTree RootedTree::complete_binary(int k) {
  std::vector<int> p(k);
  p[0] = -1;
  for (int v = 1; v < k; ++v) p[v] = (v - 1) / 2;
  return from_parent(std::move(p), 0);
}

RootedTree RootedTree::from_pruefer(const std::vector<int>& code) {
  int k = static_cast<int>(code.size()) + 2;
  std::vector<int> deg(k, 1);
  for (int x : code) {
    if (x < 0 || x >= k) throw std::invalid_argument("bad Pruefer symbol");
    ++deg[x];
  }
  std::vector<Edge> es;
  es.reserve(k - 1);
  // standard decode with a moving pointer instead of a heap
  int ptr = 0;
  while (deg[ptr] != 1) ++ptr;
  int leaf = ptr;
  for (int x : code) {
    es.push_back(make_edge(leaf, x));
    if (--deg[x] == 1 && x < ptr) {
      leaf = x;
    } else {
      ++ptr;
      while (deg[ptr] != 1) ++ptr;
      leaf = ptr;
    }
  }
  es.push_back(make_edge(leaf, k - 1));
  // orient from vertex 0 by BFS
  Graph g = Graph::from_edges(k, std::move(es));
  std::vector<int> par(k, -2);
  std::deque<int> q{0};
  par[0] = -1;
  while (!q.empty()) {
    int v = q.front();
    q.pop_front();
    for (int w : g.neighbors(v))
      if (par[w] == -2) {
        par[w] = v;
        q.push_back(w);
      }
  }
  return from_parent(std::move(par), 0);
}

namespace {

// AHU encoding of the subtree at v in the undirected tree g, avoiding "from".
std::string ahu_encode(const Graph& g, int v, int from) {
  std::vector<std::string> subs;
  for (int w : g.neighbors(v))
    if (w != from) subs.push_back(ahu_encode(g, w, v));
  std::sort(subs.begin(), subs.end());
  std::string out = "(";
  for (const auto& s : subs) out += s;
  out += ")";
  return out;
}

std::vector<int> tree_centers(const Graph& g) {
  int k = g.n();
  if (k == 1) return {0};
  std::vector<int> deg(k), layer;
  std::deque<int> q;
  for (int v = 0; v < k; ++v) {
    deg[v] = g.degree(v);
    if (deg[v] <= 1) q.push_back(v);
  }
  int remaining = k;
  std::vector<int> cur(q.begin(), q.end());
  while (remaining > 2) {
    std::vector<int> next;
    remaining -= static_cast<int>(cur.size());
    for (int v : cur)
      for (int w : g.neighbors(v))
        if (--deg[w] == 1) next.push_back(w);
    cur = std::move(next);
  }
  std::sort(cur.begin(), cur.end());
  return cur;
}

} // namespace

std::string tree_canonical_form(const RootedTree& t) {
  Graph g = t.as_graph();
  std::string best;
  for (int c : tree_centers(g)) {
    std::string enc = ahu_encode(g, c, -1);
    if (best.empty() || enc < best) best = enc;
  }
  return best;
}

int tree_independence_number(const RootedTree& t) {
  auto order = t.bfs_order();
  int k = t.order();
  std::vector<int> incl(k, 1), excl(k, 0);
  for (auto it = order.rbegin(); it != order.rend(); ++it) {
    int v = *it;
    if (t.parent[v] >= 0) {
      int p = t.parent[v];
      excl[p] += std::max(incl[v], excl[v]);
      incl[p] += excl[v];
    }
  }
  return std::max(incl[t.root], excl[t.root]);
}

namespace {

// Packed AHU code of a subtree: "1 <sorted child codes> 0" as bits, at most
// 2k bits for order-k trees, so a u32 suffices for k <= 16. Children are
// ordered by (length, value), a total order, which keeps the encoding
// canonical for rooted trees; free trees take the min over the 1-2 centers.
struct FastTreeScratch {
  int k;
  int adj[10][10];
  int adv_deg[10];
  int deg[10];

  std::pair<std::uint32_t, int> encode(int v, int from) const {
    std::uint32_t codes[10];
    int lens[10];
    int cnt = 0;
    for (int i = 0; i < adv_deg[v]; ++i) {
      int w = adj[v][i];
      if (w == from) continue;
      auto [c, l] = encode(w, v);
      codes[cnt] = c;
      lens[cnt] = l;
      ++cnt;
    }
    // insertion sort by (len, value)
    for (int i = 1; i < cnt; ++i) {
      std::uint32_t c = codes[i];
      int l = lens[i];
      int j = i - 1;
      while (j >= 0 && (lens[j] > l || (lens[j] == l && codes[j] > c))) {
        codes[j + 1] = codes[j];
        lens[j + 1] = lens[j];
        --j;
      }
      codes[j + 1] = c;
      lens[j + 1] = l;
    }
    std::uint32_t out = 1; // open bit
    int len = 1;
    for (int i = 0; i < cnt; ++i) {
      out = (out << lens[i]) | codes[i];
      len += lens[i];
    }
    out <<= 1; // close bit (0)
    ++len;
    return {out, len};
  }

  std::uint32_t canonical() {
    // centers by leaf peeling
    int d[10];
    int cur[10], nxt[10];
    int ncur = 0;
    for (int v = 0; v < k; ++v) {
      d[v] = deg[v];
      if (d[v] <= 1) cur[ncur++] = v;
    }
    int remaining = k;
    while (remaining > 2) {
      remaining -= ncur;
      int nn = 0;
      for (int i = 0; i < ncur; ++i) {
        int v = cur[i];
        for (int j = 0; j < adv_deg[v]; ++j) {
          int w = adj[v][j];
          if (--d[w] == 1) nxt[nn++] = w;
        }
      }
      std::copy(nxt, nxt + nn, cur);
      ncur = nn;
    }
    std::uint32_t best = 0xffffffffu;
    for (int i = 0; i < ncur; ++i)
      best = std::min(best, encode(cur[i], -1).first);
    return best;
  }
};

} // namespace

std::vector<RootedTree> all_trees(int k) {
  if (k > 10) throw std::invalid_argument("all_trees capped at k <= 10");
  if (k < 1) throw std::invalid_argument("all_trees needs k >= 1");
  if (k == 1) return {RootedTree::from_parent({-1}, 0)};
  if (k == 2) return {RootedTree::path(2)};

  std::vector<RootedTree> out;
  std::unordered_set<std::uint32_t> seen;
  std::vector<int> code(k - 2, 0);
  FastTreeScratch scratch;
  scratch.k = k;
  int eu[10], ev[10];
  int degbuf[10];
  for (;;) {
    // inline Pruefer decode into flat edge arrays
    for (int v = 0; v < k; ++v) degbuf[v] = 1;
    for (int x : code) ++degbuf[x];
    int ptr = 0;
    while (degbuf[ptr] != 1) ++ptr;
    int leaf = ptr;
    int ne = 0;
    for (int x : code) {
      eu[ne] = leaf;
      ev[ne] = x;
      ++ne;
      if (--degbuf[x] == 1 && x < ptr) {
        leaf = x;
      } else {
        ++ptr;
        while (degbuf[ptr] != 1) ++ptr;
        leaf = ptr;
      }
    }
    eu[ne] = leaf;
    ev[ne] = k - 1;
    ++ne;

    for (int v = 0; v < k; ++v) scratch.adv_deg[v] = 0;
    for (int i = 0; i < ne; ++i) {
      scratch.adj[eu[i]][scratch.adv_deg[eu[i]]++] = ev[i];
      scratch.adj[ev[i]][scratch.adv_deg[ev[i]]++] = eu[i];
    }
    for (int v = 0; v < k; ++v) scratch.deg[v] = scratch.adv_deg[v];

    if (seen.insert(scratch.canonical()).second)
      out.push_back(RootedTree::from_pruefer(code));

    int pos = k - 3;
    while (pos >= 0 && code[pos] == k - 1) code[pos--] = 0;
    if (pos < 0) break;
    ++code[pos];
  }
  return out;
}

} // namespace sparsedecomp
