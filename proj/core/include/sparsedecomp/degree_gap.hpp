#pragma once

#include "sparsedecomp/graph.hpp"
#include "sparsedecomp/lks.hpp"

namespace sparsedecomp {

// Increasing sequence Omega_1 < Omega_2 < ... given geometrically:
// Omega_{j+1} = Omega_j / ratio. Values are materialized lazily; for the
// bucket scans only the first few ever matter because the growth per step
// is enormous.
class OmegaSequence {
public:
  OmegaSequence(Rat omega1, Rat ratio, long long count);
  static OmegaSequence from_values(std::vector<Rat> values);

  long long count() const { return count_; }
  const Rat& ratio() const { return ratio_; }
  const Rat& value(long long i) const; // 1-based

  void validate_generic(const Rat& eta) const; // ratio <= eta/2, count >= floor(4/eta)+1
  void validate_lks(const Rat& eta) const;     // Omega_1 > 2, ratio <= eta^2/100,
                                               // count >= floor(100/eta^2)+2

private:
  Rat omega1_;
  Rat ratio_; // Omega_j / Omega_{j+1} in (0,1)
  long long count_;
  mutable std::vector<Rat> memo_;
  bool explicit_ = false;
};

struct GapResult {
  Graph subgraph;
  long long star_index = 0;
  std::vector<Edge> removed_edges;
};

// Bucket of deg: i in [1, R+1] with deg in [Omega_i k, Omega_{i+1} k)
// (last bucket unbounded above), 0 if deg < Omega_1 k. R+1 <= omegas.count().
long long omega_bucket(long long deg, const OmegaSequence& omegas, long long k,
                       long long top_bucket);

// True iff no degree of g lies in [Omega_{i} k, Omega_{i+1} k).
bool has_degree_gap(const Graph& g, const OmegaSequence& omegas, long long k,
                    long long star_index);

// Spanning subgraph with a degree gap at some i* <= 4/eta. When the average
// degree of g is k, also e(G') >= e(G) - eta k n.
GapResult create_gap_generic(const Graph& g, long long k, const Rat& eta,
                             const OmegaSequence& omegas);

// Edge-minimal members: result has the gap at i* <= 100/eta^2 and lies in
// LKSsmall(n, k, eta/2); the latter is guaranteed by the construction in the
// regime eta < 1/20, n > k > 20 and reported, not assumed, outside it.
GapResult create_gap_lks(const Graph& g, const LksParams& p,
                         const OmegaSequence& omegas);

} // namespace sparsedecomp
