#pragma once

#include <numeric>
#include <vector>

#include "ghcut/graph.hpp"

namespace ghcut {

namespace detail {

class union_find {
 public:
  explicit union_find(int n) : parent_(n) {
    std::iota(parent_.begin(), parent_.end(), 0);
  }
  int find(int v) {
    while (parent_[v] != v) v = parent_[v] = parent_[parent_[v]];
    return v;
  }
  bool unite(int a, int b) {
    a = find(a);
    b = find(b);
    if (a == b) return false;
    parent_[b] = a;
    return true;
  }

 private:
  std::vector<int> parent_;
};

}  // namespace detail

// Nagamochi-Ibaraki style k-connectivity certificate: the union of k maximal
// spanning forests taken in deterministic edge order. The result is a
// subgraph with at most min{m, k(n-1)} edges satisfying
// |boundary_H(S)| >= min{|boundary_G(S)|, k} for every side S.
inline simple_graph sparsify(const simple_graph& g, int k) {
  require(k >= 1, errc::bad_parameter, "certificate parameter k must be >= 1");
  std::vector<char> taken(g.edges.size(), 0);
  std::size_t remaining = g.edges.size();
  std::vector<std::pair<int, int>> kept;
  for (int round = 0; round < k && remaining > 0; ++round) {
    detail::union_find uf(g.n);
    for (std::size_t i = 0; i < g.edges.size(); ++i) {
      if (taken[i]) continue;
      if (uf.unite(g.edges[i].first, g.edges[i].second)) {
        taken[i] = 1;
        --remaining;
        kept.push_back(g.edges[i]);
      }
    }
  }
  std::sort(kept.begin(), kept.end());
  auto h = build_simple_graph(g.n, kept);
  ensure(h.m() <= std::min<long long>(g.m(), static_cast<long long>(k) * std::max(0, g.n - 1)),
         "certificate exceeded its edge budget");
  return h;
}

}  // namespace ghcut
