#pragma once

// Brute-force reference oracles for tests. These enumerate vertex subsets
// directly over the edge lists and stay independent of the library's flow
// and cut machinery. Exponential: callers keep n small.

#include <cstdint>
#include <limits>
#include <vector>

#include "ghcut/graph.hpp"
#include "ghcut/rng.hpp"

namespace bf {

using ghcut::cap_graph;
using ghcut::cap_t;
using ghcut::simple_graph;

constexpr int kMaxBruteVertices = 22;

inline cap_t crossing(const cap_graph& g, std::uint32_t mask) {
  cap_t total = 0;
  for (const auto& e : g.edges) {
    bool a = (mask >> e.u) & 1u, b = (mask >> e.v) & 1u;
    if (a != b) total += e.cap;
  }
  return total;
}

inline std::vector<int> mask_to_side(int n, std::uint32_t mask) {
  std::vector<int> side;
  for (int v = 0; v < n; ++v)
    if ((mask >> v) & 1u) side.push_back(v);
  return side;
}

// Minimum cut value separating s from t, by enumerating all sides through s.
inline cap_t mincut(const cap_graph& g, int s, int t) {
  cap_t best = std::numeric_limits<cap_t>::max();
  std::uint32_t all = (g.n == 32) ? ~0u : ((1u << g.n) - 1u);
  for (std::uint32_t mask = 0; mask <= all; ++mask) {
    if (!((mask >> s) & 1u) || ((mask >> t) & 1u)) continue;
    best = std::min(best, crossing(g, mask));
  }
  return best;
}

// The inclusion-minimal source side among all (s,t)-mincuts: the bitwise AND
// of every minimum side containing s (sides of mincuts are closed under
// intersection).
inline std::vector<int> mincut_minimal_side(const cap_graph& g, int s, int t) {
  cap_t best = mincut(g, s, t);
  std::uint32_t inter = (g.n == 32) ? ~0u : ((1u << g.n) - 1u);
  std::uint32_t all = inter;
  for (std::uint32_t mask = 0; mask <= all; ++mask) {
    if (!((mask >> s) & 1u) || ((mask >> t) & 1u)) continue;
    if (crossing(g, mask) == best) inter &= mask;
  }
  return mask_to_side(g.n, inter);
}

inline cap_t set_mincut_value(const cap_graph& g, const std::vector<int>& a,
                              const std::vector<int>& b) {
  std::uint32_t need = 0, avoid = 0;
  for (int v : a) need |= 1u << v;
  for (int v : b) avoid |= 1u << v;
  cap_t best = std::numeric_limits<cap_t>::max();
  std::uint32_t all = (g.n == 32) ? ~0u : ((1u << g.n) - 1u);
  for (std::uint32_t mask = 0; mask <= all; ++mask) {
    if ((mask & need) != need || (mask & avoid) != 0) continue;
    best = std::min(best, crossing(g, mask));
  }
  return best;
}

inline cap_t steiner_connectivity(const cap_graph& g, const std::vector<int>& u) {
  cap_t best = std::numeric_limits<cap_t>::max();
  for (std::size_t i = 0; i < u.size(); ++i)
    for (std::size_t j = i + 1; j < u.size(); ++j)
      best = std::min(best, mincut(g, u[i], u[j]));
  return best;
}

// Deterministic G(n, p) used by module tests.
inline simple_graph random_gnp(int n, double p, std::uint64_t seed) {
  ghcut::split_rng rng(seed);
  std::vector<std::pair<int, int>> pairs;
  for (int u = 0; u < n; ++u)
    for (int v = u + 1; v < n; ++v)
      if (rng.bernoulli(p)) pairs.emplace_back(u, v);
  return ghcut::build_simple_graph(n, pairs);
}

inline simple_graph barbell(int k) {
  std::vector<std::pair<int, int>> pairs;
  for (int u = 0; u < k; ++u)
    for (int v = u + 1; v < k; ++v) {
      pairs.emplace_back(u, v);
      pairs.emplace_back(k + u, k + v);
    }
  pairs.emplace_back(k - 1, k);
  return ghcut::build_simple_graph(2 * k, pairs);
}

inline simple_graph path(int n) {
  std::vector<std::pair<int, int>> pairs;
  for (int v = 0; v + 1 < n; ++v) pairs.emplace_back(v, v + 1);
  return ghcut::build_simple_graph(n, pairs);
}

inline simple_graph cycle(int n) {
  std::vector<std::pair<int, int>> pairs;
  for (int v = 0; v < n; ++v) pairs.emplace_back(v, (v + 1) % n);
  return ghcut::build_simple_graph(n, pairs);
}

inline simple_graph complete(int n) {
  std::vector<std::pair<int, int>> pairs;
  for (int u = 0; u < n; ++u)
    for (int v = u + 1; v < n; ++v) pairs.emplace_back(u, v);
  return ghcut::build_simple_graph(n, pairs);
}

inline simple_graph star(int leaves) {
  std::vector<std::pair<int, int>> pairs;
  for (int v = 1; v <= leaves; ++v) pairs.emplace_back(0, v);
  return ghcut::build_simple_graph(leaves + 1, pairs);
}

}  // namespace bf
