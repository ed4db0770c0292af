#pragma once

#include <algorithm>
#include <cstdint>
#include <map>
#include <string>
#include <utility>
#include <vector>

#include "ghcut/errors.hpp"

namespace ghcut {

using cap_t = long long;

// Unweighted simple undirected graph. Edges are stored normalized (u < v),
// sorted and unique; adjacency lists are kept alongside for traversal.
struct simple_graph {
  int n = 0;
  std::vector<std::pair<int, int>> edges;
  std::vector<std::vector<int>> adj;

  int m() const { return static_cast<int>(edges.size()); }
  int degree(int v) const { return static_cast<int>(adj[v].size()); }

  bool has_edge(int u, int v) const {
    if (u > v) std::swap(u, v);
    return std::binary_search(edges.begin(), edges.end(), std::make_pair(u, v));
  }
};

inline simple_graph build_simple_graph(int n, const std::vector<std::pair<int, int>>& pairs) {
  require(n >= 0, errc::bad_parameter, "vertex count must be nonnegative");
  simple_graph g;
  g.n = n;
  g.edges.reserve(pairs.size());
  for (auto [u, v] : pairs) {
    require(u >= 0 && u < n && v >= 0 && v < n, errc::out_of_range_vertex,
            "edge endpoint out of range: (" + std::to_string(u) + "," + std::to_string(v) + ")");
    require(u != v, errc::self_loop, "self-loop at vertex " + std::to_string(u));
    if (u > v) std::swap(u, v);
    g.edges.emplace_back(u, v);
  }
  std::sort(g.edges.begin(), g.edges.end());
  auto dup = std::adjacent_find(g.edges.begin(), g.edges.end());
  require(dup == g.edges.end(), errc::duplicate_edge,
          dup == g.edges.end() ? "" : "duplicate edge (" + std::to_string(dup->first) + "," +
                                          std::to_string(dup->second) + ")");
  g.adj.assign(n, {});
  for (auto [u, v] : g.edges) {
    g.adj[u].push_back(v);
    g.adj[v].push_back(u);
  }
  return g;
}

struct cap_edge {
  int u = 0;
  int v = 0;
  cap_t cap = 0;
};

// Integer-capacitied multigraph-as-weighted-graph: parallel edges merged by
// summing capacities, self-loops dropped at construction.
struct cap_graph {
  int n = 0;
  std::vector<cap_edge> edges;
  std::vector<std::vector<std::pair<int, cap_t>>> adj;

  int m() const { return static_cast<int>(edges.size()); }

  cap_t total_capacity() const {
    cap_t s = 0;
    for (const auto& e : edges) s += e.cap;
    return s;
  }

  cap_t degree_capacity(int v) const {
    cap_t s = 0;
    for (auto [w, c] : adj[v]) {
      (void)w;
      s += c;
    }
    return s;
  }

  static cap_graph from_edges(int n, const std::vector<cap_edge>& list) {
    require(n >= 0, errc::bad_parameter, "vertex count must be nonnegative");
    std::map<std::pair<int, int>, cap_t> merged;
    for (const auto& e : list) {
      require(e.u >= 0 && e.u < n && e.v >= 0 && e.v < n, errc::out_of_range_vertex,
              "edge endpoint out of range");
      require(e.cap >= 1, errc::nonpositive_capacity, "capacity must be >= 1");
      if (e.u == e.v) continue;
      auto key = std::minmax(e.u, e.v);
      merged[{key.first, key.second}] += e.cap;
    }
    cap_graph g;
    g.n = n;
    g.edges.reserve(merged.size());
    g.adj.assign(n, {});
    for (const auto& [uv, c] : merged) {
      g.edges.push_back({uv.first, uv.second, c});
      g.adj[uv.first].emplace_back(uv.second, c);
      g.adj[uv.second].emplace_back(uv.first, c);
    }
    return g;
  }

  static cap_graph from_simple(const simple_graph& g) {
    std::vector<cap_edge> list;
    list.reserve(g.edges.size());
    for (auto [u, v] : g.edges) list.push_back({u, v, 1});
    return from_edges(g.n, list);
  }
};

// Records a contraction: every original vertex maps to a group id dense in
// [0, groups). Used to carry quotient cuts back to original-vertex cuts.
struct vertex_grouping {
  std::vector<int> group_of;
  int groups = 0;

  int source_size() const { return static_cast<int>(group_of.size()); }

  static vertex_grouping identity(int n) {
    vertex_grouping g;
    g.group_of.resize(n);
    for (int i = 0; i < n; ++i) g.group_of[i] = i;
    g.groups = n;
    return g;
  }

  // Each listed set is merged into one group; remaining vertices stay
  // singletons. Group ids are assigned densely by first occurrence when
  // scanning vertices 0..n-1, so ids are deterministic.
  static vertex_grouping merge_sets(int n, const std::vector<std::vector<int>>& sets) {
    std::vector<int> set_of(n, -1);
    for (int i = 0; i < static_cast<int>(sets.size()); ++i) {
      require(!sets[i].empty(), errc::empty_set, "cannot merge an empty set");
      for (int v : sets[i]) {
        require(v >= 0 && v < n, errc::out_of_range_vertex, "merge set member out of range");
        require(set_of[v] == -1, errc::overlapping_sets, "merge sets overlap");
        set_of[v] = i;
      }
    }
    vertex_grouping g;
    g.group_of.assign(n, -1);
    std::vector<int> set_group(sets.size(), -1);
    int next = 0;
    for (int v = 0; v < n; ++v) {
      if (set_of[v] == -1) {
        g.group_of[v] = next++;
      } else if (set_group[set_of[v]] == -1) {
        set_group[set_of[v]] = next;
        g.group_of[v] = next++;
      } else {
        g.group_of[v] = set_group[set_of[v]];
      }
    }
    g.groups = next;
    return g;
  }

  void validate(int n) const {
    require(static_cast<int>(group_of.size()) == n, errc::non_total_grouping,
            "grouping does not cover every vertex");
    std::vector<char> seen(groups, 0);
    for (int v = 0; v < n; ++v) {
      require(group_of[v] >= 0 && group_of[v] < groups, errc::non_total_grouping,
              "group id out of range");
      seen[group_of[v]] = 1;
    }
    for (int gidx = 0; gidx < groups; ++gidx)
      require(seen[gidx], errc::non_total_grouping, "group ids not dense");
  }

  // Original vertices whose group lies in `group_side`.
  std::vector<int> expand(const std::vector<int>& group_side) const {
    std::vector<char> in(groups, 0);
    for (int gidx : group_side) in[gidx] = 1;
    std::vector<int> out;
    for (int v = 0; v < source_size(); ++v)
      if (in[group_of[v]]) out.push_back(v);
    return out;
  }
};

// A cut: designated source side plus crossing capacity. `source_minimal` is
// set when the side is the canonical inclusion-minimal side (residual
// reachability from the source).
struct cut {
  std::vector<int> side;
  cap_t value = 0;
  bool source_minimal = false;

  bool contains(int v) const {
    return std::binary_search(side.begin(), side.end(), v);
  }
};

namespace detail {

inline std::vector<char> side_mask(int n, const std::vector<int>& side, bool must_be_proper) {
  require(!side.empty(), errc::empty_side, "cut side is empty");
  std::vector<char> in(n, 0);
  int count = 0;
  for (int v : side) {
    require(v >= 0 && v < n, errc::out_of_range_vertex, "side vertex out of range");
    require(!in[v], errc::bad_parameter, "side vertex listed twice");
    in[v] = 1;
    ++count;
  }
  if (must_be_proper)
    require(count < n, errc::full_side, "cut side must be a proper subset");
  return in;
}

}  // namespace detail

inline cap_t cut_value(const cap_graph& g, const std::vector<int>& side) {
  auto in = detail::side_mask(g.n, side, true);
  cap_t total = 0;
  for (const auto& e : g.edges)
    if (in[e.u] != in[e.v]) total += e.cap;
  return total;
}

inline cap_t cut_value(const simple_graph& g, const std::vector<int>& side) {
  auto in = detail::side_mask(g.n, side, true);
  cap_t total = 0;
  for (auto [u, v] : g.edges)
    if (in[u] != in[v]) ++total;
  return total;
}

inline cap_graph contract(const cap_graph& g, const vertex_grouping& grp) {
  grp.validate(g.n);
  std::map<std::pair<int, int>, cap_t> merged;
  for (const auto& e : g.edges) {
    int a = grp.group_of[e.u], b = grp.group_of[e.v];
    if (a == b) continue;
    auto key = std::minmax(a, b);
    merged[{key.first, key.second}] += e.cap;
  }
  cap_graph q;
  q.n = grp.groups;
  q.adj.assign(q.n, {});
  for (const auto& [uv, c] : merged) {
    q.edges.push_back({uv.first, uv.second, c});
    q.adj[uv.first].emplace_back(uv.second, c);
    q.adj[uv.second].emplace_back(uv.first, c);
  }
  return q;
}

inline cap_graph contract(const simple_graph& g, const vertex_grouping& grp) {
  return contract(cap_graph::from_simple(g), grp);
}

}  // namespace ghcut
