#pragma once

#include <limits>
#include <vector>

#include "ghcut/graph.hpp"

namespace ghcut {

// Counts max-flow computations. One dinic run (one s-t flow) counts once.
struct flow_counter {
  std::uint64_t calls = 0;
};

namespace detail {

class dinic {
 public:
  explicit dinic(const cap_graph& g) : n_(g.n), head_(g.n, -1) {
    arcs_.reserve(g.edges.size() * 2);
    for (const auto& e : g.edges) add_undirected(e.u, e.v, e.cap);
  }

  cap_t run(int s, int t) {
    s_ = s;
    t_ = t;
    cap_t flow = 0;
    while (bfs()) {
      it_ = head_;
      cap_t f;
      while ((f = dfs(s_, std::numeric_limits<cap_t>::max())) > 0) flow += f;
    }
    return flow;
  }

  // Vertices reachable from s in the residual network; valid after run().
  std::vector<int> residual_reachable() const {
    std::vector<char> seen(n_, 0);
    std::vector<int> stack{s_}, out;
    seen[s_] = 1;
    while (!stack.empty()) {
      int v = stack.back();
      stack.pop_back();
      out.push_back(v);
      for (int a = head_[v]; a != -1; a = arcs_[a].next) {
        if (arcs_[a].cap > 0 && !seen[arcs_[a].to]) {
          seen[arcs_[a].to] = 1;
          stack.push_back(arcs_[a].to);
        }
      }
    }
    std::sort(out.begin(), out.end());
    return out;
  }

 private:
  struct arc {
    int to;
    int next;
    cap_t cap;
  };

  void add_undirected(int u, int v, cap_t c) {
    arcs_.push_back({v, head_[u], c});
    head_[u] = static_cast<int>(arcs_.size()) - 1;
    arcs_.push_back({u, head_[v], c});
    head_[v] = static_cast<int>(arcs_.size()) - 1;
  }

  bool bfs() {
    level_.assign(n_, -1);
    queue_.clear();
    queue_.push_back(s_);
    level_[s_] = 0;
    for (std::size_t qi = 0; qi < queue_.size(); ++qi) {
      int v = queue_[qi];
      for (int a = head_[v]; a != -1; a = arcs_[a].next) {
        if (arcs_[a].cap > 0 && level_[arcs_[a].to] == -1) {
          level_[arcs_[a].to] = level_[v] + 1;
          queue_.push_back(arcs_[a].to);
        }
      }
    }
    return level_[t_] != -1;
  }

  cap_t dfs(int v, cap_t limit) {
    if (v == t_) return limit;
    for (int& a = it_[v]; a != -1; a = arcs_[a].next) {
      int w = arcs_[a].to;
      if (arcs_[a].cap <= 0 || level_[w] != level_[v] + 1) continue;
      cap_t pushed = dfs(w, std::min(limit, arcs_[a].cap));
      if (pushed > 0) {
        arcs_[a].cap -= pushed;
        arcs_[a ^ 1].cap += pushed;
        return pushed;
      }
    }
    level_[v] = -1;
    return 0;
  }

  int n_, s_ = 0, t_ = 0;
  std::vector<int> head_, level_, it_;
  std::vector<int> queue_;
  std::vector<arc> arcs_;
};

inline void validate_st(const cap_graph& g, int s, int t) {
  require(s >= 0 && s < g.n && t >= 0 && t < g.n, errc::out_of_range_vertex,
          "flow endpoint out of range");
  require(s != t, errc::same_endpoints, "source and sink must differ");
}

}  // namespace detail

inline cap_t max_flow_value(const cap_graph& g, int s, int t, flow_counter* fc = nullptr) {
  detail::validate_st(g, s, t);
  detail::dinic d(g);
  cap_t f = d.run(s, t);
  if (fc) ++fc->calls;
  return f;
}

// The unique inclusion-minimal source side over all (s,t)-mincuts: vertices
// reachable from s in the residual network of any max flow.
inline cut st_mincut_minimal(const cap_graph& g, int s, int t, flow_counter* fc = nullptr) {
  detail::validate_st(g, s, t);
  detail::dinic d(g);
  cut c;
  c.value = d.run(s, t);
  c.side = d.residual_reachable();
  c.source_minimal = true;
  if (fc) ++fc->calls;
  return c;
}

// Minimum cut separating vertex set A from vertex set B, computed by
// contracting each set to a single endpoint; the returned side is the
// A-minimal side expanded back to original vertices.
inline cut set_mincut(const cap_graph& g, const std::vector<int>& a, const std::vector<int>& b,
                      flow_counter* fc = nullptr) {
  require(!a.empty() && !b.empty(), errc::empty_set, "set_mincut sets must be nonempty");
  auto grp = vertex_grouping::merge_sets(g.n, {a, b});
  cap_graph q = contract(g, grp);
  int qa = grp.group_of[a.front()];
  int qb = grp.group_of[b.front()];
  cut qc = st_mincut_minimal(q, qa, qb, fc);
  cut c;
  c.value = qc.value;
  c.side = grp.expand(qc.side);
  c.source_minimal = true;
  return c;
}

}  // namespace ghcut
