#pragma once

#include <chrono>
#include <cmath>

#include "ghcut/certificate.hpp"
#include "ghcut/refine.hpp"

namespace ghcut {

struct pipeline_config {
  std::uint64_t seed = 0;
  double rounds_constant = 4.0;
  bool confirm_oracle = true;
  int retry_cap = 20;
  int jobs = 1;
  decomposer_options decomp{};
};

struct cluster_record {
  int level_d = 0;
  int cluster_index = 0;
  int x_size = 0;
  double phi = 0.0;
  std::uint64_t flows = 0;
  std::uint64_t confirm_flows = 0;
  std::vector<ssm_record> ssm;
};

struct aux_budget_record {
  int n = 0;
  long long m_h = 0;
  int d = 0;
  long long sum_n = 0;
  long long sum_m = 0;
};

struct pipeline_stats {
  std::uint64_t maxflow_calls = 0;
  int max_recursion_depth = 0;
  int fallback_splits = 0;
  int retries = 0;
  std::uint64_t confirm_catches = 0;
  std::vector<cluster_record> clusters;
  std::vector<aux_budget_record> aux_budgets;
  std::vector<int> levels;
  double wall_ms = 0.0;
};

// Partial tree capturing every mincut of size at most c, via the reduction
// with the brute-force verification oracle.
inline partial_tree small_conn(const simple_graph& g, int c, split_rng rng,
                               pt_stats* stats = nullptr, flow_counter* fc = nullptr) {
  require(c >= 1, errc::bad_parameter, "capture threshold must be >= 1");
  require(g.n >= 1, errc::bad_parameter, "graph must have at least one vertex");
  cap_graph cg = cap_graph::from_simple(g);
  std::vector<int> all(g.n);
  for (int v = 0; v < g.n; ++v) all[v] = v;
  bruteforce_ssc_oracle oracle(c, fc);
  return build_partial_tree(cg, all, c, oracle, rng, {}, stats, fc);
}

// The full pipeline: bootstrap with a small-connectivity partial tree, then
// double d while sparsifying, partitioning into well-linked clusters, and
// refining cluster by cluster. The doubling stops at the first level with
// 2d >= n-1, which covers every possible mincut of a simple graph.
inline partial_tree gh_tree_fast(const simple_graph& g, int c, const pipeline_config& cfg = {},
                                 pipeline_stats* stats = nullptr) {
  require(g.n >= 1, errc::bad_parameter, "graph must have at least one vertex");
  auto t0 = std::chrono::steady_clock::now();
  flow_counter fc;
  split_rng root(cfg.seed);

  if (c <= 0) c = static_cast<int>(std::ceil(std::sqrt(static_cast<double>(g.n))));
  partial_tree pt;
  if (g.n == 1) {
    pt = partial_tree::trivial(1, 0);
  } else {
    pt_stats sc_stats;
    pt = small_conn(g, c, root.split(0), &sc_stats, &fc);
    if (stats) {
      stats->max_recursion_depth = std::max(stats->max_recursion_depth, sc_stats.max_depth);
      stats->fallback_splits += sc_stats.fallback_splits;
      stats->retries += sc_stats.retries;
    }

    int level = 0;
    for (cap_t d = c;; d *= 2, ++level) {
      if (stats) stats->levels.push_back(static_cast<int>(d));
      simple_graph h = sparsify(g, static_cast<int>(3 * d));
      decomposer_options dopt = cfg.decomp;
      dopt.seed = root.split(0x100 + level).seed();
      auto clusters = partition_high_degree(h, static_cast<int>(d), dopt);
      int idx = 0;
      for (const auto& cluster : clusters) {
        refine_options ropt;
        ropt.rounds_constant = cfg.rounds_constant;
        ropt.confirm_oracle = cfg.confirm_oracle;
        ropt.retry_cap = cfg.retry_cap;
        ropt.jobs = cfg.jobs;
        ropt.seed = root.split(0x200 + level).split(static_cast<std::uint64_t>(idx)).seed();
        refine_stats rst;
        pt = refine(g, h, pt, cluster, static_cast<int>(d), ropt, &rst, &fc);
        if (stats) {
          cluster_record rec;
          rec.level_d = static_cast<int>(d);
          rec.cluster_index = idx;
          rec.x_size = static_cast<int>(cluster.members.size());
          rec.phi = cluster.phi;
          rec.confirm_flows = rst.confirm_flows;
          rec.ssm = rst.ssm;
          for (const auto& r : rst.ssm) rec.flows += r.flows;
          stats->clusters.push_back(std::move(rec));
          aux_budget_record ab;
          ab.n = h.n;
          ab.m_h = h.m();
          ab.d = static_cast<int>(d);
          ab.sum_n = rst.aux_n_sum;
          ab.sum_m = rst.aux_m_sum;
          stats->aux_budgets.push_back(ab);
          stats->max_recursion_depth = std::max(stats->max_recursion_depth, rst.pt.max_depth);
          stats->fallback_splits += rst.pt.fallback_splits;
          stats->retries += rst.pt.retries;
          stats->confirm_catches += rst.confirm_catches;
        }
        ++idx;
      }
      if (2 * d >= static_cast<cap_t>(g.n) - 1) break;
    }
  }

  ensure(static_cast<int>(pt.terminals.size()) == g.n,
         "pipeline finished without separating every vertex pair");
  if (stats) {
    stats->maxflow_calls = fc.calls;
    stats->wall_ms = std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - t0)
                         .count();
  }
  return pt;
}

// Classical Gomory-Hu: n-1 split steps, each one max-flow on the
// tree-component-contracted graph. Disconnected inputs come out joined by
// zero-weight edges.
inline partial_tree gh_tree_classic(const cap_graph& g, flow_counter* fc = nullptr) {
  require(g.n >= 1, errc::bad_parameter, "graph must have at least one vertex");
  partial_tree pt = partial_tree::trivial(g.n, 0);
  for (;;) {
    int center = -1, other = -1;
    for (int t : pt.terminals) {
      for (int v = 0; v < g.n; ++v) {
        if (pt.part_of[v] == t && v != t) {
          center = t;
          other = v;
          break;
        }
      }
      if (center != -1) break;
    }
    if (center == -1) break;
    split_part(pt, g, center, other, -1, fc);
  }
  validate_partial_tree(pt, g.n);
  ensure(static_cast<int>(pt.terminals.size()) == g.n, "classical baseline left a part unsplit");
  return pt;
}

inline partial_tree gh_tree_classic(const simple_graph& g, flow_counter* fc = nullptr) {
  return gh_tree_classic(cap_graph::from_simple(g), fc);
}

// Minimum edge weight on the unique u-v tree path.
inline cap_t query_mincut(const partial_tree& t, int u, int v) {
  return path_min_weight(t, u, v);
}

struct verify_report {
  struct mismatch {
    int u = 0;
    int v = 0;
    cap_t tree_value = 0;
    cap_t graph_value = 0;
  };
  std::vector<mismatch> mismatches;
  std::uint64_t pairs_checked = 0;
  bool pass() const { return mismatches.empty(); }
};

// Compare every pair's tree path-min against an exact max-flow.
inline verify_report verify_gh_tree(const simple_graph& g, const partial_tree& t,
                                    flow_counter* fc = nullptr) {
  require(static_cast<int>(t.terminals.size()) == g.n, errc::non_spanning_tree,
          "tree must span every vertex");
  validate_partial_tree(t, g.n);
  cap_graph cg = cap_graph::from_simple(g);

  // path-min table via one tree DFS per source
  std::vector<std::vector<std::pair<int, cap_t>>> adj(g.n);
  for (const auto& e : t.edges) {
    adj[e.u].emplace_back(e.v, e.w);
    adj[e.v].emplace_back(e.u, e.w);
  }
  constexpr cap_t kInf = std::numeric_limits<cap_t>::max();
  verify_report report;
  std::vector<cap_t> best(g.n);
  for (int u = 0; u < g.n; ++u) {
    std::fill(best.begin(), best.end(), cap_t{-1});
    best[u] = kInf;
    std::vector<int> stack{u};
    while (!stack.empty()) {
      int w = stack.back();
      stack.pop_back();
      for (auto [z, wt] : adj[w]) {
        if (best[z] != -1) continue;
        best[z] = std::min(best[w], wt);
        stack.push_back(z);
      }
    }
    for (int v = u + 1; v < g.n; ++v) {
      cap_t truth = max_flow_value(cg, u, v, fc);
      ++report.pairs_checked;
      if (best[v] != truth) report.mismatches.push_back({u, v, best[v], truth});
    }
  }
  return report;
}

}  // namespace ghcut
