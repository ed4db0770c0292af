#pragma once

#include <future>
#include <map>
#include <vector>

#include "ghcut/partial_tree.hpp"
#include "ghcut/sstmincut.hpp"
#include "ghcut/wellinked.hpp"

namespace ghcut {

struct ssm_record {
  int graph_n = 0;
  int rounds = 0;
  int tmax = 0;
  std::uint64_t flows = 0;
  double phi = 0.0;
};

struct refine_options {
  double rounds_constant = 4.0;
  bool confirm_oracle = true;  // confirm accepted oracle claims with one exact flow
  int retry_cap = 20;
  int jobs = 1;
  std::uint64_t seed = 0;
};

struct refine_stats {
  std::vector<ssm_record> ssm;
  std::uint64_t confirm_flows = 0;
  std::uint64_t confirm_catches = 0;  // accepted-by-table claims the exact flow refuted
  long long aux_n_sum = 0;
  long long aux_m_sum = 0;
  int parts_refined = 0;
  pt_stats pt;

  void merge(const refine_stats& other) {
    ssm.insert(ssm.end(), other.ssm.begin(), other.ssm.end());
    confirm_flows += other.confirm_flows;
    confirm_catches += other.confirm_catches;
    aux_n_sum += other.aux_n_sum;
    aux_m_sum += other.aux_m_sum;
    parts_refined += other.parts_refined;
    pt.max_depth = std::max(pt.max_depth, other.pt.max_depth);
    pt.retries += other.pt.retries;
    pt.fallback_splits += other.pt.fallback_splits;
    pt.nodes += other.pt.nodes;
  }
};

// k-SSC verification backed by sampled single-source mincut values. Tables
// are cached per (graph instance, source). Accepted claims are confirmed
// with one exact capped flow apiece (cached per vertex), so a `true` answer
// is always correct; a stale table can only cause conservative rejections,
// which cost retries rather than correctness.
class sstmincut_ssc_oracle : public ssc_oracle {
 public:
  sstmincut_ssc_oracle(int d, double phi, const refine_options& opt, refine_stats* stats,
                       flow_counter* fc)
      : d_(d), phi_(phi), opt_(opt), stats_(stats), fc_(fc) {}

  cap_t cap() const override { return 2 * static_cast<cap_t>(d_); }

  std::vector<char> verify(const cap_graph& g, std::uint64_t instance,
                           const std::vector<int>& terminals, int s,
                           const std::vector<std::pair<int, cap_t>>& claims) override {
    auto key = std::make_pair(instance, s);
    auto it = tables_.find(key);
    if (it == tables_.end()) {
      std::uint64_t seed = split_rng(opt_.seed).split(instance).split(static_cast<std::uint64_t>(s)).seed();
      auto cfg = make_sampler_config(g.n, phi_, opt_.rounds_constant, seed);
      auto res = single_source_mincut(g, terminals, d_, phi_, s, cfg, fc_);
      if (stats_)
        stats_->ssm.push_back(
            {g.n, cfg.rounds, res.max_terminal_count, res.maxflow_calls, phi_});
      it = tables_.emplace(key, std::move(res)).first;
    }
    const single_source_result& table = it->second;

    std::vector<char> out;
    out.reserve(claims.size());
    for (auto [v, lam] : claims) {
      cap_t val = table.value_of(v);
      if (lam != val) {
        out.push_back(0);
        continue;
      }
      if (!opt_.confirm_oracle) {
        out.push_back(1);
        continue;
      }
      auto ckey = std::make_tuple(instance, s, v);
      auto cit = confirmed_.find(ckey);
      cap_t exact;
      if (cit != confirmed_.end()) {
        exact = cit->second;
      } else {
        exact = std::min(max_flow_value(g, s, v, fc_), cap());
        confirmed_.emplace(ckey, exact);
        if (stats_) ++stats_->confirm_flows;
      }
      if (lam != exact && stats_) ++stats_->confirm_catches;
      out.push_back(lam == exact);
    }
    return out;
  }

 private:
  int d_;
  double phi_;
  refine_options opt_;
  refine_stats* stats_;
  flow_counter* fc_;
  std::map<std::pair<std::uint64_t, int>, single_source_result> tables_;
  std::map<std::tuple<std::uint64_t, int, int>, cap_t> confirmed_;
};

// ---------------------------------------------------------------------------
// Sparsified auxiliary graphs
// ---------------------------------------------------------------------------

// H_i: the certificate with every tree component hanging off u_i contracted
// to one vertex. m_edges counts capacity (the multigraph edge count).
struct auxiliary_graph {
  cap_graph h;
  int center = -1;    // u_i, original id
  int center_q = -1;  // u_i in h ids
  std::vector<int> x_original;
  std::vector<int> x_q;
  vertex_grouping grouping;
  std::vector<std::pair<int, int>> blobs;  // (tree neighbor terminal, h id)
  int n_vertices = 0;
  cap_t m_edges = 0;
};

inline std::vector<auxiliary_graph> build_auxiliary_graphs(const simple_graph& h,
                                                           const partial_tree& pt,
                                                           const std::vector<int>& x, int d,
                                                           refine_stats* stats = nullptr) {
  validate_partial_tree(pt, h.n);
  for (const auto& e : pt.edges)
    require(e.w <= 2 * static_cast<cap_t>(d), errc::bad_parameter,
            "auxiliary graphs need a tree with no edge above 2d");
  std::vector<char> in_x(h.n, 0);
  for (int v : x) {
    require(v >= 0 && v < h.n, errc::out_of_range_vertex, "cluster member out of range");
    in_x[v] = 1;
  }
  cap_graph hc = cap_graph::from_simple(h);

  std::vector<auxiliary_graph> out;
  long long n_sum = 0;
  cap_t m_sum = 0;
  for (int ui : pt.terminals) {
    std::vector<int> xi;
    for (int v = 0; v < h.n; ++v)
      if (pt.part_of[v] == ui && in_x[v]) xi.push_back(v);
    if (xi.empty()) continue;  // parts without cluster vertices are skipped
    part_view view = make_part_view(hc, pt, ui);
    auxiliary_graph aux;
    aux.h = std::move(view.q);
    aux.center = ui;
    aux.center_q = view.q_of[ui];
    aux.x_original = std::move(xi);
    for (int v : aux.x_original) aux.x_q.push_back(view.q_of[v]);
    std::sort(aux.x_q.begin(), aux.x_q.end());
    aux.grouping.group_of = std::move(view.q_of);
    aux.grouping.groups = aux.h.n;
    aux.blobs = std::move(view.blobs);
    aux.n_vertices = aux.h.n;
    aux.m_edges = aux.h.total_capacity();
    n_sum += aux.n_vertices;
    m_sum += aux.m_edges;
    out.push_back(std::move(aux));
  }

  const long long m_h = h.m();
  ensure(n_sum <= 3LL * h.n, "auxiliary graphs exceed the 3n vertex budget");
  ensure(m_sum <= std::min<long long>(3 * m_h, 5LL * h.n * d),
         "auxiliary graphs exceed the min{3m,5nd} edge budget");
  if (stats) {
    stats->aux_n_sum = n_sum;
    stats->aux_m_sum = m_sum;
  }
  return out;
}

// ---------------------------------------------------------------------------
// Per-part refinement
// ---------------------------------------------------------------------------

struct part_refinement {
  int center = -1;
  partial_tree fragment;           // over original ids, covering the part; -1 elsewhere
  std::map<int, int> blob_anchor;  // tree neighbor -> fragment terminal to reattach to
  bool swapped = false;            // u_i replaced the part terminal instead of splitting
};

// Run the reduction on H_i with the sampled single-source oracle at capture
// threshold 2d, then the terminal-swap step: one max-flow decides whether
// u_i's part can be split from its new terminal or u_i takes the terminal
// role itself.
inline part_refinement refine_part(const cap_graph& g_view, const auxiliary_graph& aux, int d,
                                   double phi, const refine_options& opt,
                                   refine_stats* stats = nullptr, flow_counter* fc = nullptr) {
  require(g_view.n == aux.grouping.source_size(), errc::bad_parameter,
          "auxiliary graph does not match the host graph");
  sstmincut_ssc_oracle oracle(d, phi, opt, stats, fc);
  pt_options popt;
  popt.retry_cap = opt.retry_cap;
  pt_stats* pstats = stats ? &stats->pt : nullptr;
  partial_tree pt = build_partial_tree(aux.h, aux.x_q, 2 * static_cast<cap_t>(d), oracle,
                                       split_rng(opt.seed), popt, pstats, fc);

  part_refinement out;
  out.center = aux.center;
  int uq = aux.center_q;
  int xq = pt.part_of[uq];
  if (xq != uq) {
    auto split = split_part(pt, aux.h, xq, uq, 2 * static_cast<cap_t>(d), fc);
    if (!split) {
      // mincut(u_i, x_ui) exceeds 2d: u_i becomes the part's terminal
      out.swapped = true;
      for (auto& t : pt.terminals)
        if (t == xq) t = uq;
      std::sort(pt.terminals.begin(), pt.terminals.end());
      for (auto& e : pt.edges) {
        if (e.u == xq) e.u = uq;
        if (e.v == xq) e.v = uq;
      }
      for (auto& p : pt.part_of)
        if (p == xq) p = uq;
    }
  }

  std::vector<int> blob_qids;
  for (auto [z, q] : aux.blobs) {
    (void)z;
    blob_qids.push_back(q);
  }
  auto tr = detail::translate_fragment(pt, aux.grouping, blob_qids);
  out.fragment = std::move(tr.fragment);
  for (auto [z, q] : aux.blobs) out.blob_anchor[z] = tr.synthetic_anchor.at(q);
  if (stats) ++stats->parts_refined;
  return out;
}

// ---------------------------------------------------------------------------
// Refine: all parts, then an O(n) splice
// ---------------------------------------------------------------------------

inline partial_tree refine(const simple_graph& g, const simple_graph& h, const partial_tree& pt,
                           const well_linked_cluster& x, int d,
                           const refine_options& opt = {}, refine_stats* stats = nullptr,
                           flow_counter* fc = nullptr) {
  require(h.n == g.n, errc::bad_parameter, "certificate must share the vertex set");
  require(d >= 1, errc::bad_parameter, "d must be >= 1");
  validate_partial_tree(pt, g.n);
  cap_t total_w = 0;
  for (const auto& e : pt.edges) {
    ensure(e.w <= 2 * static_cast<cap_t>(d), "input tree captures a mincut above 2d");
    total_w += e.w;
  }
  ensure(total_w <= std::min<long long>(2LL * h.m(), 2LL * h.n * d),
         "input tree weight exceeds min{2m,2nd}");

  refine_stats local;
  refine_stats& st = stats ? *stats : local;
  auto auxs = build_auxiliary_graphs(h, pt, x.members, d, &st);
  cap_graph hc = cap_graph::from_simple(h);

  std::vector<part_refinement> parts(auxs.size());
  std::vector<refine_stats> part_stats(auxs.size());
  std::vector<flow_counter> part_flows(auxs.size());
  auto run_part = [&](std::size_t i) {
    refine_options popt = opt;
    popt.seed = split_rng(opt.seed).split(static_cast<std::uint64_t>(auxs[i].center)).seed();
    parts[i] = refine_part(hc, auxs[i], d, x.phi, popt, &part_stats[i], &part_flows[i]);
  };
  if (opt.jobs > 1 && auxs.size() > 1) {
    std::vector<std::future<void>> futs;
    std::size_t next = 0;
    while (next < auxs.size() || !futs.empty()) {
      while (next < auxs.size() && static_cast<int>(futs.size()) < opt.jobs)
        futs.push_back(std::async(std::launch::async, run_part, next++));
      futs.front().get();
      futs.erase(futs.begin());
    }
  } else {
    for (std::size_t i = 0; i < auxs.size(); ++i) run_part(i);
  }
  for (std::size_t i = 0; i < auxs.size(); ++i) {
    st.merge(part_stats[i]);
    if (fc) fc->calls += part_flows[i].calls;
  }

  std::map<int, const part_refinement*> refined;
  for (const auto& pr : parts) refined[pr.center] = &pr;

  partial_tree out;
  out.part_of.assign(g.n, -1);
  for (int t : pt.terminals) {
    auto it = refined.find(t);
    if (it == refined.end()) {
      out.terminals.push_back(t);
      for (int v = 0; v < g.n; ++v)
        if (pt.part_of[v] == t) out.part_of[v] = t;
    } else {
      const partial_tree& frag = it->second->fragment;
      for (int ft : frag.terminals) out.terminals.push_back(ft);
      for (const auto& e : frag.edges) out.edges.push_back(e);
      for (int v = 0; v < g.n; ++v)
        if (frag.part_of[v] != -1) {
          ensure(out.part_of[v] == -1, "refined fragments overlap");
          out.part_of[v] = frag.part_of[v];
        }
    }
  }
  // reattach each old tree edge to the fragment terminals that absorbed the
  // far-side component
  for (const auto& e : pt.edges) {
    int a = e.u, b = e.v;
    auto ia = refined.find(e.u);
    if (ia != refined.end()) a = ia->second->blob_anchor.at(e.v);
    auto ib = refined.find(e.v);
    if (ib != refined.end()) b = ib->second->blob_anchor.at(e.u);
    out.edges.push_back({a, b, e.w});
  }
  std::sort(out.terminals.begin(), out.terminals.end());
  validate_partial_tree(out, g.n);
  for (const auto& e : out.edges)
    ensure(e.w <= 2 * static_cast<cap_t>(d), "refined tree captures a mincut above 2d");
  return out;
}

}  // namespace ghcut
