#pragma once

#include <vector>

#include "ghcut/maxflow.hpp"

namespace ghcut {

struct isolating_cuts_result {
  std::vector<int> terminals;  // sorted
  std::vector<cut> cuts;       // parallel to terminals; cuts[i].side contains terminals[i]
  std::uint64_t maxflow_call_count = 0;

  const cut& cut_for(int t) const {
    auto it = std::lower_bound(terminals.begin(), terminals.end(), t);
    require(it != terminals.end() && *it == t, errc::unknown_vertex,
            "not an isolating-cuts terminal");
    return cuts[it - terminals.begin()];
  }
};

// For every terminal t, the t-minimal (t, T\{t})-mincut. Terminals get
// distinct bit labels in sorted-id order; one minimal set-mincut per bit
// position splits V into per-terminal regions, then one cleanup flow per
// terminal inside its region yields the minimal isolating cut. Flow budget:
// ceil(log2 |T|) + |T|.
inline isolating_cuts_result isolating_cuts(const cap_graph& g, const std::vector<int>& terminals,
                                            flow_counter* fc = nullptr) {
  isolating_cuts_result res;
  res.terminals = terminals;
  std::sort(res.terminals.begin(), res.terminals.end());
  res.terminals.erase(std::unique(res.terminals.begin(), res.terminals.end()),
                      res.terminals.end());
  const int k = static_cast<int>(res.terminals.size());
  require(k >= 2, errc::too_few_terminals, "isolating cuts needs at least 2 terminals");
  for (int t : res.terminals)
    require(t >= 0 && t < g.n, errc::out_of_range_vertex, "terminal out of range");

  flow_counter local;
  int bits = 0;
  while ((1 << bits) < k) ++bits;

  // signature[v] collects, per bit round, which side of the round's minimal
  // mincut v landed on.
  std::vector<std::uint32_t> signature(g.n, 0);
  int rounds_used = 0;
  for (int b = 0; b < bits; ++b) {
    std::vector<int> zeros, ones;
    for (int i = 0; i < k; ++i)
      ((i >> b) & 1 ? ones : zeros).push_back(res.terminals[i]);
    if (zeros.empty() || ones.empty()) continue;
    cut c = set_mincut(g, zeros, ones, &local);
    for (int v : c.side) signature[v] |= 1u << rounds_used;
    ++rounds_used;
  }

  // Region of terminal t = vertices sharing t's signature. Regions of
  // distinct terminals are disjoint because their labels differ in some bit.
  res.cuts.resize(k);
  for (int i = 0; i < k; ++i) {
    int t = res.terminals[i];
    std::vector<int> region, rest;
    for (int v = 0; v < g.n; ++v)
      (signature[v] == signature[t] ? region : rest).push_back(v);
    ensure(!rest.empty(), "isolating region covers the whole graph");
    auto grp = vertex_grouping::merge_sets(g.n, {rest});
    cap_graph q = contract(g, grp);
    cut qc = st_mincut_minimal(q, grp.group_of[t], grp.group_of[rest.front()], &local);
    cut out;
    out.value = qc.value;
    out.side = grp.expand(qc.side);
    out.source_minimal = true;
    res.cuts[i] = std::move(out);
  }

  res.maxflow_call_count = local.calls;
  ensure(res.maxflow_call_count <= static_cast<std::uint64_t>(bits + k),
         "isolating cuts exceeded its flow budget");
  if (fc) fc->calls += local.calls;
  return res;
}

}  // namespace ghcut
