#pragma once

#include <map>
#include <optional>
#include <tuple>
#include <vector>

#include "ghcut/isolating_cuts.hpp"
#include "ghcut/rng.hpp"

namespace ghcut {

// Tree on a terminal subset plus a partition of V with exactly one terminal
// per part. part_of maps every vertex to the terminal owning its part; in
// fragment form (during combination) uncovered vertices carry -1.
struct partial_tree {
  struct edge {
    int u = 0;
    int v = 0;
    cap_t w = 0;
  };

  std::vector<int> terminals;  // sorted
  std::vector<edge> edges;
  std::vector<int> part_of;

  static partial_tree trivial(int n, int terminal) {
    partial_tree pt;
    pt.terminals = {terminal};
    pt.part_of.assign(n, terminal);
    return pt;
  }

  bool is_terminal(int v) const {
    return std::binary_search(terminals.begin(), terminals.end(), v);
  }

  std::vector<int> part_members(int terminal) const {
    std::vector<int> out;
    for (int v = 0; v < static_cast<int>(part_of.size()); ++v)
      if (part_of[v] == terminal) out.push_back(v);
    return out;
  }
};

inline void validate_partial_tree(const partial_tree& pt, int n) {
  ensure(static_cast<int>(pt.part_of.size()) == n, "partial tree partition must cover V");
  ensure(!pt.terminals.empty(), "partial tree needs at least one terminal");
  ensure(std::is_sorted(pt.terminals.begin(), pt.terminals.end()) &&
             std::adjacent_find(pt.terminals.begin(), pt.terminals.end()) == pt.terminals.end(),
         "terminals must be sorted and unique");
  for (int t : pt.terminals) {
    ensure(t >= 0 && t < n, "terminal out of range");
    ensure(pt.part_of[t] == t, "terminal must map to its own part");
  }
  for (int v = 0; v < n; ++v)
    ensure(pt.is_terminal(pt.part_of[v]), "part owner is not a terminal");
  ensure(pt.edges.size() + 1 == pt.terminals.size(), "tree edge count must be |terminals|-1");
  std::map<int, std::vector<std::pair<int, cap_t>>> adj;
  for (const auto& e : pt.edges) {
    ensure(pt.is_terminal(e.u) && pt.is_terminal(e.v) && e.u != e.v, "tree edge must join terminals");
    ensure(e.w >= 0, "tree edge weight must be nonnegative");
    adj[e.u].emplace_back(e.v, e.w);
    adj[e.v].emplace_back(e.u, e.w);
  }
  std::vector<int> stack{pt.terminals.front()};
  std::map<int, char> seen{{pt.terminals.front(), 1}};
  while (!stack.empty()) {
    int v = stack.back();
    stack.pop_back();
    for (auto [w, wt] : adj[v]) {
      (void)wt;
      if (!seen[w]) {
        seen[w] = 1;
        stack.push_back(w);
      }
    }
  }
  ensure(seen.size() == pt.terminals.size(), "tree is disconnected over its terminals");
}

// Minimum edge weight on the unique u-v path.
inline cap_t path_min_weight(const partial_tree& pt, int u, int v) {
  require(u != v, errc::same_endpoints, "path query needs two distinct terminals");
  require(pt.is_terminal(u) && pt.is_terminal(v), errc::unknown_vertex,
          "path query endpoint is not a terminal");
  std::map<int, std::vector<std::pair<int, cap_t>>> adj;
  for (const auto& e : pt.edges) {
    adj[e.u].emplace_back(e.v, e.w);
    adj[e.v].emplace_back(e.u, e.w);
  }
  constexpr cap_t kInf = std::numeric_limits<cap_t>::max();
  std::map<int, cap_t> best{{u, kInf}};
  std::vector<int> stack{u};
  while (!stack.empty()) {
    int w = stack.back();
    stack.pop_back();
    for (auto [z, wt] : adj[w]) {
      if (best.count(z)) continue;
      best[z] = std::min(best[w], wt);
      stack.push_back(z);
    }
  }
  require(best.count(v), errc::unknown_vertex, "endpoints lie in different tree components");
  return best[v];
}

// ---------------------------------------------------------------------------
// k-SSC verification oracle
// ---------------------------------------------------------------------------

// Verification contract: given claims lambda_v >= min{mincut(s,v), k}, report
// for each v whether lambda_v == min{mincut(s,v), k}. `instance` identifies
// the (possibly quotient) graph for caching.
class ssc_oracle {
 public:
  virtual ~ssc_oracle() = default;
  virtual cap_t cap() const = 0;
  virtual std::vector<char> verify(const cap_graph& g, std::uint64_t instance,
                                   const std::vector<int>& terminals, int s,
                                   const std::vector<std::pair<int, cap_t>>& claims) = 0;
};

// Reference oracle: one max-flow per queried vertex, capped at k.
class bruteforce_ssc_oracle : public ssc_oracle {
 public:
  explicit bruteforce_ssc_oracle(cap_t k, flow_counter* fc = nullptr) : k_(k), fc_(fc) {
    require(k >= 0, errc::bad_parameter, "oracle cap must be nonnegative");
  }

  cap_t cap() const override { return k_; }

  std::vector<char> verify(const cap_graph& g, std::uint64_t instance,
                           const std::vector<int>& terminals, int s,
                           const std::vector<std::pair<int, cap_t>>& claims) override {
    (void)terminals;
    std::vector<char> out;
    out.reserve(claims.size());
    for (auto [v, lam] : claims) {
      auto key = std::make_tuple(instance, s, v);
      auto it = cache_.find(key);
      cap_t truth;
      if (it != cache_.end()) {
        truth = it->second;
      } else {
        truth = k_ == 0 ? 0 : std::min(max_flow_value(g, s, v, fc_), k_);
        cache_.emplace(key, truth);
      }
      out.push_back(lam == truth);
    }
    return out;
  }

 private:
  cap_t k_;
  flow_counter* fc_;
  std::map<std::tuple<std::uint64_t, int, int>, cap_t> cache_;
};

// ---------------------------------------------------------------------------
// Steiner connectivity
// ---------------------------------------------------------------------------

struct steiner_result {
  cap_t value = 0;
  bool infinite = false;
  int witness_u = -1;  // fixed source
  int witness_v = -1;  // terminal achieving the minimum
};

// Minimum pairwise mincut over U, via |U|-1 flows from a fixed terminal (the
// minimal Steiner cut separates the fixed terminal from someone).
inline steiner_result steiner_connectivity(const cap_graph& g, const std::vector<int>& u,
                                           flow_counter* fc = nullptr) {
  require(!u.empty(), errc::empty_set, "steiner connectivity needs terminals");
  steiner_result res;
  if (u.size() == 1) {
    res.infinite = true;
    return res;
  }
  std::vector<int> sorted = u;
  std::sort(sorted.begin(), sorted.end());
  int u0 = sorted.front();
  res.witness_u = u0;
  res.value = std::numeric_limits<cap_t>::max();
  for (std::size_t i = 1; i < sorted.size(); ++i) {
    cap_t f = max_flow_value(g, u0, sorted[i], fc);
    if (f < res.value) {
      res.value = f;
      res.witness_v = sorted[i];
    }
  }
  return res;
}

// ---------------------------------------------------------------------------
// PartialTreeStep
// ---------------------------------------------------------------------------

struct step_result {
  int level = -1;                            // chosen i, -1 when every D^i was empty
  std::vector<int> d_set;                    // D_i
  std::vector<std::pair<int, cut>> cuts;     // recorded v -> S^i_v, sorted by v
  std::vector<std::vector<int>> r_levels;    // sampled chains R^0 ⊇ R^1 ⊇ ...
};

// One round of the reduction: per level, isolating cuts on the sampled
// terminal chain, oracle verification of the cut values against
// min{mincut(s,v), k}, and collection of the verified small sides. Returns
// the level with the largest D^i.
inline step_result partial_tree_step(const cap_graph& g, int s, const std::vector<int>& u,
                                     cap_t k, ssc_oracle& oracle, split_rng rng,
                                     std::uint64_t instance = 0, flow_counter* fc = nullptr) {
  require(k == oracle.cap(), errc::bad_parameter,
          "capture threshold must match the oracle cap");
  std::vector<int> terms = u;
  std::sort(terms.begin(), terms.end());
  terms.erase(std::unique(terms.begin(), terms.end()), terms.end());
  require(std::binary_search(terms.begin(), terms.end(), s), errc::bad_parameter,
          "source must belong to U");

  std::vector<char> in_u(g.n, 0);
  for (int v : terms) in_u[v] = 1;
  const std::size_t usize = terms.size();

  step_result best;
  int levels = 0;
  while ((std::size_t{1} << (levels + 1)) <= usize) ++levels;  // floor(lg |U|)

  std::vector<int> r = terms;
  for (int i = 0; i <= levels; ++i) {
    if (r.size() < 2) break;
    best.r_levels.push_back(r);
    auto iso = isolating_cuts(g, r, fc);

    std::vector<std::pair<int, cap_t>> claims;
    for (int v : r)
      if (v != s) claims.emplace_back(v, iso.cut_for(v).value);
    auto flags = oracle.verify(g, instance, r, s, claims);

    std::vector<std::pair<int, cut>> recorded;
    std::vector<int> d_i;
    for (std::size_t ci = 0; ci < claims.size(); ++ci) {
      if (!flags[ci]) continue;
      int v = claims[ci].first;
      const cut& sv = iso.cut_for(v);
      std::size_t in_side = 0;
      for (int w : sv.side)
        if (in_u[w]) ++in_side;
      if (2 * in_side > usize) continue;
      recorded.emplace_back(v, sv);
      for (int w : sv.side)
        if (in_u[w]) d_i.push_back(w);
    }
    std::sort(d_i.begin(), d_i.end());
    if (!d_i.empty() && d_i.size() > best.d_set.size()) {
      best.level = i;
      best.d_set = std::move(d_i);
      best.cuts = std::move(recorded);
    }

    split_rng lr = rng.split(static_cast<std::uint64_t>(i));
    std::vector<int> next;
    for (int v : r)
      if (v == s || lr.bernoulli(0.5)) next.push_back(v);
    r = std::move(next);
  }
  return best;
}

// ---------------------------------------------------------------------------
// Combine
// ---------------------------------------------------------------------------

struct combine_branch {
  int v = -1;              // recorded terminal this branch was split around
  cap_t cut_weight = 0;    // |∂ S_v|
  partial_tree fragment;   // over parent ids; part_of == -1 outside S_v
  int anchor_x = -1;       // fragment terminal whose part absorbed the contracted outside
  int anchor_y = -1;       // large terminal whose part absorbed this branch's blob
};

// Join the large fragment and the branch fragments with one weighted edge per
// branch; the final partition is the disjoint union restricted to original
// vertices.
inline partial_tree combine(int n, const partial_tree& large,
                            const std::vector<combine_branch>& branches) {
  partial_tree out;
  out.part_of.assign(n, -1);
  auto absorb = [&](const partial_tree& frag) {
    for (int t : frag.terminals) out.terminals.push_back(t);
    for (const auto& e : frag.edges) out.edges.push_back(e);
    for (int v = 0; v < n; ++v)
      if (frag.part_of[v] != -1) {
        ensure(out.part_of[v] == -1, "combine fragments overlap");
        out.part_of[v] = frag.part_of[v];
      }
  };
  absorb(large);
  for (const auto& br : branches) {
    require(br.anchor_y >= 0 && large.is_terminal(br.anchor_y), errc::missing_anchor,
            "large-side anchor terminal not found");
    require(br.anchor_x >= 0 && br.fragment.is_terminal(br.anchor_x), errc::missing_anchor,
            "branch anchor terminal not found");
    absorb(br.fragment);
    out.edges.push_back({br.anchor_x, br.anchor_y, br.cut_weight});
  }
  std::sort(out.terminals.begin(), out.terminals.end());
  validate_partial_tree(out, n);
  return out;
}

// ---------------------------------------------------------------------------
// PartialTree recursion
// ---------------------------------------------------------------------------

struct pt_options {
  int retry_cap = 20;
};

struct pt_stats {
  int max_depth = 0;
  int retries = 0;
  int fallback_splits = 0;
  std::uint64_t nodes = 0;
};

namespace detail {

struct translated_fragment {
  partial_tree fragment;                 // over parent ids, -1 outside its domain
  std::map<int, int> synthetic_anchor;   // synthetic quotient id -> owning terminal (parent id)
};

// Map a child tree over quotient ids back to parent ids. Non-synthetic groups
// must be singletons; synthetic ones report which terminal absorbed them.
inline translated_fragment translate_fragment(const partial_tree& child,
                                              const vertex_grouping& grp,
                                              const std::vector<int>& synthetic) {
  int parent_n = grp.source_size();
  std::vector<char> synth(grp.groups, 0);
  for (int q : synthetic) synth[q] = 1;
  std::vector<int> rep(grp.groups, -1);
  for (int v = 0; v < parent_n; ++v) {
    int q = grp.group_of[v];
    if (synth[q]) continue;
    ensure(rep[q] == -1, "quotient group expected to be a singleton");
    rep[q] = v;
  }
  translated_fragment out;
  out.fragment.part_of.assign(parent_n, -1);
  for (int t : child.terminals) {
    ensure(!synth[t] && rep[t] != -1, "terminal must be a real vertex");
    out.fragment.terminals.push_back(rep[t]);
  }
  std::sort(out.fragment.terminals.begin(), out.fragment.terminals.end());
  for (const auto& e : child.edges)
    out.fragment.edges.push_back({rep[e.u], rep[e.v], e.w});
  for (int v = 0; v < parent_n; ++v) {
    int q = grp.group_of[v];
    if (synth[q]) continue;
    out.fragment.part_of[v] = rep[child.part_of[q]];
  }
  for (int q : synthetic) out.synthetic_anchor[q] = rep[child.part_of[q]];
  return out;
}

inline partial_tree build_partial_tree_rec(const cap_graph& g, const std::vector<int>& u,
                                           cap_t k, ssc_oracle& oracle, split_rng rng,
                                           const pt_options& opt, pt_stats& stats,
                                           flow_counter* fc, std::uint64_t& instance_counter,
                                           int depth) {
  std::uint64_t iid = instance_counter++;
  ++stats.nodes;
  stats.max_depth = std::max(stats.max_depth, depth);
  require(!u.empty(), errc::empty_set, "terminal set must be nonempty");
  std::vector<int> terms = u;
  std::sort(terms.begin(), terms.end());
  terms.erase(std::unique(terms.begin(), terms.end()), terms.end());

  if (terms.size() == 1) return partial_tree::trivial(g.n, terms.front());

  auto st = steiner_connectivity(g, terms, fc);
  if (st.infinite || st.value > k) return partial_tree::trivial(g.n, terms.front());

  std::vector<char> in_u(g.n, 0);
  for (int v : terms) in_u[v] = 1;

  step_result step;
  for (int attempt = 0; attempt <= opt.retry_cap; ++attempt) {
    split_rng ar = rng.split(0x10000ull + static_cast<std::uint64_t>(attempt));
    int s = terms[ar.below(terms.size())];
    step = partial_tree_step(g, s, terms, k, oracle, ar.split(1), iid, fc);
    if (step.level >= 0) break;
    ++stats.retries;
  }
  if (step.level < 0) {
    // zero progress after the retry budget: classical split along the
    // Steiner witness pair, keeping the small-terminal-side invariant
    ++stats.fallback_splits;
    cut c = st_mincut_minimal(g, st.witness_v, st.witness_u, fc);
    ensure(c.value == st.value, "fallback split disagrees with steiner connectivity");
    int v_rec = st.witness_v;
    std::size_t in_side = 0;
    for (int w : c.side)
      if (in_u[w]) ++in_side;
    if (2 * in_side > terms.size()) {
      c = st_mincut_minimal(g, st.witness_u, st.witness_v, fc);
      v_rec = st.witness_u;
      in_side = 0;
      for (int w : c.side)
        if (in_u[w]) ++in_side;
      ensure(2 * in_side <= terms.size(), "minimal witness side exceeds half the terminals");
    }
    step.level = 0;
    step.cuts.emplace_back(v_rec, c);
    for (int w : c.side)
      if (in_u[w]) step.d_set.push_back(w);
    std::sort(step.d_set.begin(), step.d_set.end());
  }

  // branch recursion on G_v = contract(V \ S_v), one per recorded cut
  std::vector<combine_branch> branches;
  for (const auto& [v, sv] : step.cuts) {
    std::vector<char> in_side(g.n, 0);
    for (int w : sv.side) in_side[w] = 1;
    std::vector<int> complement;
    for (int w = 0; w < g.n; ++w)
      if (!in_side[w]) complement.push_back(w);
    ensure(!complement.empty(), "branch side covers the whole graph");
    auto grp = vertex_grouping::merge_sets(g.n, {complement});
    cap_graph gv = contract(g, grp);
    int xv = grp.group_of[complement.front()];

    std::vector<int> uv;
    for (int w : sv.side)
      if (in_u[w]) uv.push_back(grp.group_of[w]);
    std::sort(uv.begin(), uv.end());

    partial_tree child =
        uv.size() > 1
            ? build_partial_tree_rec(gv, uv, k, oracle, rng.split(0x20000ull + v), opt, stats,
                                     fc, instance_counter, depth + 1)
            : partial_tree::trivial(gv.n, grp.group_of[v]);
    auto tr = translate_fragment(child, grp, {xv});

    combine_branch br;
    br.v = v;
    br.cut_weight = sv.value;
    br.fragment = std::move(tr.fragment);
    br.anchor_x = tr.synthetic_anchor.at(xv);
    branches.push_back(std::move(br));
  }

  // G_large = contract each recorded side to a blob
  std::vector<std::vector<int>> sides;
  for (const auto& [v, sv] : step.cuts) {
    (void)v;
    sides.push_back(sv.side);
  }
  auto grp_l = vertex_grouping::merge_sets(g.n, sides);
  cap_graph gl = contract(g, grp_l);
  std::vector<int> blobs;
  for (const auto& s : sides) blobs.push_back(grp_l.group_of[s.front()]);

  std::vector<char> in_d(g.n, 0);
  for (int w : step.d_set) in_d[w] = 1;
  std::vector<int> ul;
  for (int w : terms)
    if (!in_d[w]) ul.push_back(grp_l.group_of[w]);
  std::sort(ul.begin(), ul.end());
  ensure(!ul.empty(), "the large side lost every terminal");

  partial_tree child_l =
      ul.size() > 1 ? build_partial_tree_rec(gl, ul, k, oracle, rng.split(0x30000ull), opt,
                                             stats, fc, instance_counter, depth + 1)
                    : partial_tree::trivial(gl.n, ul.front());
  auto tr_l = translate_fragment(child_l, grp_l, blobs);
  for (std::size_t b = 0; b < branches.size(); ++b)
    branches[b].anchor_y = tr_l.synthetic_anchor.at(blobs[b]);

  return combine(g.n, tr_l.fragment, branches);
}

}  // namespace detail

// Build a partial tree capturing all mincuts separating U of size at most k
// and none larger, from a k-SSC verification oracle plus max-flow.
inline partial_tree build_partial_tree(const cap_graph& g, const std::vector<int>& u, cap_t k,
                                       ssc_oracle& oracle, split_rng rng,
                                       const pt_options& opt = {}, pt_stats* stats = nullptr,
                                       flow_counter* fc = nullptr) {
  require(k >= 0, errc::bad_parameter, "capture threshold must be nonnegative");
  pt_stats local;
  pt_stats& st = stats ? *stats : local;
  std::uint64_t instance_counter = 0;
  auto pt = detail::build_partial_tree_rec(g, u, k, oracle, rng, opt, st, fc, instance_counter,
                                           0);
  validate_partial_tree(pt, g.n);
  for (const auto& e : pt.edges)
    ensure(e.w <= k, "tree edge exceeds the capture threshold");
  return pt;
}

// ---------------------------------------------------------------------------
// Part views and classical split steps (shared by the classical baseline and
// the refinement terminal swap)
// ---------------------------------------------------------------------------

struct part_view {
  cap_graph q;
  std::vector<int> q_of;                      // original vertex -> quotient id
  std::vector<std::pair<int, int>> blobs;     // (tree neighbor terminal, quotient id)
  int center = -1;
};

// Contract every component of T minus `center` (union of its parts) to one
// vertex; mincuts between members of center's part are preserved.
inline part_view make_part_view(const cap_graph& g, const partial_tree& pt, int center) {
  require(pt.is_terminal(center), errc::unknown_vertex, "part view center must be a terminal");
  std::map<int, std::vector<int>> tree_adj;
  for (const auto& e : pt.edges) {
    tree_adj[e.u].push_back(e.v);
    tree_adj[e.v].push_back(e.u);
  }
  // component label per terminal = the center-neighbor it hangs from
  std::map<int, int> comp_of;
  std::vector<int> neighbors = tree_adj[center];
  std::sort(neighbors.begin(), neighbors.end());
  for (int z : neighbors) {
    std::vector<int> stack{z};
    comp_of[z] = z;
    while (!stack.empty()) {
      int t = stack.back();
      stack.pop_back();
      for (int w : tree_adj[t]) {
        if (w == center || comp_of.count(w)) continue;
        comp_of[w] = z;
        stack.push_back(w);
      }
    }
  }
  std::map<int, std::vector<int>> comp_vertices;
  for (int v = 0; v < static_cast<int>(pt.part_of.size()); ++v) {
    int t = pt.part_of[v];
    if (t == center) continue;
    comp_vertices[comp_of.at(t)].push_back(v);
  }
  std::vector<std::vector<int>> sets;
  std::vector<int> set_neighbor;
  for (int z : neighbors) {
    sets.push_back(comp_vertices.at(z));
    set_neighbor.push_back(z);
  }
  part_view view;
  view.center = center;
  auto grp = vertex_grouping::merge_sets(static_cast<int>(pt.part_of.size()), sets);
  view.q = contract(g, grp);
  view.q_of = grp.group_of;
  for (std::size_t i = 0; i < sets.size(); ++i)
    view.blobs.emplace_back(set_neighbor[i], grp.group_of[sets[i].front()]);
  return view;
}

// Classical Gomory-Hu split: separate `other` from its part's terminal
// `center` along the minimal mincut in the part view. When max_w is
// nonnegative and the mincut exceeds it, the tree is left untouched.
inline std::optional<cap_t> split_part(partial_tree& pt, const cap_graph& g, int center,
                                       int other, cap_t max_w = -1, flow_counter* fc = nullptr) {
  require(pt.part_of[other] == center && other != center, errc::bad_parameter,
          "split vertex must be a non-terminal member of center's part");
  part_view view = make_part_view(g, pt, center);
  cut c = st_mincut_minimal(view.q, view.q_of[other], view.q_of[center], fc);
  if (max_w >= 0 && c.value > max_w) return std::nullopt;

  std::vector<char> in_side(view.q.n, 0);
  for (int q : c.side) in_side[q] = 1;
  for (int v = 0; v < static_cast<int>(pt.part_of.size()); ++v)
    if (pt.part_of[v] == center && in_side[view.q_of[v]]) pt.part_of[v] = other;
  std::map<int, char> blob_side;
  for (auto [z, q] : view.blobs) blob_side[z] = in_side[q];
  for (auto& e : pt.edges) {
    if (e.u == center && blob_side.count(e.v) && blob_side[e.v]) e.u = other;
    else if (e.v == center && blob_side.count(e.u) && blob_side[e.u]) e.v = other;
  }
  pt.edges.push_back({center, other, c.value});
  pt.terminals.insert(std::lower_bound(pt.terminals.begin(), pt.terminals.end(), other), other);
  return c.value;
}

}  // namespace ghcut
