#pragma once

#include <bit>
#include <cmath>
#include <optional>
#include <vector>

#include "ghcut/maxflow.hpp"
#include "ghcut/rng.hpp"

namespace ghcut {

using demand_vector = std::vector<double>;

// A vertex set X with its certificate parameters: every member has degree
// >= d in the host graph and every bipartition (A,B) of X has
// mincut(A,B) >= d * phi * min{|A|,|B|}. host_size is the size of the
// decomposition cluster X was filtered from; exact_certified marks clusters
// whose expansion was certified by exhaustive enumeration.
struct well_linked_cluster {
  std::vector<int> members;
  int d = 0;
  double phi = 0.0;
  int host_size = 0;
  bool exact_certified = false;
};

struct decomposition_cluster {
  std::vector<int> members;
  double phi_certified = 1.0;
  bool exact = false;
};

struct decomposition_result {
  std::vector<std::vector<int>> clusters;
  long long inter_cluster_edges = 0;
  double achieved_phi = 1.0;
  std::vector<decomposition_cluster> detail;  // parallel to clusters
};

enum class decomposer_backend { exact, heuristic, automatic };

struct decomposer_options {
  decomposer_backend backend = decomposer_backend::automatic;
  int exact_cap = 20;          // largest cluster the exact enumerator will take
  int heuristic_restarts = 8;  // local-search seeds per sparse-cut query
  int declared_budget = 1;     // the B factor this decomposer promises
  std::uint64_t seed = 0;
};

namespace detail {

struct sparse_cut {
  std::vector<int> side;  // cluster-local indices
  double ratio = 0.0;
};

struct induced_view {
  std::vector<int> vertices;            // cluster members (sorted)
  std::vector<std::vector<int>> adj;    // local indices
  std::vector<double> dem;
  double dtot = 0.0;
  int size() const { return static_cast<int>(vertices.size()); }
};

inline induced_view make_view(const simple_graph& g, const std::vector<int>& members,
                              const demand_vector& demands) {
  induced_view view;
  view.vertices = members;
  std::vector<int> local(g.n, -1);
  for (int i = 0; i < view.size(); ++i) local[members[i]] = i;
  view.adj.assign(view.size(), {});
  for (int i = 0; i < view.size(); ++i) {
    for (int w : g.adj[members[i]])
      if (local[w] != -1) view.adj[i].push_back(local[w]);
    std::sort(view.adj[i].begin(), view.adj[i].end());
  }
  view.dem.resize(view.size());
  for (int i = 0; i < view.size(); ++i) {
    view.dem[i] = demands[members[i]];
    view.dtot += view.dem[i];
  }
  return view;
}

// Exhaustive sparse-cut search over all bipartitions (vertex 0 pinned to the
// complement), maintaining crossing counts by Gray-code single flips.
// Returns the cut of minimum ratio if it is below phi; otherwise reports the
// exact expansion constant through min_ratio.
inline std::optional<sparse_cut> exact_sparse_cut(const induced_view& view, double phi,
                                                  double* min_ratio) {
  int k = view.size();
  *min_ratio = std::numeric_limits<double>::infinity();
  if (k < 2) return std::nullopt;
  require(k <= 26, errc::verification_infeasible,
          "exact sparse-cut enumeration is capped at 26 vertices");
  std::vector<std::uint64_t> adj_mask(k, 0);
  for (int i = 0; i < k; ++i)
    for (int w : view.adj[i]) adj_mask[i] |= std::uint64_t{1} << w;

  std::uint64_t mask = 0;
  long long crossing = 0;
  double ds = 0.0;
  double best_ratio = std::numeric_limits<double>::infinity();
  std::uint64_t best_mask = 0;
  const std::uint64_t steps = std::uint64_t{1} << (k - 1);
  for (std::uint64_t j = 1; j < steps; ++j) {
    int flip = std::countr_zero(j) + 1;  // vertex 0 stays outside
    std::uint64_t bit = std::uint64_t{1} << flip;
    int deg = static_cast<int>(view.adj[flip].size());
    if (mask & bit) {
      mask ^= bit;
      crossing -= deg - 2 * std::popcount(adj_mask[flip] & mask);
      ds -= view.dem[flip];
    } else {
      crossing += deg - 2 * std::popcount(adj_mask[flip] & mask);
      mask ^= bit;
      ds += view.dem[flip];
    }
    double mind = std::min(ds, view.dtot - ds);
    if (mind <= 0.0) continue;
    double ratio = static_cast<double>(crossing) / mind;
    if (ratio < best_ratio) {
      best_ratio = ratio;
      best_mask = mask;
    }
  }
  *min_ratio = best_ratio;
  if (best_ratio < phi) {
    sparse_cut out;
    out.ratio = best_ratio;
    for (int i = 0; i < k; ++i)
      if ((best_mask >> i) & 1) out.side.push_back(i);
    return out;
  }
  return std::nullopt;
}

// Local-search sparse-cut finder for clusters too large to enumerate: seeded
// BFS balls refined by greedy single-vertex moves on the crossing/demand
// ratio. Finds a certified-sparse cut or gives up; giving up does not prove
// expansion.
inline std::optional<sparse_cut> heuristic_sparse_cut(const induced_view& view, double phi,
                                                      int restarts, split_rng rng) {
  int k = view.size();
  int demand_vertices = 0;
  for (double dv : view.dem)
    if (dv > 0.0) ++demand_vertices;
  if (demand_vertices <= 1) return std::nullopt;

  // connected components first: a zero cut between demand vertices is always
  // sparse
  {
    std::vector<int> comp(k, -1);
    int ncomp = 0;
    for (int i = 0; i < k; ++i) {
      if (comp[i] != -1) continue;
      std::vector<int> stack{i};
      comp[i] = ncomp;
      while (!stack.empty()) {
        int v = stack.back();
        stack.pop_back();
        for (int w : view.adj[v])
          if (comp[w] == -1) {
            comp[w] = ncomp;
            stack.push_back(w);
          }
      }
      ++ncomp;
    }
    if (ncomp > 1) {
      int first_demand_comp = -1;
      bool demand_elsewhere = false;
      for (int i = 0; i < k; ++i) {
        if (view.dem[i] <= 0.0) continue;
        if (first_demand_comp == -1)
          first_demand_comp = comp[i];
        else if (comp[i] != first_demand_comp)
          demand_elsewhere = true;
      }
      if (demand_elsewhere) {
        sparse_cut out;
        out.ratio = 0.0;
        for (int i = 0; i < k; ++i)
          if (comp[i] == first_demand_comp) out.side.push_back(i);
        return out;
      }
    }
  }

  auto eval = [&](long long crossing, double ds, int size) -> double {
    double mind = std::min(ds, view.dtot - ds);
    if (mind <= 0.0 || size == 0 || size == k) return std::numeric_limits<double>::infinity();
    return static_cast<double>(crossing) / mind;
  };

  double best_ratio = std::numeric_limits<double>::infinity();
  std::vector<char> best_in;
  for (int r = 0; r < restarts; ++r) {
    split_rng lr = rng.split(r);
    std::vector<char> in(k, 0);
    int target = 1 + static_cast<int>(lr.below(static_cast<std::uint64_t>(k - 1)));
    int start = static_cast<int>(lr.below(static_cast<std::uint64_t>(k)));
    std::vector<int> order{start};
    in[start] = 1;
    int size = 1;
    for (std::size_t qi = 0; qi < order.size() && size < target; ++qi)
      for (int w : view.adj[order[qi]]) {
        if (!in[w] && size < target) {
          in[w] = 1;
          ++size;
          order.push_back(w);
        }
      }
    long long crossing = 0;
    double ds = 0.0;
    for (int i = 0; i < k; ++i) {
      if (!in[i]) continue;
      ds += view.dem[i];
      for (int w : view.adj[i])
        if (!in[w]) ++crossing;
    }
    double cur = eval(crossing, ds, size);
    bool improved = true;
    while (improved) {
      improved = false;
      std::vector<int> perm(k);
      for (int i = 0; i < k; ++i) perm[i] = i;
      for (int i = k - 1; i > 0; --i)
        std::swap(perm[i], perm[lr.below(static_cast<std::uint64_t>(i + 1))]);
      for (int v : perm) {
        int inside = 0;
        for (int w : view.adj[v])
          if (in[w]) ++inside;
        int deg = static_cast<int>(view.adj[v].size());
        long long ncross;
        double nds;
        int nsize;
        if (in[v]) {
          ncross = crossing - (deg - 2 * inside);
          nds = ds - view.dem[v];
          nsize = size - 1;
        } else {
          ncross = crossing + (deg - 2 * inside);
          nds = ds + view.dem[v];
          nsize = size + 1;
        }
        double cand = eval(ncross, nds, nsize);
        if (cand < cur - 1e-12) {
          in[v] = !in[v];
          crossing = ncross;
          ds = nds;
          size = nsize;
          cur = cand;
          improved = true;
        }
      }
    }
    if (cur < best_ratio) {
      best_ratio = cur;
      best_in = in;
    }
  }
  if (best_ratio < phi) {
    sparse_cut out;
    out.ratio = best_ratio;
    for (int i = 0; i < k; ++i)
      if (best_in[i]) out.side.push_back(i);
    return out;
  }
  return std::nullopt;
}

}  // namespace detail

// Partition V into clusters whose induced graphs are (phi, demand)-expanders,
// by recursive extraction of demand-sparse cuts. Small clusters are certified
// by exhaustive enumeration (which also reports the exact expansion
// constant); larger ones fall back to local search under the automatic
// backend.
inline decomposition_result expander_decompose(const simple_graph& g, const demand_vector& demands,
                                               double phi, const decomposer_options& opt = {}) {
  require(phi > 0.0 && phi <= 1.0, errc::invalid_phi, "phi must lie in (0, 1]");
  require(static_cast<int>(demands.size()) == g.n, errc::bad_parameter,
          "demand vector must cover every vertex");
  for (double dv : demands)
    require(dv >= 0.0, errc::bad_parameter, "demands must be nonnegative");

  decomposition_result res;
  split_rng rng(opt.seed);
  std::uint64_t split_counter = 0;

  std::vector<int> whole(g.n);
  for (int v = 0; v < g.n; ++v) whole[v] = v;
  std::vector<std::vector<int>> work{whole};
  if (g.n == 0) work.clear();

  while (!work.empty()) {
    std::vector<int> cur = std::move(work.back());
    work.pop_back();
    auto view = detail::make_view(g, cur, demands);
    bool use_exact = opt.backend == decomposer_backend::exact ||
                     (opt.backend == decomposer_backend::automatic && view.size() <= opt.exact_cap);
    std::optional<detail::sparse_cut> found;
    double min_ratio = std::numeric_limits<double>::infinity();
    if (use_exact) {
      found = detail::exact_sparse_cut(view, phi, &min_ratio);
    } else {
      found = detail::heuristic_sparse_cut(view, phi, opt.heuristic_restarts,
                                           rng.split(split_counter));
    }
    ++split_counter;
    if (found) {
      std::vector<int> a, b;
      std::vector<char> in(view.size(), 0);
      for (int i : found->side) in[i] = 1;
      for (int i = 0; i < view.size(); ++i) (in[i] ? a : b).push_back(view.vertices[i]);
      ensure(!a.empty() && !b.empty(), "sparse cut produced an empty side");
      work.push_back(std::move(a));
      work.push_back(std::move(b));
      continue;
    }
    decomposition_cluster dc;
    dc.members = cur;
    dc.exact = use_exact;
    dc.phi_certified = use_exact ? std::min(min_ratio, 1.0) : phi;
    res.detail.push_back(std::move(dc));
  }

  std::sort(res.detail.begin(), res.detail.end(),
            [](const decomposition_cluster& x, const decomposition_cluster& y) {
              return x.members.front() < y.members.front();
            });
  std::vector<int> label(g.n, -1);
  for (int i = 0; i < static_cast<int>(res.detail.size()); ++i) {
    res.clusters.push_back(res.detail[i].members);
    for (int v : res.detail[i].members) label[v] = i;
  }
  for (auto [u, v] : g.edges)
    if (label[u] != label[v]) ++res.inter_cluster_edges;
  for (const auto& dc : res.detail)
    res.achieved_phi = std::min(res.achieved_phi, std::min(dc.phi_certified, 1.0));
  return res;
}

struct wellinked_stats {
  double final_phi = 0.0;
  int phi_retries = 0;
  int size_bound_violations = 0;
  long long inter_cluster_edges = 0;
};

// Extract disjoint (d, phi)-well-linked subsets covering at least half of U.
// The decomposer is asked for phi = 1/(8B) and its crossing budget is
// certified directly; if the decomposition exceeds the budget, phi is halved
// and the decomposition redone (coarser), which always terminates and keeps
// the |U|/2 coverage guarantee of the Markov filter intact.
inline std::vector<well_linked_cluster> wellinked_subsets(const simple_graph& g,
                                                          const std::vector<int>& u, int d,
                                                          const decomposer_options& opt = {},
                                                          wellinked_stats* stats = nullptr) {
  require(d >= 1, errc::bad_parameter, "degree threshold must be >= 1");
  for (int v : u) {
    require(v >= 0 && v < g.n, errc::out_of_range_vertex, "terminal out of range");
    require(g.degree(v) >= d, errc::degree_below_threshold,
            "vertex " + std::to_string(v) + " has degree below d");
  }
  if (u.empty()) return {};

  demand_vector demands(g.n, 0.0);
  for (int v : u) demands[v] = static_cast<double>(d);
  const long long du_total = static_cast<long long>(d) * static_cast<long long>(u.size());

  double phi = 1.0 / (8.0 * opt.declared_budget);
  decomposition_result res;
  int retries = 0;
  for (;; ++retries) {
    ensure(retries <= 64, "crossing-budget certification did not converge");
    res = expander_decompose(g, demands, phi, opt);
    if (8 * res.inter_cluster_edges <= du_total) break;
    phi /= 2.0;
  }
  if (stats) {
    stats->final_phi = phi;
    stats->phi_retries = retries;
    stats->inter_cluster_edges = res.inter_cluster_edges;
  }

  std::vector<char> in_u(g.n, 0);
  for (int v : u) in_u[v] = 1;
  std::vector<int> label(g.n, -1);
  for (int i = 0; i < static_cast<int>(res.clusters.size()); ++i)
    for (int v : res.clusters[i]) label[v] = i;
  std::vector<long long> boundary(res.clusters.size(), 0);
  for (auto [a, b] : g.edges)
    if (label[a] != label[b]) {
      ++boundary[label[a]];
      ++boundary[label[b]];
    }

  long long boundary_sum = 0;
  std::vector<well_linked_cluster> out;
  long long covered = 0;
  for (int i = 0; i < static_cast<int>(res.clusters.size()); ++i) {
    std::vector<int> xi;
    for (int v : res.clusters[i])
      if (in_u[v]) xi.push_back(v);
    ensure(!xi.empty(), "decomposition produced a demand-free cluster");
    boundary_sum += boundary[i];
    // Markov filter: keep clusters whose per-terminal boundary share x(v) is
    // at most d/2.
    if (2 * boundary[i] > static_cast<long long>(d) * static_cast<long long>(xi.size())) continue;
    covered += static_cast<long long>(xi.size());
    bool size_ok = 2 * static_cast<long long>(res.clusters[i].size()) >= d;
    if (res.detail[i].exact) {
      ensure(size_ok, "kept cluster smaller than d/2 under the exact backend");
    } else if (!size_ok && stats) {
      ++stats->size_bound_violations;
    }
    well_linked_cluster wc;
    wc.members = std::move(xi);
    wc.d = d;
    wc.host_size = static_cast<int>(res.clusters[i].size());
    wc.exact_certified = res.detail[i].exact;
    double rep = res.detail[i].phi_certified;
    if (!res.detail[i].exact)
      rep = std::min(rep, 4.0 / static_cast<double>(wc.members.size()));
    wc.phi = std::min(rep, 1.0);
    out.push_back(std::move(wc));
  }
  ensure(boundary_sum == 2 * res.inter_cluster_edges,
         "boundary accounting does not match inter-cluster edge count");
  ensure(2 * covered >= static_cast<long long>(u.size()),
         "Markov filter kept fewer than half of U");
  ensure(static_cast<long long>(out.size()) * d <= 2LL * g.n,
         "well-linked cluster count exceeds 2n/d");
  return out;
}

// Partition all of V_{>=d} into well-linked clusters by repeated halving.
inline std::vector<well_linked_cluster> partition_high_degree(const simple_graph& g, int d,
                                                              const decomposer_options& opt = {}) {
  require(d >= 1, errc::bad_parameter, "degree threshold must be >= 1");
  std::vector<int> u;
  for (int v = 0; v < g.n; ++v)
    if (g.degree(v) >= d) u.push_back(v);

  std::vector<well_linked_cluster> clusters;
  int iter = 0;
  while (!u.empty()) {
    ensure(iter <= 2 * g.n + 2, "halving loop failed to terminate");
    decomposer_options it_opt = opt;
    it_opt.seed = split_rng(opt.seed).split(static_cast<std::uint64_t>(iter)).seed();
    auto subs = wellinked_subsets(g, u, d, it_opt);
    std::vector<char> covered(g.n, 0);
    for (const auto& c : subs)
      for (int v : c.members) covered[v] = 1;
    std::vector<int> rest;
    for (int v : u)
      if (!covered[v]) rest.push_back(v);
    ensure(rest.size() < u.size(), "halving iteration made no progress");
    u = std::move(rest);
    for (auto& c : subs) clusters.push_back(std::move(c));
    ++iter;
  }
  return clusters;
}

// Exhaustive check of the well-linked definition; callable for |X| up to the
// verification cap.
inline bool verify_wellinked(const cap_graph& g, const std::vector<int>& x, int d, double phi,
                             int cap = 12) {
  require(static_cast<int>(x.size()) <= cap, errc::verification_infeasible,
          "set too large for exhaustive well-linkedness verification");
  for (int v : x) {
    require(v >= 0 && v < g.n, errc::out_of_range_vertex, "member out of range");
    if (g.degree_capacity(v) < d) return false;
  }
  int k = static_cast<int>(x.size());
  if (k <= 1) return true;
  for (std::uint32_t mask = 1; mask < (1u << (k - 1)); ++mask) {
    std::vector<int> a, b{x[0]};
    for (int i = 1; i < k; ++i)
      ((mask >> (i - 1)) & 1 ? a : b).push_back(x[i]);
    cap_t mc = set_mincut(g, a, b).value;
    double need = static_cast<double>(d) * phi * std::min(a.size(), b.size());
    if (static_cast<double>(mc) + 1e-9 < need) return false;
  }
  return true;
}

inline bool verify_wellinked(const simple_graph& g, const std::vector<int>& x, int d, double phi,
                             int cap = 12) {
  return verify_wellinked(cap_graph::from_simple(g), x, d, phi, cap);
}

}  // namespace ghcut
