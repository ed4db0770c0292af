#pragma once

#include <cmath>
#include <vector>

#include "ghcut/isolating_cuts.hpp"
#include "ghcut/rng.hpp"

namespace ghcut {

struct sampler_config {
  double rate = 0.0;  // per-vertex sampling probability, = phi/2
  int rounds = 0;     // ceil(c * ln n / phi)
  double c = 4.0;
  std::uint64_t seed = 0;
};

inline sampler_config make_sampler_config(int n, double phi, double c = 4.0,
                                          std::uint64_t seed = 0) {
  require(phi > 0.0 && phi <= 1.0, errc::invalid_phi, "phi must lie in (0, 1]");
  require(c > 0.0, errc::bad_parameter, "rounds constant must be positive");
  sampler_config cfg;
  cfg.rate = std::min(phi / 2.0, 0.5);
  cfg.rounds = std::max(1, static_cast<int>(std::ceil(c * std::log(std::max(n, 2)) / phi)));
  cfg.c = c;
  cfg.seed = seed;
  return cfg;
}

// Capped single-source mincut values for a well-linked set: val[x] converges
// to min{mincut(p,x), 2d} with high probability; deterministically val[x]
// never drops below that (every assignment is the size of a genuine
// (p,x)-cut). Witness cuts are retained alongside the values.
struct single_source_result {
  int pivot = -1;
  cap_t cap = 0;  // 2d
  std::vector<int> targets;        // X \ {p}, sorted
  std::vector<cap_t> val;          // parallel to targets
  std::vector<cut> witness;        // parallel; empty side when never improved
  std::uint64_t maxflow_calls = 0;
  int isolating_invocations = 0;
  int max_terminal_count = 0;

  cap_t value_of(int x) const {
    auto it = std::lower_bound(targets.begin(), targets.end(), x);
    require(it != targets.end() && *it == x, errc::unknown_vertex, "not a target vertex");
    return val[it - targets.begin()];
  }
};

inline single_source_result single_source_mincut(const cap_graph& g, const std::vector<int>& x,
                                                 int d, double phi, int p,
                                                 const sampler_config& cfg,
                                                 flow_counter* fc = nullptr) {
  require(std::find(x.begin(), x.end(), p) != x.end(), errc::bad_parameter,
          "pivot must belong to X");
  require(x.size() >= 2, errc::too_few_terminals, "X must have at least 2 vertices");
  require(d >= 0, errc::bad_parameter, "d must be nonnegative");
  (void)phi;  // phi is baked into cfg.rate / cfg.rounds by the caller

  single_source_result res;
  res.pivot = p;
  res.cap = 2 * static_cast<cap_t>(d);
  for (int v : x)
    if (v != p) res.targets.push_back(v);
  std::sort(res.targets.begin(), res.targets.end());
  res.val.assign(res.targets.size(), res.cap);
  res.witness.assign(res.targets.size(), cut{});

  flow_counter local;
  std::vector<int> index_of(g.n, -1);
  for (int i = 0; i < static_cast<int>(res.targets.size()); ++i) index_of[res.targets[i]] = i;

  split_rng root(cfg.seed);
  for (int round = 0; round < cfg.rounds; ++round) {
    split_rng rr = root.split(static_cast<std::uint64_t>(round));
    std::vector<int> sample;
    for (int v : res.targets)
      if (rr.bernoulli(cfg.rate)) sample.push_back(v);
    if (sample.empty()) continue;  // isolating cuts needs a second terminal

    std::vector<int> terminals = sample;
    terminals.push_back(p);
    std::sort(terminals.begin(), terminals.end());
    auto iso = isolating_cuts(g, terminals, &local);
    ++res.isolating_invocations;
    res.max_terminal_count = std::max(res.max_terminal_count, static_cast<int>(terminals.size()));

    // C_x exists for sampled x only; C_p is a (p,x)-cut for every target
    // outside it, so the pivot-side update covers unsampled targets too.
    for (int v : sample) {
      int i = index_of[v];
      const cut& cv = iso.cut_for(v);
      if (!cv.contains(p) && cv.value < res.val[i]) {
        res.val[i] = cv.value;
        res.witness[i] = cv;
      }
    }
    const cut& cp = iso.cut_for(p);
    for (int i = 0; i < static_cast<int>(res.targets.size()); ++i) {
      if (!cp.contains(res.targets[i]) && cp.value < res.val[i]) {
        res.val[i] = cp.value;
        res.witness[i] = cp;
      }
    }
  }

  res.maxflow_calls = local.calls;
  if (fc) fc->calls += local.calls;
  return res;
}

}  // namespace ghcut
