#pragma once

#include <charconv>
#include <sstream>
#include <string>
#include <string_view>

#include "ghcut/partial_tree.hpp"
#include "ghcut/rng.hpp"

namespace ghcut {

namespace detail {

inline std::vector<std::string_view> split_ws(std::string_view line) {
  std::vector<std::string_view> out;
  std::size_t i = 0;
  while (i < line.size()) {
    while (i < line.size() && (line[i] == ' ' || line[i] == '\t' || line[i] == '\r')) ++i;
    std::size_t j = i;
    while (j < line.size() && line[j] != ' ' && line[j] != '\t' && line[j] != '\r') ++j;
    if (j > i) out.push_back(line.substr(i, j - i));
    i = j;
  }
  return out;
}

inline long long parse_int(std::string_view tok, const char* what) {
  long long value = 0;
  auto [p, ec] = std::from_chars(tok.data(), tok.data() + tok.size(), value);
  require(ec == std::errc() && p == tok.data() + tok.size(), errc::malformed_input,
          std::string("expected an integer for ") + what);
  return value;
}

}  // namespace detail

// Graph format: optional `c` comment lines, a header `p ghcut <n> <m>`, then
// exactly m lines `e <u> <v>` with 1-based vertex ids.
inline simple_graph parse_graph(std::string_view text) {
  std::istringstream in{std::string(text)};
  std::string line;
  long long n = -1, m = -1;
  std::vector<std::pair<int, int>> pairs;
  while (std::getline(in, line)) {
    auto toks = detail::split_ws(line);
    if (toks.empty() || toks[0] == "c") continue;
    if (toks[0] == "p") {
      require(n == -1, errc::malformed_input, "duplicate header line");
      require(toks.size() == 4 && toks[1] == "ghcut", errc::malformed_input,
              "header must be `p ghcut <n> <m>`");
      n = detail::parse_int(toks[2], "vertex count");
      m = detail::parse_int(toks[3], "edge count");
      require(n >= 0 && m >= 0, errc::malformed_input, "counts must be nonnegative");
    } else if (toks[0] == "e") {
      require(n != -1, errc::malformed_input, "edge line before header");
      require(toks.size() == 3, errc::malformed_input, "edge line must be `e <u> <v>`");
      long long u = detail::parse_int(toks[1], "edge endpoint");
      long long v = detail::parse_int(toks[2], "edge endpoint");
      require(u >= 1 && u <= n && v >= 1 && v <= n, errc::out_of_range_vertex,
              "edge endpoint outside [1, n]");
      pairs.emplace_back(static_cast<int>(u - 1), static_cast<int>(v - 1));
    } else {
      throw validation_error(errc::malformed_input, "unrecognized line: " + line);
    }
  }
  require(n != -1, errc::malformed_input, "missing header line");
  require(static_cast<long long>(pairs.size()) == m, errc::count_mismatch,
          "edge count does not match the header");
  return build_simple_graph(static_cast<int>(n), pairs);  // rejects loops/duplicates
}

inline std::string emit_graph(const simple_graph& g) {
  std::ostringstream out;
  out << "p ghcut " << g.n << ' ' << g.m() << '\n';
  for (auto [u, v] : g.edges) out << "e " << u + 1 << ' ' << v + 1 << '\n';
  return out.str();
}

// Tree format: header `t ghtree <n>`, then n-1 lines `te <u> <v> <w>`,
// 1-based ids, sorted by (u, v).
inline std::string emit_tree(const partial_tree& t) {
  int n = static_cast<int>(t.part_of.size());
  require(static_cast<int>(t.terminals.size()) == n, errc::non_spanning_tree,
          "emit_tree needs a spanning tree");
  std::vector<partial_tree::edge> edges = t.edges;
  for (auto& e : edges)
    if (e.u > e.v) std::swap(e.u, e.v);
  std::sort(edges.begin(), edges.end(), [](const auto& a, const auto& b) {
    return std::tie(a.u, a.v) < std::tie(b.u, b.v);
  });
  std::ostringstream out;
  out << "t ghtree " << n << '\n';
  for (const auto& e : edges) out << "te " << e.u + 1 << ' ' << e.v + 1 << ' ' << e.w << '\n';
  return out.str();
}

inline partial_tree parse_tree(std::string_view text) {
  std::istringstream in{std::string(text)};
  std::string line;
  long long n = -1;
  std::vector<partial_tree::edge> edges;
  while (std::getline(in, line)) {
    auto toks = detail::split_ws(line);
    if (toks.empty() || toks[0] == "c") continue;
    if (toks[0] == "t") {
      require(n == -1, errc::malformed_input, "duplicate header line");
      require(toks.size() == 3 && toks[1] == "ghtree", errc::malformed_input,
              "header must be `t ghtree <n>`");
      n = detail::parse_int(toks[2], "vertex count");
      require(n >= 1, errc::malformed_input, "tree needs at least one vertex");
    } else if (toks[0] == "te") {
      require(n != -1, errc::malformed_input, "edge line before header");
      require(toks.size() == 4, errc::malformed_input, "edge line must be `te <u> <v> <w>`");
      long long u = detail::parse_int(toks[1], "edge endpoint");
      long long v = detail::parse_int(toks[2], "edge endpoint");
      long long w = detail::parse_int(toks[3], "edge weight");
      require(u >= 1 && u <= n && v >= 1 && v <= n, errc::out_of_range_vertex,
              "edge endpoint outside [1, n]");
      require(u != v, errc::self_loop, "tree edge endpoints must differ");
      require(w >= 0, errc::malformed_input, "edge weight must be nonnegative");
      edges.push_back({static_cast<int>(u - 1), static_cast<int>(v - 1), w});
    } else {
      throw validation_error(errc::malformed_input, "unrecognized line: " + line);
    }
  }
  require(n != -1, errc::malformed_input, "missing header line");
  require(static_cast<long long>(edges.size()) == n - 1, errc::count_mismatch,
          "tree must have exactly n-1 edges");
  partial_tree t;
  t.part_of.resize(static_cast<std::size_t>(n));
  t.terminals.resize(static_cast<std::size_t>(n));
  for (int v = 0; v < n; ++v) {
    t.terminals[v] = v;
    t.part_of[v] = v;
  }
  t.edges = std::move(edges);
  try {
    validate_partial_tree(t, static_cast<int>(n));
  } catch (const invariant_violation& e) {
    throw validation_error(errc::malformed_input, e.what());
  }
  return t;
}

// ---------------------------------------------------------------------------
// Deterministic graph generators
// ---------------------------------------------------------------------------

struct gen_params {
  int n = 0;
  double p = 0.5;
  int size = 3;       // barbell clique size
  int rows = 3;
  int cols = 3;
  int degree = 3;     // regular-ish target degree
  int clusters = 2;   // planted-clusters count
  double p_in = 0.8;
  double p_out = 0.1;
};

inline simple_graph generate(const std::string& family, const gen_params& params,
                             std::uint64_t seed) {
  split_rng rng(split_rng(seed).split(0x67656eull).seed());
  if (family == "gnp") {
    require(params.n >= 1, errc::bad_parameter, "gnp needs n >= 1");
    require(params.p >= 0.0 && params.p <= 1.0, errc::bad_parameter, "gnp needs p in [0,1]");
    std::vector<std::pair<int, int>> pairs;
    for (int u = 0; u < params.n; ++u)
      for (int v = u + 1; v < params.n; ++v)
        if (rng.bernoulli(params.p)) pairs.emplace_back(u, v);
    return build_simple_graph(params.n, pairs);
  }
  if (family == "barbell") {
    require(params.size >= 1, errc::bad_parameter, "barbell needs size >= 1");
    int k = params.size;
    std::vector<std::pair<int, int>> pairs;
    for (int u = 0; u < k; ++u)
      for (int v = u + 1; v < k; ++v) {
        pairs.emplace_back(u, v);
        pairs.emplace_back(k + u, k + v);
      }
    pairs.emplace_back(k - 1, k);
    return build_simple_graph(2 * k, pairs);
  }
  if (family == "grid") {
    require(params.rows >= 1 && params.cols >= 1, errc::bad_parameter,
            "grid needs positive dimensions");
    auto id = [&](int r, int c) { return r * params.cols + c; };
    std::vector<std::pair<int, int>> pairs;
    for (int r = 0; r < params.rows; ++r)
      for (int c = 0; c < params.cols; ++c) {
        if (c + 1 < params.cols) pairs.emplace_back(id(r, c), id(r, c + 1));
        if (r + 1 < params.rows) pairs.emplace_back(id(r, c), id(r + 1, c));
      }
    return build_simple_graph(params.rows * params.cols, pairs);
  }
  if (family == "regular-ish") {
    require(params.n >= 2 && params.degree >= 1 && params.degree < params.n, errc::bad_parameter,
            "regular-ish needs 1 <= degree < n");
    // stub matching with rejection of loops and duplicates; best effort, so
    // a few vertices may end below the target degree
    std::vector<std::pair<int, int>> pairs;
    std::vector<char> used(static_cast<std::size_t>(params.n) * params.n, 0);
    std::vector<int> deg(params.n, 0);
    int attempts = params.n * params.degree * 20;
    while (attempts-- > 0) {
      int u = static_cast<int>(rng.below(params.n));
      int v = static_cast<int>(rng.below(params.n));
      if (u == v || deg[u] >= params.degree || deg[v] >= params.degree) continue;
      if (used[u * params.n + v]) continue;
      used[u * params.n + v] = used[v * params.n + u] = 1;
      ++deg[u];
      ++deg[v];
      pairs.emplace_back(u, v);
    }
    return build_simple_graph(params.n, pairs);
  }
  if (family == "planted-clusters") {
    require(params.n >= 1 && params.clusters >= 1 && params.clusters <= params.n,
            errc::bad_parameter, "planted-clusters needs 1 <= clusters <= n");
    require(params.p_in >= 0.0 && params.p_in <= 1.0 && params.p_out >= 0.0 && params.p_out <= 1.0,
            errc::bad_parameter, "probabilities must lie in [0,1]");
    std::vector<std::pair<int, int>> pairs;
    auto cluster_of = [&](int v) { return v % params.clusters; };
    for (int u = 0; u < params.n; ++u)
      for (int v = u + 1; v < params.n; ++v) {
        double p = cluster_of(u) == cluster_of(v) ? params.p_in : params.p_out;
        if (rng.bernoulli(p)) pairs.emplace_back(u, v);
      }
    return build_simple_graph(params.n, pairs);
  }
  throw validation_error(errc::bad_parameter, "unknown family: " + family);
}

}  // namespace ghcut
