#include <catch2/catch.hpp>

#include "ghcut/partial_tree.hpp"
#include "oracles.hpp"

using namespace ghcut;

namespace {

// Capture contract against independent max-flow values: pairs with mincut <= k
// lie in different parts and their tree path-min equals the mincut; no tree
// edge exceeds k.
void check_capture(const cap_graph& g, const std::vector<int>& u, cap_t k,
                   const partial_tree& pt) {
  validate_partial_tree(pt, g.n);
  for (const auto& e : pt.edges) REQUIRE(e.w <= k);
  for (std::size_t i = 0; i < u.size(); ++i) {
    for (std::size_t j = i + 1; j < u.size(); ++j) {
      cap_t mc = max_flow_value(g, u[i], u[j]);
      if (mc <= k) {
        REQUIRE(pt.part_of[u[i]] != pt.part_of[u[j]]);
        REQUIRE(path_min_weight(pt, pt.part_of[u[i]], pt.part_of[u[j]]) == mc);
      }
    }
  }
}

}  // namespace

TEST_CASE("steiner_connectivity basics") {
  auto bb = cap_graph::from_simple(bf::barbell(3));
  auto s = steiner_connectivity(bb, {0, 5});
  CHECK(!s.infinite);
  CHECK(s.value == 1);

  auto k4 = cap_graph::from_simple(bf::complete(4));
  CHECK(steiner_connectivity(k4, {0, 1, 2, 3}).value == 3);

  CHECK(steiner_connectivity(k4, {2}).infinite);
  CHECK_THROWS_AS(steiner_connectivity(k4, {}), validation_error);
}

TEST_CASE("steiner_connectivity matches brute force on random graphs") {
  for (std::uint64_t seed = 0; seed < 10; ++seed) {
    auto g = cap_graph::from_simple(bf::random_gnp(9, 0.4, 5100 + seed));
    std::vector<int> u{0, 2, 4, 6, 8};
    CHECK(steiner_connectivity(g, u).value == bf::steiner_connectivity(g, u));
  }
}

TEST_CASE("bruteforce oracle answers verification queries") {
  auto p3 = cap_graph::from_simple(bf::path(3));
  bruteforce_ssc_oracle oracle(5);
  auto flags = oracle.verify(p3, 0, {0, 1, 2}, 0, {{1, 1}, {2, 1}});
  CHECK(flags == std::vector<char>{1, 1});
  auto flags2 = oracle.verify(p3, 0, {0, 1, 2}, 0, {{1, 2}, {2, 1}});
  CHECK(flags2 == std::vector<char>{0, 1});

  bruteforce_ssc_oracle zero(0);
  auto flags3 = zero.verify(p3, 0, {0, 1, 2}, 0, {{1, 0}, {2, 0}});
  CHECK(flags3 == std::vector<char>{1, 1});
}

TEST_CASE("partial_tree_step on the star") {
  auto star = cap_graph::from_simple(bf::star(3));
  bruteforce_ssc_oracle oracle(1);
  auto st = partial_tree_step(star, 0, {0, 1, 2, 3}, 1, oracle, split_rng(11));
  REQUIRE(st.level >= 0);
  CHECK(st.d_set == std::vector<int>{1, 2, 3});
  for (const auto& [v, c] : st.cuts) {
    CHECK(c.side == std::vector<int>{v});
    CHECK(c.value == 1);
  }
  REQUIRE(!st.r_levels.empty());
  CHECK(st.r_levels[0] == std::vector<int>{0, 1, 2, 3});
}

TEST_CASE("partial_tree_step degenerates on a single terminal") {
  auto p3 = cap_graph::from_simple(bf::path(3));
  bruteforce_ssc_oracle oracle(1);
  auto st = partial_tree_step(p3, 1, {1}, 1, oracle, split_rng(3));
  CHECK(st.level == -1);
  CHECK(st.d_set.empty());
  CHECK(st.cuts.empty());
}

TEST_CASE("partial_tree_step on the barbell pair") {
  auto bb = cap_graph::from_simple(bf::barbell(3));
  bruteforce_ssc_oracle oracle(2);
  auto st = partial_tree_step(bb, 0, {0, 5}, 2, oracle, split_rng(7));
  REQUIRE(st.level >= 0);
  CHECK(st.d_set == std::vector<int>{5});
  REQUIRE(st.cuts.size() == 1);
  CHECK(st.cuts[0].first == 5);
  CHECK(st.cuts[0].second.side == std::vector<int>{3, 4, 5});
  CHECK(st.cuts[0].second.value == 1);
}

TEST_CASE("step soundness: recorded cuts are verified small-side mincuts") {
  for (std::uint64_t seed = 0; seed < 15; ++seed) {
    auto g = cap_graph::from_simple(bf::random_gnp(11, 0.35, 5400 + seed));
    std::vector<int> u{0, 1, 3, 5, 7, 9};
    int s = 0;
    cap_t k = 3;
    bruteforce_ssc_oracle oracle(k);
    auto st = partial_tree_step(g, s, u, k, oracle, split_rng(seed));
    if (st.level < 0) continue;
    for (const auto& [v, c] : st.cuts) {
      REQUIRE(c.contains(v));
      REQUIRE(!c.contains(s));
      REQUIRE(cut_value(g, c.side) == c.value);
      REQUIRE(c.value == std::min<cap_t>(max_flow_value(g, s, v), k));
      std::size_t in_side = 0;
      for (int w : c.side)
        if (std::find(u.begin(), u.end(), w) != u.end()) ++in_side;
      REQUIRE(2 * in_side <= u.size());
    }
    // d_set is exactly the union of recorded sides restricted to U
    std::vector<int> d_ref;
    for (const auto& [v, c] : st.cuts) {
      (void)v;
      for (int w : c.side)
        if (std::find(u.begin(), u.end(), w) != u.end()) d_ref.push_back(w);
    }
    std::sort(d_ref.begin(), d_ref.end());
    REQUIRE(st.d_set == d_ref);
  }
}

TEST_CASE("build_partial_tree on fixed graphs") {
  auto bb = cap_graph::from_simple(bf::barbell(3));
  bruteforce_ssc_oracle oracle1(1);
  auto pt = build_partial_tree(bb, {0, 1, 2, 3, 4, 5}, 1, oracle1, split_rng(42));
  REQUIRE(pt.terminals.size() == 2);
  REQUIRE(pt.edges.size() == 1);
  CHECK(pt.edges[0].w == 1);
  std::vector<int> left{pt.part_of[0], pt.part_of[1], pt.part_of[2]};
  CHECK((left[0] == left[1] && left[1] == left[2]));
  CHECK(pt.part_of[3] == pt.part_of[4]);
  CHECK(pt.part_of[4] == pt.part_of[5]);
  CHECK(pt.part_of[0] != pt.part_of[5]);

  auto k4 = cap_graph::from_simple(bf::complete(4));
  bruteforce_ssc_oracle oracle2(2);
  auto pt2 = build_partial_tree(k4, {0, 1, 2, 3}, 2, oracle2, split_rng(1));
  CHECK(pt2.terminals.size() == 1);
  CHECK(pt2.edges.empty());

  auto p3 = cap_graph::from_simple(bf::path(3));
  bruteforce_ssc_oracle oracle3(1);
  auto pt3 = build_partial_tree(p3, {0, 1, 2}, 1, oracle3, split_rng(5));
  REQUIRE(pt3.terminals == std::vector<int>{0, 1, 2});
  for (const auto& e : pt3.edges) CHECK(e.w == 1);
  check_capture(p3, {0, 1, 2}, 1, pt3);
}

TEST_CASE("build_partial_tree capture contract on random graphs") {
  for (std::uint64_t seed = 0; seed < 30; ++seed) {
    split_rng rng(6200 + seed);
    int n = 5 + static_cast<int>(rng.below(9));
    double p = 0.25 + 0.15 * static_cast<double>(rng.below(5));
    auto g = cap_graph::from_simple(bf::random_gnp(n, p, 6600 + seed));
    std::vector<int> u;
    for (int v = 0; v < n; ++v)
      if (rng.bernoulli(0.6)) u.push_back(v);
    if (u.empty()) u.push_back(0);
    cap_t k = 1 + static_cast<cap_t>(rng.below(4));
    bruteforce_ssc_oracle oracle(k);
    pt_stats stats;
    auto pt = build_partial_tree(g, u, k, oracle, split_rng(seed), {}, &stats);
    check_capture(g, u, k, pt);
    CHECK(stats.max_depth <= n);
  }
}

TEST_CASE("build_partial_tree handles disconnected graphs with zero cuts") {
  auto g = cap_graph::from_simple(build_simple_graph(4, {{0, 1}, {2, 3}}));
  bruteforce_ssc_oracle oracle(2);
  auto pt = build_partial_tree(g, {0, 1, 2, 3}, 2, oracle, split_rng(9));
  check_capture(g, {0, 1, 2, 3}, 2, pt);
  bool has_zero = false;
  for (const auto& e : pt.edges) has_zero |= e.w == 0;
  CHECK(has_zero);
}

TEST_CASE("quotient graphs preserve terminal mincuts") {
  for (std::uint64_t seed = 0; seed < 10; ++seed) {
    auto g = cap_graph::from_simple(bf::random_gnp(10, 0.4, 7000 + seed));
    std::vector<int> u{0, 1, 2, 4, 6, 8};
    cap_t k = 3;
    bruteforce_ssc_oracle oracle(k);
    auto st = partial_tree_step(g, 0, u, k, oracle, split_rng(31 + seed));
    if (st.level < 0) continue;

    std::vector<std::vector<int>> sides;
    for (const auto& [v, c] : st.cuts) {
      (void)v;
      sides.push_back(c.side);
    }
    auto grp = vertex_grouping::merge_sets(g.n, sides);
    auto gl = contract(g, grp);
    std::vector<int> ul;
    for (int w : u)
      if (std::find(st.d_set.begin(), st.d_set.end(), w) == st.d_set.end()) ul.push_back(w);
    for (std::size_t i = 0; i < ul.size(); ++i)
      for (std::size_t j = i + 1; j < ul.size(); ++j)
        REQUIRE(max_flow_value(gl, grp.group_of[ul[i]], grp.group_of[ul[j]]) ==
                max_flow_value(g, ul[i], ul[j]));

    for (const auto& [v, c] : st.cuts) {
      std::vector<int> complement;
      std::vector<char> in_side(g.n, 0);
      for (int w : c.side) in_side[w] = 1;
      for (int w = 0; w < g.n; ++w)
        if (!in_side[w]) complement.push_back(w);
      auto grp_v = vertex_grouping::merge_sets(g.n, {complement});
      auto gv = contract(g, grp_v);
      std::vector<int> uv;
      for (int w : c.side)
        if (std::find(u.begin(), u.end(), w) != u.end()) uv.push_back(w);
      (void)v;
      for (std::size_t i = 0; i < uv.size(); ++i)
        for (std::size_t j = i + 1; j < uv.size(); ++j)
          REQUIRE(max_flow_value(gv, grp_v.group_of[uv[i]], grp_v.group_of[uv[j]]) ==
                  max_flow_value(g, uv[i], uv[j]));
    }
  }
}

TEST_CASE("combine identity and smallest cases") {
  // zero subtrees: the large fragment passes through unchanged
  partial_tree large = partial_tree::trivial(4, 1);
  auto out = combine(4, large, {});
  CHECK(out.terminals == std::vector<int>{1});
  CHECK(out.edges.empty());

  // smallest combine: one two-sided split
  partial_tree big;
  big.terminals = {0};
  big.part_of = {0, 0, -1, -1};
  partial_tree frag;
  frag.terminals = {2};
  frag.part_of = {-1, -1, 2, 2};
  combine_branch br;
  br.v = 2;
  br.cut_weight = 1;
  br.fragment = frag;
  br.anchor_x = 2;
  br.anchor_y = 0;
  auto joined = combine(4, big, {br});
  REQUIRE(joined.terminals == std::vector<int>{0, 2});
  REQUIRE(joined.edges.size() == 1);
  CHECK(joined.edges[0].w == 1);

  // missing anchor is an error
  combine_branch bad = br;
  bad.anchor_y = 3;
  CHECK_THROWS_MATCHES(combine(4, big, {bad}), validation_error,
                       Catch::Predicate<validation_error>([](const validation_error& e) {
                         return e.code() == errc::missing_anchor;
                       }));
}

TEST_CASE("split_part performs a classical split") {
  auto bb = cap_graph::from_simple(bf::barbell(3));
  auto pt = partial_tree::trivial(6, 0);
  auto w = split_part(pt, bb, 0, 5);
  REQUIRE(w.has_value());
  CHECK(*w == 1);
  validate_partial_tree(pt, 6);
  CHECK(pt.part_of[4] == 5);
  CHECK(pt.part_of[1] == 0);

  // a capped split that exceeds the cap leaves the tree untouched
  auto pt2 = partial_tree::trivial(6, 0);
  auto w2 = split_part(pt2, bb, 0, 1, 1);
  CHECK(!w2.has_value());
  CHECK(pt2.terminals == std::vector<int>{0});
}

namespace {

// Adversarial oracle violating its contract by rejecting every claim; the
// construction must survive on fallback splits alone.
class always_false_oracle : public ssc_oracle {
 public:
  explicit always_false_oracle(cap_t k) : k_(k) {}
  cap_t cap() const override { return k_; }
  std::vector<char> verify(const cap_graph&, std::uint64_t, const std::vector<int>&, int,
                           const std::vector<std::pair<int, cap_t>>& claims) override {
    return std::vector<char>(claims.size(), 0);
  }

 private:
  cap_t k_;
};

}  // namespace

TEST_CASE("zero oracle progress degrades to classical fallback splits") {
  for (std::uint64_t seed = 0; seed < 8; ++seed) {
    auto g = cap_graph::from_simple(bf::random_gnp(10, 0.45, 13000 + seed));
    std::vector<int> u{0, 1, 2, 3, 4, 5, 6};
    cap_t k = 3;
    always_false_oracle oracle(k);
    pt_options opt;
    opt.retry_cap = 0;
    pt_stats stats;
    auto pt = build_partial_tree(g, u, k, oracle, split_rng(seed), opt, &stats);
    bool any_low_pair = false;
    for (std::size_t i = 0; i < u.size(); ++i)
      for (std::size_t j = i + 1; j < u.size(); ++j) {
        cap_t mc = max_flow_value(g, u[i], u[j]);
        if (mc > k) continue;
        any_low_pair = true;
        REQUIRE(pt.part_of[u[i]] != pt.part_of[u[j]]);
        REQUIRE(path_min_weight(pt, pt.part_of[u[i]], pt.part_of[u[j]]) == mc);
      }
    for (const auto& e : pt.edges) REQUIRE(e.w <= k);
    if (any_low_pair) REQUIRE(stats.fallback_splits > 0);
  }
}
