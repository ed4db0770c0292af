#include <catch2/catch.hpp>

#include "ghcut/graph.hpp"
#include "oracles.hpp"

using namespace ghcut;

TEST_CASE("build_simple_graph basic construction") {
  auto p3 = build_simple_graph(3, {{0, 1}, {1, 2}});
  REQUIRE(p3.n == 3);
  REQUIRE(p3.m() == 2);
  CHECK(p3.degree(0) == 1);
  CHECK(p3.degree(1) == 2);
  CHECK(p3.degree(2) == 1);

  auto k4 = bf::complete(4);
  REQUIRE(k4.m() == 6);
  for (int v = 0; v < 4; ++v) CHECK(k4.degree(v) == 3);
}

TEST_CASE("build_simple_graph rejects invalid input") {
  CHECK_THROWS_MATCHES(build_simple_graph(2, {{0, 0}}), validation_error,
                       Catch::Predicate<validation_error>(
                           [](const validation_error& e) { return e.code() == errc::self_loop; }));
  CHECK_THROWS_MATCHES(build_simple_graph(3, {{0, 1}, {1, 0}}), validation_error,
                       Catch::Predicate<validation_error>([](const validation_error& e) {
                         return e.code() == errc::duplicate_edge;
                       }));
  CHECK_THROWS_MATCHES(build_simple_graph(2, {{0, 2}}), validation_error,
                       Catch::Predicate<validation_error>([](const validation_error& e) {
                         return e.code() == errc::out_of_range_vertex;
                       }));
}

TEST_CASE("cap_graph merges parallel edges and drops loops") {
  auto g = cap_graph::from_edges(3, {{0, 1, 2}, {1, 0, 3}, {1, 1, 5}, {1, 2, 1}});
  REQUIRE(g.m() == 2);
  CHECK(g.edges[0].cap == 5);
  CHECK(g.edges[1].cap == 1);
  CHECK_THROWS_AS(cap_graph::from_edges(2, {{0, 1, 0}}), validation_error);
}

TEST_CASE("cut_value on fixed graphs") {
  auto c4 = cap_graph::from_simple(bf::cycle(4));
  CHECK(cut_value(c4, {0, 1}) == 2);

  auto k4 = cap_graph::from_simple(bf::complete(4));
  CHECK(cut_value(k4, {0}) == 3);

  auto bb = cap_graph::from_simple(bf::barbell(3));
  CHECK(cut_value(bb, {0, 1, 2}) == 1);

  CHECK_THROWS_AS(cut_value(k4, {}), validation_error);
  CHECK_THROWS_AS(cut_value(k4, {0, 1, 2, 3}), validation_error);
}

TEST_CASE("cut_value is symmetric in side vs complement") {
  for (std::uint64_t seed = 0; seed < 6; ++seed) {
    auto g = cap_graph::from_simple(bf::random_gnp(8, 0.4, 100 + seed));
    for (std::uint32_t mask = 1; mask < (1u << 8) - 1u; ++mask) {
      auto side = bf::mask_to_side(8, mask);
      auto comp = bf::mask_to_side(8, ~mask & 0xffu);
      REQUIRE(cut_value(g, side) == cut_value(g, comp));
    }
  }
}

TEST_CASE("contract merges crossing capacity") {
  auto p3 = bf::path(3);
  auto grp = vertex_grouping::merge_sets(3, {{0, 1}});
  auto q = contract(p3, grp);
  REQUIRE(q.n == 2);
  REQUIRE(q.m() == 1);
  CHECK(q.edges[0].cap == 1);

  auto k4 = bf::complete(4);
  auto grp2 = vertex_grouping::merge_sets(4, {{0, 1}, {2, 3}});
  auto q2 = contract(k4, grp2);
  REQUIRE(q2.n == 2);
  REQUIRE(q2.m() == 1);
  // K4 has exactly 4 pairs crossing {0,1} | {2,3}
  cap_t crossing_pairs = 0;
  for (auto [u, v] : k4.edges) crossing_pairs += (u <= 1) != (v <= 1) ? 1 : 0;
  REQUIRE(crossing_pairs == 4);
  CHECK(q2.edges[0].cap == crossing_pairs);
}

TEST_CASE("contract with identity grouping preserves the cut function") {
  for (std::uint64_t seed = 0; seed < 4; ++seed) {
    int n = 7;
    auto g = cap_graph::from_simple(bf::random_gnp(n, 0.5, 200 + seed));
    auto q = contract(g, vertex_grouping::identity(n));
    for (std::uint32_t mask = 1; mask < (1u << n) - 1u; ++mask) {
      auto side = bf::mask_to_side(n, mask);
      REQUIRE(cut_value(g, side) == cut_value(q, side));
    }
  }
}

TEST_CASE("contract preserves group-respecting cut values") {
  for (std::uint64_t seed = 0; seed < 4; ++seed) {
    int n = 9;
    auto g = cap_graph::from_simple(bf::random_gnp(n, 0.45, 300 + seed));
    auto grp = vertex_grouping::merge_sets(n, {{0, 1, 2}, {3, 4}});
    auto q = contract(g, grp);
    for (std::uint32_t gmask = 1; gmask < (1u << q.n) - 1u; ++gmask) {
      auto gside = bf::mask_to_side(q.n, gmask);
      auto side = grp.expand(gside);
      REQUIRE(cut_value(q, gside) == cut_value(g, side));
    }
  }
}

TEST_CASE("contract rejects non-total groupings") {
  auto g = cap_graph::from_simple(bf::path(3));
  vertex_grouping bad;
  bad.group_of = {0, 1};
  bad.groups = 2;
  CHECK_THROWS_MATCHES(contract(g, bad), validation_error,
                       Catch::Predicate<validation_error>([](const validation_error& e) {
                         return e.code() == errc::non_total_grouping;
                       }));
  vertex_grouping sparse;
  sparse.group_of = {0, 2, 2};
  sparse.groups = 3;
  CHECK_THROWS_AS(contract(g, sparse), validation_error);
}

TEST_CASE("vertex_grouping expand round-trips merge_sets") {
  auto grp = vertex_grouping::merge_sets(6, {{3, 4, 5}});
  REQUIRE(grp.groups == 4);
  auto blob = grp.group_of[3];
  CHECK(grp.group_of[4] == blob);
  auto orig = grp.expand({blob});
  CHECK(orig == std::vector<int>{3, 4, 5});
}
