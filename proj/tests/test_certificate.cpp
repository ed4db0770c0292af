#include <catch2/catch.hpp>

#include "ghcut/certificate.hpp"
#include "oracles.hpp"

using namespace ghcut;

namespace {

// Exhaustive certificate check over all proper sides.
void check_certificate(const simple_graph& g, const simple_graph& h, int k) {
  REQUIRE(g.n == h.n);
  // subgraph
  for (auto e : h.edges) REQUIRE(g.has_edge(e.first, e.second));
  REQUIRE(h.m() <= std::min<long long>(g.m(), static_cast<long long>(k) * (g.n - 1)));
  auto gc = cap_graph::from_simple(g);
  auto hc = cap_graph::from_simple(h);
  std::uint32_t all = (1u << g.n) - 1u;
  for (std::uint32_t mask = 1; mask < all; ++mask) {
    if (!(mask & 1u)) continue;  // complements are symmetric; fix vertex 0 inside
    cap_t wg = bf::crossing(gc, mask);
    cap_t wh = bf::crossing(hc, mask);
    REQUIRE(wh <= wg);
    REQUIRE(wh >= std::min<cap_t>(wg, k));
  }
}

}  // namespace

TEST_CASE("sparsify fixed cases") {
  auto p3 = bf::path(3);
  for (int k : {1, 2, 5}) {
    auto h = sparsify(p3, k);
    CHECK(h.edges == p3.edges);
  }

  auto k4 = bf::complete(4);
  auto h3 = sparsify(k4, 3);
  CHECK(h3.m() == 6);
  check_certificate(k4, h3, 3);

  auto h1 = sparsify(k4, 1);
  CHECK(h1.m() == 3);  // spanning tree of a connected graph
  check_certificate(k4, h1, 1);

  CHECK_THROWS_AS(sparsify(p3, 0), validation_error);
}

TEST_CASE("sparsify of a disconnected graph keeps a spanning forest per component") {
  auto g = build_simple_graph(5, {{0, 1}, {1, 2}, {0, 2}, {3, 4}});
  auto h = sparsify(g, 1);
  CHECK(h.m() == 3);
  check_certificate(g, h, 1);
}

TEST_CASE("certificate property on random graphs, exhaustive sides") {
  for (std::uint64_t seed = 0; seed < 25; ++seed) {
    split_rng rng(4100 + seed);
    int n = 4 + static_cast<int>(rng.below(8));
    double p = 0.2 + 0.15 * static_cast<double>(rng.below(5));
    auto g = bf::random_gnp(n, p, 1300 + seed);
    for (int k : {1, 2, 3, n}) {
      auto h = sparsify(g, k);
      check_certificate(g, h, k);
    }
  }
}

TEST_CASE("sparsify is stable under re-sparsification") {
  for (std::uint64_t seed = 0; seed < 8; ++seed) {
    auto g = bf::random_gnp(9, 0.5, 1500 + seed);
    for (int k : {1, 2, 3}) {
      auto h = sparsify(g, k);
      auto hh = sparsify(h, k);
      check_certificate(g, hh, k);
    }
  }
}
