#include <doctest.h>

#include "sgtest/census.hpp"
#include "sgtest/errors.hpp"
#include "test_util.hpp"

using namespace sgt;
using sgtest_testing::complement_of;
using sgtest_testing::complete_graph;
using sgtest_testing::random_graph;

namespace {

void check_equal_censuses(const TripleCensus& a, const TripleCensus& b) {
  CHECK(a.n_triples == b.n_triples);
  CHECK(a.count_empty == b.count_empty);
  CHECK(a.count_edge == b.count_edge);
  CHECK(a.count_vee == b.count_vee);
  CHECK(a.count_triangle == b.count_triangle);
  CHECK(a.f0 == b.f0);
  CHECK(a.f1 == b.f1);
  CHECK(a.f2 == b.f2);
  CHECK(a.f3 == b.f3);
  CHECK(a.p_hat == b.p_hat);
}

}  // namespace

TEST_CASE("triangle census of K3") {
  const auto c = census_full(complete_graph(3));
  CHECK(c.f3 == 1.0);
  CHECK(c.f2 == 0.0);
  CHECK(c.f1 == 0.0);
  CHECK(c.f0 == 0.0);
  CHECK(c.p_hat == 1.0);
}

TEST_CASE("path on three nodes is one vee") {
  const auto c = census_full(Graph::from_edges(3, {{0, 1}, {1, 2}}));
  CHECK(c.f2 == 1.0);
  CHECK(c.f3 == 0.0);
  CHECK(c.p_hat == doctest::Approx(2.0 / 3.0));
}

TEST_CASE("empty graph census") {
  const auto c = census_full(Graph::from_edges(4, {}));
  CHECK(c.f0 == 1.0);
  CHECK(c.p_hat == 0.0);
  CHECK(c.count_empty == 4.0);  // C(4,3)
}

TEST_CASE("census needs three nodes") {
  CHECK_THROWS_AS(census_full(Graph::from_edges(2, {})), GraphTooSmall);
  CHECK_THROWS_AS(census_brute(Graph::from_edges(2, {})), GraphTooSmall);
}

TEST_CASE("brute census on K4 and the 3-star") {
  const auto k4 = census_brute(complete_graph(4));
  CHECK(k4.count_triangle == 4.0);
  CHECK(k4.count_vee == 0.0);

  const auto star = census_brute(Graph::from_edges(4, {{0, 1}, {0, 2}, {0, 3}}));
  CHECK(star.count_vee == 3.0);
  CHECK(star.count_edge == 0.0);
  CHECK(star.count_triangle == 0.0);
  CHECK(star.count_empty == 1.0);
}

TEST_CASE("oracle equivalence: closed-form census equals brute force") {
  const double p_grid[] = {0.05, 0.2, 0.35, 0.5, 0.65, 0.8, 0.95};
  std::uint64_t seed = 1000;
  for (int rep = 0; rep < 60; ++rep) {
    const auto n = static_cast<std::uint32_t>(3 + (rep * 7) % 58);
    const double p = p_grid[rep % 7];
    const Graph g = random_graph(n, p, seed++);
    check_equal_censuses(census_full(g), census_brute(g));
  }
}

TEST_CASE("shape counts sum to C(n,3)") {
  for (std::uint64_t seed = 5; seed < 25; ++seed) {
    const auto n = static_cast<std::uint32_t>(3 + seed * 3 % 60);
    const auto c = census_full(random_graph(n, 0.4, seed));
    CHECK(c.count_empty + c.count_edge + c.count_vee + c.count_triangle ==
          choose3(n));
    CHECK(c.f0 + c.f1 + c.f2 + c.f3 == doctest::Approx(1.0).epsilon(1e-12));
  }
}

TEST_CASE("complement duality swaps shape frequencies") {
  for (std::uint64_t seed = 60; seed < 75; ++seed) {
    const auto n = static_cast<std::uint32_t>(4 + seed % 40);
    const Graph g = random_graph(n, 0.3, seed);
    const auto c = census_full(g);
    const auto cc = census_full(complement_of(g));
    CHECK(cc.count_empty == c.count_triangle);
    CHECK(cc.count_edge == c.count_vee);
    CHECK(cc.count_vee == c.count_edge);
    CHECK(cc.count_triangle == c.count_empty);
    CHECK(cc.p_hat == doctest::Approx(1.0 - c.p_hat).epsilon(1e-14));
  }
}

TEST_CASE("adding an edge never decreases the triangle count") {
  Rng rng(4242);
  Graph g = random_graph(40, 0.1, 11);
  double triangles = census_full(g).count_triangle;
  auto edges = g.edges();
  for (int step = 0; step < 25; ++step) {
    const auto u = static_cast<NodeId>(rng.next_below(40));
    const auto v = static_cast<NodeId>(rng.next_below(40));
    if (u == v || g.has_edge(u, v)) continue;
    edges.emplace_back(u, v);
    g = Graph::from_edges(40, edges);
    const double after = census_full(g).count_triangle;
    CHECK(after >= triangles);
    triangles = after;
  }
}
