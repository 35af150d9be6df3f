#include "sgtest/census.hpp"

#include <algorithm>
#include <cstdint>
#include <string>
#include <vector>

#include "sgtest/errors.hpp"
#include "sgtest/simd.hpp"

namespace sgt {

double choose2(double n) { return n * (n - 1.0) / 2.0; }
double choose3(double n) { return n * (n - 1.0) * (n - 2.0) / 6.0; }

namespace {

void require_at_least_three_nodes(const Graph& g, const char* what) {
  if (g.node_count() < 3) {
    throw GraphTooSmall(std::string(what) + ": need n >= 3, got n = " +
                        std::to_string(g.node_count()));
  }
}

std::uint64_t choose2_u64(std::uint64_t n) { return n * (n - 1) / 2; }

std::uint64_t choose3_u64(std::uint64_t n) {
  // n(n-1)(n-2) is divisible by 6; divide early to delay overflow.
  std::uint64_t a = n, b = n >= 1 ? n - 1 : 0, c = n >= 2 ? n - 2 : 0;
  if (a % 3 == 0) a /= 3;
  else if (b % 3 == 0) b /= 3;
  else c /= 3;
  if (a % 2 == 0) a /= 2;
  else if (b % 2 == 0) b /= 2;
  else c /= 2;
  return a * b * c;
}

// Triangles with all three nodes above are counted once: for every edge
// (u,v) with u < v we count common neighbors w > v.
std::uint64_t triangle_count(const Graph& g) {
  std::uint64_t total = 0;
  const NodeId n = g.node_count();
  for (NodeId u = 0; u < n; ++u) {
    const auto nu = g.neighbors(u);
    for (std::size_t idx = 0; idx < nu.size(); ++idx) {
      const NodeId v = nu[idx];
      if (v <= u) continue;
      const auto nv = g.neighbors(v);
      // Suffix of each list strictly above v.
      const auto u_hi = std::upper_bound(nu.begin(), nu.end(), v);
      const auto v_hi = std::upper_bound(nv.begin(), nv.end(), v);
      total += simd::intersect_count(std::span<const NodeId>(u_hi, nu.end()),
                                     std::span<const NodeId>(v_hi, nv.end()));
    }
  }
  return total;
}

}  // namespace

TripleCensus census_full(const Graph& g) {
  require_at_least_three_nodes(g, "census_full");
  const std::uint64_t n = g.node_count();
  const std::uint64_t m = g.edge_count();

  const std::uint64_t triangles = triangle_count(g);
  std::uint64_t paths2 = 0;  // paths of length two, center counted: sum C(deg,2)
  for (NodeId u = 0; u < g.node_count(); ++u) {
    paths2 += choose2_u64(g.degree(u));
  }
  const std::uint64_t vees = paths2 - 3 * triangles;
  // Each edge lies in n-2 triples; subtract the double/triple incidences.
  const std::uint64_t edge_triples = m * (n - 2) - 2 * vees - 3 * triangles;
  const std::uint64_t total = choose3_u64(n);
  const std::uint64_t empty_triples = total - edge_triples - vees - triangles;

  TripleCensus c;
  c.source = CensusSource::full_exact;
  c.n_triples = static_cast<double>(total);
  c.count_empty = static_cast<double>(empty_triples);
  c.count_edge = static_cast<double>(edge_triples);
  c.count_vee = static_cast<double>(vees);
  c.count_triangle = static_cast<double>(triangles);
  c.f0 = c.count_empty / c.n_triples;
  c.f1 = c.count_edge / c.n_triples;
  c.f2 = c.count_vee / c.n_triples;
  c.f3 = c.count_triangle / c.n_triples;
  c.p_hat = static_cast<double>(m) / static_cast<double>(choose2_u64(n));
  return c;
}

TripleCensus census_brute(const Graph& g) {
  require_at_least_three_nodes(g, "census_brute");
  const NodeId n = g.node_count();

  // Dense adjacency keeps the oracle a literal transcription of the sums.
  std::vector<std::uint8_t> adj(static_cast<std::size_t>(n) * n, 0);
  for (NodeId u = 0; u < n; ++u) {
    for (NodeId v : g.neighbors(u)) {
      adj[static_cast<std::size_t>(u) * n + v] = 1;
    }
  }

  std::uint64_t shape[4] = {0, 0, 0, 0};
  for (NodeId i = 0; i < n; ++i) {
    for (NodeId j = i + 1; j < n; ++j) {
      const std::uint8_t a_ij = adj[static_cast<std::size_t>(i) * n + j];
      for (NodeId k = j + 1; k < n; ++k) {
        const int edges = a_ij + adj[static_cast<std::size_t>(i) * n + k] +
                          adj[static_cast<std::size_t>(j) * n + k];
        ++shape[edges];
      }
    }
  }

  TripleCensus c;
  c.source = CensusSource::brute_force;
  c.n_triples = static_cast<double>(choose3_u64(n));
  c.count_empty = static_cast<double>(shape[0]);
  c.count_edge = static_cast<double>(shape[1]);
  c.count_vee = static_cast<double>(shape[2]);
  c.count_triangle = static_cast<double>(shape[3]);
  c.f0 = c.count_empty / c.n_triples;
  c.f1 = c.count_edge / c.n_triples;
  c.f2 = c.count_vee / c.n_triples;
  c.f3 = c.count_triangle / c.n_triples;
  c.p_hat = static_cast<double>(g.edge_count()) /
            static_cast<double>(choose2_u64(n));
  return c;
}

}  // namespace sgt
