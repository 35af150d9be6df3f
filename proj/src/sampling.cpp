#include "sgtest/sampling.hpp"

#include <algorithm>
#include <string>
#include <vector>

#include "sgtest/errors.hpp"
#include "sgtest/simd.hpp"

namespace sgt {

namespace {

void require_n3(std::uint32_t n, const char* what) {
  if (n < 3) {
    throw GraphTooSmall(std::string(what) + ": need n >= 3, got n = " +
                        std::to_string(n));
  }
}

// Triangles through node i, i.e. edges among N(i): for each neighbor j,
// common neighbors of i and j strictly above j.
std::uint64_t triangles_through(const Graph& g, NodeId i) {
  std::uint64_t count = 0;
  const auto ni = g.neighbors(i);
  for (NodeId j : ni) {
    const auto nj = g.neighbors(j);
    const auto j_hi = std::upper_bound(nj.begin(), nj.end(), j);
    const auto i_hi = std::upper_bound(ni.begin(), ni.end(), j);
    count += simd::intersect_count(std::span<const NodeId>(i_hi, ni.end()),
                                   std::span<const NodeId>(j_hi, nj.end()));
  }
  return count;
}

}  // namespace

void validate_plan(const SamplingPlan& plan, std::uint32_t n) {
  require_n3(n, "sampling plan");
  if (const auto* node = std::get_if<NodeSamplePlan>(&plan.variant)) {
    if (node->m < 1 || node->m > n) {
      throw BadSampleSize("node sample size m = " + std::to_string(node->m) +
                          " outside [1, " + std::to_string(n) + "]");
    }
  } else if (const auto* trip = std::get_if<TripleSamplePlan>(&plan.variant)) {
    if (trip->b < 1) {
      throw BadSampleSize("triple sample size b must be >= 1");
    }
  }
}

TripleCensus node_sample_census(const Graph& g, std::uint32_t m, Rng& rng) {
  const std::uint32_t n = g.node_count();
  require_n3(n, "node_sample_census");
  if (m < 1 || m > n) {
    throw BadSampleSize("node sample size m = " + std::to_string(m) +
                        " outside [1, " + std::to_string(n) + "]");
  }

  // Uniform m-subset without replacement (partial Fisher-Yates over ids).
  std::vector<NodeId> pool(n);
  for (NodeId i = 0; i < n; ++i) pool[i] = i;
  for (std::uint32_t t = 0; t < m; ++t) {
    const auto pick = t + rng.next_below(n - t);
    std::swap(pool[t], pool[pick]);
  }

  const std::uint64_t mm = g.edge_count();
  std::uint64_t edge_incidence = 0;  // sum over sampled triples of their edge count
  std::uint64_t tri = 0;
  std::uint64_t vee = 0;
  for (std::uint32_t t = 0; t < m; ++t) {
    const NodeId i = pool[t];
    const std::uint64_t d = g.degree(i);
    // Over all pairs {j<k : j,k != i}: sum of A_ij + A_ik + A_jk.
    edge_incidence += (n - 3) * d + mm;
    const std::uint64_t tri_i = triangles_through(g, i);
    std::uint64_t neighbor_deg = 0;
    for (NodeId j : g.neighbors(i)) neighbor_deg += g.degree(j) - 1;
    // V-shaped triples through i: pairs-of-neighbors plus center-at-neighbor
    // paths, minus three per triangle.
    vee += d * (d - 1) / 2 + neighbor_deg - 3 * tri_i;
    tri += tri_i;
  }

  TripleCensus c;
  c.source = CensusSource::node_sample;
  c.n_triples = static_cast<double>(m) * choose2(static_cast<double>(n) - 1.0);
  c.count_triangle = static_cast<double>(tri);
  c.count_vee = static_cast<double>(vee);
  // Exactly one edge: total edge incidences minus two per vee, three per
  // triangle; the remainder of the multiset is empty triples.
  c.count_edge = static_cast<double>(edge_incidence) - 2.0 * c.count_vee -
                 3.0 * c.count_triangle;
  c.count_empty =
      c.n_triples - c.count_edge - c.count_vee - c.count_triangle;
  c.f0 = c.count_empty / c.n_triples;
  c.f1 = c.count_edge / c.n_triples;
  c.f2 = c.count_vee / c.n_triples;
  c.f3 = c.count_triangle / c.n_triples;
  c.p_hat = static_cast<double>(edge_incidence) / (3.0 * c.n_triples);
  return c;
}

TripleCensus triple_sample_census(const Graph& g, std::uint64_t b, Rng& rng) {
  const std::uint32_t n = g.node_count();
  require_n3(n, "triple_sample_census");
  if (b < 1) throw BadSampleSize("triple sample size b must be >= 1");

  std::uint64_t edge_incidence = 0;
  std::uint64_t shape[4] = {0, 0, 0, 0};
  for (std::uint64_t t = 0; t < b; ++t) {
    const auto [i, j, k] = rng.distinct_triple(n);
    const int edges = static_cast<int>(g.has_edge(i, j)) +
                      static_cast<int>(g.has_edge(i, k)) +
                      static_cast<int>(g.has_edge(j, k));
    edge_incidence += static_cast<std::uint64_t>(edges);
    ++shape[edges];
  }

  TripleCensus c;
  c.source = CensusSource::triple_sample;
  c.n_triples = static_cast<double>(b);
  c.count_empty = static_cast<double>(shape[0]);
  c.count_edge = static_cast<double>(shape[1]);
  c.count_vee = static_cast<double>(shape[2]);
  c.count_triangle = static_cast<double>(shape[3]);
  c.f0 = c.count_empty / c.n_triples;
  c.f1 = c.count_edge / c.n_triples;
  c.f2 = c.count_vee / c.n_triples;
  c.f3 = c.count_triangle / c.n_triples;
  c.p_hat = static_cast<double>(edge_incidence) / (3.0 * c.n_triples);
  return c;
}

double f_norm(std::uint32_t n, std::uint32_t m) {
  require_n3(n, "f_norm");
  if (m < 1 || m > n) {
    throw BadSampleSize("f_norm: m = " + std::to_string(m) + " outside [1, " +
                        std::to_string(n) + "]");
  }
  const double nd = n, md = m;
  const double numerator =
      md * md * (nd - 1.0) * (nd - 1.0) * (nd - 2.0) * (nd - 2.0);
  const double denominator = 36.0 * choose3(md) +
                             16.0 * choose2(md) * (nd - md) +
                             4.0 * md * choose2(nd - md);
  return numerator / denominator;
}

double effective_n(const SamplingPlan& plan, std::uint32_t n) {
  validate_plan(plan, n);
  const double total = choose3(static_cast<double>(n));
  if (std::holds_alternative<FullPlan>(plan.variant)) return total;
  if (const auto* node = std::get_if<NodeSamplePlan>(&plan.variant)) {
    return f_norm(n, node->m);
  }
  const double b =
      static_cast<double>(std::get<TripleSamplePlan>(plan.variant).b);
  return total * b / (total + b);
}

TripleCensus census_under_plan(const Graph& g, const SamplingPlan& plan,
                               Rng& rng) {
  validate_plan(plan, g.node_count());
  if (std::holds_alternative<FullPlan>(plan.variant)) return census_full(g);
  if (const auto* node = std::get_if<NodeSamplePlan>(&plan.variant)) {
    return node_sample_census(g, node->m, rng);
  }
  return triple_sample_census(g, std::get<TripleSamplePlan>(plan.variant).b,
                              rng);
}

}  // namespace sgt
