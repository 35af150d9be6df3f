#ifndef SGTEST_SAMPLING_HPP
#define SGTEST_SAMPLING_HPP

#include <cstdint>
#include <variant>

#include "sgtest/census.hpp"
#include "sgtest/graph.hpp"
#include "sgtest/rng.hpp"

namespace sgt {

struct FullPlan {};

// Census all triples touching m nodes drawn uniformly WITHOUT replacement.
struct NodeSamplePlan {
  std::uint32_t m = 0;
};

// Average over b triples drawn uniformly WITH replacement.
struct TripleSamplePlan {
  std::uint64_t b = 0;
};

using PlanVariant = std::variant<FullPlan, NodeSamplePlan, TripleSamplePlan>;

struct SamplingPlan {
  PlanVariant variant = FullPlan{};
  std::uint64_t seed = 0;

  static SamplingPlan full(std::uint64_t seed = 0) {
    return {FullPlan{}, seed};
  }
  static SamplingPlan node(std::uint32_t m, std::uint64_t seed = 0) {
    return {NodeSamplePlan{m}, seed};
  }
  static SamplingPlan triple(std::uint64_t b, std::uint64_t seed = 0) {
    return {TripleSamplePlan{b}, seed};
  }
};

// Throws BadSampleSize / GraphTooSmall when the plan does not fit n nodes.
void validate_plan(const SamplingPlan& plan, std::uint32_t n);

// Census over the m * C(n-1,2) triples touching a uniform m-subset of
// nodes (with multiplicity: a triple containing t sampled nodes is counted
// t times). Per-node contributions are evaluated in closed form; see the
// oracle test that checks them against direct pair enumeration.
TripleCensus node_sample_census(const Graph& graph, std::uint32_t m, Rng& rng);

// Census over b i.i.d. uniform triples (three distinct indices per draw).
TripleCensus triple_sample_census(const Graph& graph, std::uint64_t b,
                                  Rng& rng);

// Normalization f(n,m) for the node-sampled statistics; equals C(n,3)
// at m = n.
double f_norm(std::uint32_t n, std::uint32_t m);

// Effective triple count entering the chi-squared statistic:
// full -> C(n,3); node(m) -> f_norm(n,m); triple(b) -> C(n,3)b/(C(n,3)+b).
double effective_n(const SamplingPlan& plan, std::uint32_t n);

// Dispatches on the plan; the sampled variants consume `rng`.
TripleCensus census_under_plan(const Graph& graph, const SamplingPlan& plan,
                               Rng& rng);

}  // namespace sgt

#endif  // SGTEST_SAMPLING_HPP
