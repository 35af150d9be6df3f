#include "sgtest/statistics.hpp"

#include <cmath>
#include <string>

#include "sgtest/errors.hpp"

namespace sgt {

SigmaP sigma_p(double p) {
  if (p < 0.0 || p > 1.0) {
    throw BadProbability("sigma_p: p = " + std::to_string(p));
  }
  const double q = 1.0 - p;
  SigmaP s;
  s.s22 = 3.0 * p * p * q * q * (1.0 - 3.0 * p) * (1.0 - 3.0 * p) +
          9.0 * p * p * p * q * q * q;
  s.s33 = p * p * p * q * q * q + 3.0 * p * p * p * p * q * q;
  s.s23 = -6.0 * p * p * p * p * q * q;
  return s;
}

std::array<double, 4> relation_stats(const TripleCensus& c) {
  const double p = c.p_hat;
  const double q = 1.0 - p;
  return {
      q * q * q - c.f0,
      3.0 * p * q * q - c.f1,
      3.0 * p * p * q - c.f2,
      p * p * p - c.f3,
  };
}

Chi2Parts chi_squared(double t2, double t3, double p_hat, double n_eff) {
  if (!(p_hat > 0.0 && p_hat < 1.0)) {
    throw DegenerateGraph(
        "chi_squared: statistic undefined at edge frequency " +
        std::to_string(p_hat));
  }
  if (!(n_eff > 0.0)) {
    throw BadParameter("chi_squared: n_eff must be positive");
  }
  // On (0,1) both denominators are strictly positive: the second summand
  // of each is.
  const SigmaP s = sigma_p(p_hat);
  const double scale = std::sqrt(n_eff);
  Chi2Parts parts;
  parts.z2 = scale * t2 / std::sqrt(s.s22);
  parts.z3 = scale * t3 / std::sqrt(s.s33);
  parts.t_squared = parts.z2 * parts.z2 + parts.z3 * parts.z3;
  return parts;
}

double p_value_chi2_df2(double t_squared) {
  if (t_squared < 0.0) {
    throw BadParameter("p_value_chi2_df2: negative statistic");
  }
  return std::exp(-t_squared / 2.0);
}

double chi2_df2_critical(double alpha) {
  if (!(alpha > 0.0 && alpha < 1.0)) {
    throw BadParameter("alpha must lie in (0,1), got " + std::to_string(alpha));
  }
  return -2.0 * std::log(alpha);
}

RelationStats relation_stats_from_census(const TripleCensus& census,
                                         double n_eff) {
  const auto t = relation_stats(census);
  const auto parts = chi_squared(t[2], t[3], census.p_hat, n_eff);
  RelationStats r;
  r.t0 = t[0];
  r.t1 = t[1];
  r.t2 = t[2];
  r.t3 = t[3];
  r.p_hat = census.p_hat;
  r.n_eff = n_eff;
  r.z2 = parts.z2;
  r.z3 = parts.z3;
  r.t_squared = parts.t_squared;
  r.p_value = p_value_chi2_df2(parts.t_squared);
  return r;
}

TestResult run_test(const Graph& graph, double alpha, SamplingPlan plan) {
  const double critical = chi2_df2_critical(alpha);
  validate_plan(plan, graph.node_count());
  Rng rng(plan.seed);
  const TripleCensus census = census_under_plan(graph, plan, rng);
  const double n_eff = effective_n(plan, graph.node_count());

  TestResult result;
  result.stats = relation_stats_from_census(census, n_eff);
  result.alpha = alpha;
  result.critical_value = critical;
  result.reject = result.stats.t_squared > critical;
  result.plan = plan;
  result.n = graph.node_count();
  result.m_edges = graph.edge_count();
  return result;
}

TestResult run_test(const Graph& graph, double alpha, SamplingPlan plan,
                    std::uint64_t seed) {
  plan.seed = seed;
  return run_test(graph, alpha, plan);
}

bool divergent_threshold_test(const Graph& graph, double c_n,
                              SamplingPlan plan) {
  if (!(c_n > 0.0)) {
    throw BadParameter("divergent_threshold_test: c_n must be positive");
  }
  validate_plan(plan, graph.node_count());
  Rng rng(plan.seed);
  const TripleCensus census = census_under_plan(graph, plan, rng);
  const double n_eff = effective_n(plan, graph.node_count());
  const RelationStats stats = relation_stats_from_census(census, n_eff);
  return stats.t_squared > c_n;
}

double default_divergent_threshold(std::uint32_t n) {
  if (n < 3) {
    throw GraphTooSmall("default_divergent_threshold: need n >= 3");
  }
  return 2.0 * std::log(std::log(static_cast<double>(n)));
}

}  // namespace sgt
