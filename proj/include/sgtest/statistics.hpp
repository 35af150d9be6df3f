#ifndef SGTEST_STATISTICS_HPP
#define SGTEST_STATISTICS_HPP

#include <array>
#include <cstdint>

#include "sgtest/census.hpp"
#include "sgtest/graph.hpp"
#include "sgtest/sampling.hpp"

namespace sgt {

// Asymptotic covariance of (T2, T3) under the null after sqrt(C(n,3))
// scaling, parameterized by the edge probability.
struct SigmaP {
  double s22 = 0.0;
  double s23 = 0.0;
  double s33 = 0.0;
};

// s22 = 3p^2(1-p)^2(1-3p)^2 + 9p^3(1-p)^3
// s33 = p^3(1-p)^3 + 3p^4(1-p)^2
// s23 = -6p^4(1-p)^2
SigmaP sigma_p(double p);

// Differences between the plugin frequencies (powers of p_hat) and the
// empirical shape frequencies. The four always sum to zero.
struct RelationStats {
  double t0 = 0.0, t1 = 0.0, t2 = 0.0, t3 = 0.0;
  double p_hat = 0.0;
  double n_eff = 0.0;
  double z2 = 0.0, z3 = 0.0;
  double t_squared = 0.0;
  double p_value = 1.0;
};

std::array<double, 4> relation_stats(const TripleCensus& census);

struct Chi2Parts {
  double t_squared = 0.0;
  double z2 = 0.0;
  double z3 = 0.0;
};

// Standardizes (t2, t3) by the diagonal of sigma_p(p_hat) scaled by n_eff
// and combines them. Throws DegenerateGraph when p_hat is 0 or 1 (the
// denominators vanish; there is no statistic to report for an empty or
// complete graph).
Chi2Parts chi_squared(double t2, double t3, double p_hat, double n_eff);

// Exact chi-squared(df=2) survival function.
double p_value_chi2_df2(double t_squared);

// C_alpha with P(chi2_2 > C_alpha) = alpha, i.e. -2 ln(alpha).
double chi2_df2_critical(double alpha);

struct TestResult {
  RelationStats stats;
  double alpha = 0.0;
  double critical_value = 0.0;
  bool reject = false;
  SamplingPlan plan;
  std::uint32_t n = 0;
  std::uint64_t m_edges = 0;
};

// Full pipeline: census under the plan (seeded by plan.seed), relation
// statistics, chi-squared combination, fixed-level decision.
TestResult run_test(const Graph& graph, double alpha, SamplingPlan plan);
TestResult run_test(const Graph& graph, double alpha, SamplingPlan plan,
                    std::uint64_t seed);

// Decision against a caller-supplied slowly diverging threshold.
bool divergent_threshold_test(const Graph& graph, double c_n,
                              SamplingPlan plan);

// Documented default threshold 2 ln(ln n) for the divergent-threshold
// variant; any sequence growing without bound works asymptotically.
double default_divergent_threshold(std::uint32_t n);

// Assembles RelationStats from an existing census (shared by run_test and
// the experiment engine).
RelationStats relation_stats_from_census(const TripleCensus& census,
                                         double n_eff);

}  // namespace sgt

#endif  // SGTEST_STATISTICS_HPP
