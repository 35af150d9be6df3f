#include <doctest.h>

#include <cmath>
#include <numeric>

#include "sgtest/census.hpp"
#include "sgtest/errors.hpp"
#include "sgtest/models.hpp"
#include "test_util.hpp"

using namespace sgt;

TEST_CASE("er extremes") {
  Rng rng(1);
  CHECK(gen_er(50, 0.0, rng).edge_count() == 0);
  CHECK(gen_er(50, 1.0, rng).edge_count() == choose2(50));
  CHECK_THROWS_AS(gen_er(10, -0.1, rng), BadProbability);
  CHECK_THROWS_AS(gen_er(10, 1.1, rng), BadProbability);
}

TEST_CASE("er edge frequency concentrates") {
  Rng rng(20240811);
  const Graph g = gen_er(2000, 0.01, rng);
  const double pairs = choose2(2000);
  const double se = std::sqrt(0.01 * 0.99 / pairs);
  CHECK(std::abs(g.edge_count() / pairs - 0.01) < 3.0 * se);
}

TEST_CASE("sbm2 community sizes") {
  CHECK(sbm2_sizes(100, 0.5) == std::vector<std::uint32_t>{50, 50});
  CHECK(sbm2_sizes(101, 0.5) == std::vector<std::uint32_t>{50, 51});
  CHECK(sbm2_sizes(100, 0.3) == std::vector<std::uint32_t>{30, 70});
  CHECK_THROWS_AS(sbm2_sizes(100, 0.0), BadPartition);
  CHECK_THROWS_AS(sbm2_sizes(100, 0.6), BadPartition);
}

TEST_CASE("balanced k partitions stay within one of n/k") {
  for (std::uint32_t n : {4u, 17u, 40u, 120u}) {
    for (std::uint32_t k = 1; k <= n; ++k) {
      const auto sizes = balanced_sizes(n, k);
      REQUIRE(sizes.size() == k);
      CHECK(std::accumulate(sizes.begin(), sizes.end(), 0u) == n);
      for (auto s : sizes) {
        CHECK(static_cast<double>(s) >= static_cast<double>(n) / k - 1.0);
        CHECK(static_cast<double>(s) <= static_cast<double>(n) / k + 1.0);
      }
    }
  }
  CHECK(balanced_sizes(4, 2) == std::vector<std::uint32_t>{2, 2});
  CHECK(balanced_sizes(120, 3) == std::vector<std::uint32_t>{40, 40, 40});
  CHECK_THROWS_AS(balanced_sizes(10, 11), BadPartition);
  CHECK_THROWS_AS(balanced_sizes(10, 0), BadPartition);
}

TEST_CASE("sbm generators validate and label") {
  Rng rng(5);
  const auto sample = gen_sbm(SbmKSpec{120, 3, 0.3, 0.1, true}, rng);
  REQUIRE(sample.labels.size() == 120);
  std::uint32_t counts[3] = {0, 0, 0};
  for (auto label : sample.labels) ++counts[label];
  CHECK(counts[0] == 40);
  CHECK(counts[1] == 40);
  CHECK(counts[2] == 40);

  CHECK_THROWS_AS(gen_sbm(SbmKSpec{10, 2, 1.3, 0.1, true}, rng),
                  BadProbability);
  CHECK_THROWS_AS(gen_sbm(SbmKSpec{10, 2, 0.3, 0.1, false}, rng),
                  BadPartition);
  CHECK_THROWS_AS(gen_sbm(Sbm2Spec{10, 0.7, 0.3, 0.1}, rng), BadPartition);
}

TEST_CASE("sbm with a=b collapses to er") {
  // Two-sample comparison of triangle frequency.
  const int samples = 200;
  const double p = 0.25;
  double sum_sbm = 0, sq_sbm = 0, sum_er = 0, sq_er = 0;
  for (int s = 0; s < samples; ++s) {
    Rng rng_a(derive_seed(70, 0, s)), rng_b(derive_seed(71, 0, s));
    const double f3_sbm =
        census_full(gen_sbm(Sbm2Spec{60, 0.5, p, p}, rng_a).graph).f3;
    const double f3_er = census_full(gen_er(60, p, rng_b)).f3;
    sum_sbm += f3_sbm;
    sq_sbm += f3_sbm * f3_sbm;
    sum_er += f3_er;
    sq_er += f3_er * f3_er;
  }
  const double mean_sbm = sum_sbm / samples, mean_er = sum_er / samples;
  const double var_sbm = (sq_sbm - sum_sbm * sum_sbm / samples) / (samples - 1);
  const double var_er = (sq_er - sum_er * sum_er / samples) / (samples - 1);
  const double se = std::sqrt(var_sbm / samples + var_er / samples);
  CHECK(std::abs(mean_sbm - mean_er) < 3.0 * se);
}

TEST_CASE("config model basics") {
  Rng rng(9);
  std::vector<double> ones(20, 1.0);
  CHECK(gen_config(ones, rng).edge_count() == choose2(20));

  std::vector<double> bad = {0.5, 1.2};
  CHECK_THROWS_AS(gen_config(bad, rng), BadTheta);
  std::vector<double> negative = {0.5, -0.1};
  CHECK_THROWS_AS(gen_config(negative, rng), BadTheta);

  // Constant theta c is ER(c^2) in distribution; check the mean edge count.
  const double c = 0.6;
  double edges = 0;
  const int samples = 150;
  for (int s = 0; s < samples; ++s) {
    Rng r(derive_seed(72, 0, s));
    std::vector<double> theta(50, c);
    edges += static_cast<double>(gen_config(theta, r).edge_count());
  }
  const double pairs = choose2(50);
  const double p = c * c;
  const double se = std::sqrt(pairs * p * (1 - p) / samples);
  CHECK(std::abs(edges / samples - pairs * p) < 3.0 * se);
}

TEST_CASE("beta theta sampling") {
  Rng rng(77);
  CHECK_THROWS_AS(sample_beta_theta(10, 0.0, 1.0, rng), BadParameter);
  CHECK_THROWS_AS(sample_beta_theta(10, 1.0, 1.0, rng), BadParameter);
  CHECK_THROWS_AS(sample_beta_theta(10, 0.5, 0.0, rng), BadParameter);

  const double h = 0.3, alpha = 5.0;
  const auto theta = sample_beta_theta(100000, h, alpha, rng);
  double sum = 0;
  for (double t : theta) {
    REQUIRE(t >= 0.0);
    REQUIRE(t <= 1.0);
    sum += t;
  }
  const double var = h * h * (1 - h) / (alpha + h);
  const double se = std::sqrt(var / theta.size());
  CHECK(std::abs(sum / theta.size() - h) < 3.0 * se);

  // alpha -> infinity approaches constant theta: deviation goes to zero.
  const auto tight = sample_beta_theta(10000, h, 1e6, rng);
  CHECK(v_theta(tight) < 1e-8);

  // E theta_i theta_j = h^2 drives the mean degree.
  Rng rng2(78);
  const auto theta500 = sample_beta_theta(500, h, alpha, rng2);
  const Graph g = gen_config(theta500, rng2);
  const double mean_degree = 2.0 * g.edge_count() / 500.0;
  CHECK(std::abs(mean_degree - 499.0 * h * h) < 12.0);  // ~5 sigma
}

TEST_CASE("v_theta exact values") {
  std::vector<double> constant(17, 0.37);
  CHECK(v_theta(constant) == 0.0);

  std::vector<double> pair = {1.0, 0.0};
  CHECK(v_theta(pair) == 7.0 / 64.0);

  CHECK_THROWS_AS(v_theta({}), EmptyVector);

  Rng rng(123);
  for (int rep = 0; rep < 10000; ++rep) {
    std::vector<double> theta(2 + rng.next_below(12));
    for (auto& t : theta) t = rng.next_unit();
    CHECK(v_theta(theta) >= 0.0);
  }
}

TEST_CASE("v_g exact values and rank-one reduction") {
  // Constant components give exactly zero.
  std::vector<StepFunction> constant = {StepFunction{{0.3, 0.3, 0.3}},
                                        StepFunction{{0.9, 0.9}}};
  CHECK(v_g(constant) == 0.0);

  // Two-cell step 0.5 / 1.0: (5/8)^3... = 271/4096 by exact rational
  // arithmetic.
  std::vector<StepFunction> step = {StepFunction{{0.5, 1.0}}};
  CHECK(v_g(step) == doctest::Approx(271.0 / 4096.0).epsilon(1e-15));

  // Rank one reduces to v_theta over the grid values.
  Rng rng(321);
  for (int rep = 0; rep < 200; ++rep) {
    std::vector<double> values(1 + rng.next_below(9));
    for (auto& v : values) v = 0.9 * rng.next_unit();
    std::vector<StepFunction> funcs = {StepFunction{values}};
    CHECK(v_g(funcs) == doctest::Approx(v_theta(values)).epsilon(1e-12));
    CHECK(v_g(funcs) >= 0.0);
  }
}

TEST_CASE("v_g matches the direct trace formula") {
  Rng rng(55);
  for (int rep = 0; rep < 300; ++rep) {
    const std::size_t r = 1 + rng.next_below(3);
    std::vector<StepFunction> funcs;
    double norm = 0.0;
    for (std::size_t l = 0; l < r; ++l) {
      std::vector<double> values(1 + rng.next_below(6));
      for (auto& v : values) v = 0.5 * rng.next_unit();
      norm += 0.25;  // sup <= 0.5 per component; r <= 3 keeps sum <= 0.75
      funcs.push_back(StepFunction{values});
    }
    REQUIRE(norm <= 1.0);

    // Direct evaluation: M = E g g^T, V = Tr(M^3) - |mu|^6.
    std::vector<double> mu(r), msq(r);
    for (std::size_t l = 0; l < r; ++l) {
      mu[l] = funcs[l].mean();
      msq[l] = funcs[l].mean_sq();
    }
    double m[3][3] = {};
    for (std::size_t a = 0; a < r; ++a) {
      for (std::size_t b = 0; b < r; ++b) {
        m[a][b] = a == b ? msq[a] : mu[a] * mu[b];
      }
    }
    double m2[3][3] = {}, m3[3][3] = {};
    for (std::size_t a = 0; a < r; ++a)
      for (std::size_t b = 0; b < r; ++b)
        for (std::size_t c = 0; c < r; ++c) m2[a][b] += m[a][c] * m[c][b];
    for (std::size_t a = 0; a < r; ++a)
      for (std::size_t b = 0; b < r; ++b)
        for (std::size_t c = 0; c < r; ++c) m3[a][b] += m2[a][c] * m[c][b];
    double trace = 0.0, mu_norm_sq = 0.0;
    for (std::size_t a = 0; a < r; ++a) {
      trace += m3[a][a];
      mu_norm_sq += mu[a] * mu[a];
    }
    const double direct = trace - mu_norm_sq * mu_norm_sq * mu_norm_sq;
    CHECK(v_g(funcs) == doctest::Approx(direct).epsilon(1e-9).scale(1.0));
  }
}

TEST_CASE("latent model generation") {
  Rng rng(66);
  LatentSpec bad;
  bad.n = 10;
  bad.funcs = {StepFunction{{0.9, 1.0}}, StepFunction{{0.7}}};  // 1.0+0.49>1
  CHECK_THROWS_AS(gen_latent(bad, rng), BadFeatureFunction);

  LatentSpec negative;
  negative.n = 10;
  negative.funcs = {StepFunction{{0.5, -0.1}}};
  CHECK_THROWS_AS(gen_latent(negative, rng), BadFeatureFunction);

  // Rank one constant c: ER(c^2) in distribution.
  LatentSpec er_like;
  er_like.n = 60;
  er_like.funcs = {StepFunction{{0.6}}};
  double edges = 0;
  const int samples = 150;
  for (int s = 0; s < samples; ++s) {
    Rng r(derive_seed(73, 0, s));
    edges += static_cast<double>(gen_latent(er_like, r).graph.edge_count());
  }
  const double pairs = choose2(60);
  const double p = 0.36;
  const double se = std::sqrt(pairs * p * (1 - p) / samples);
  CHECK(std::abs(edges / samples - pairs * p) < 3.0 * se);

  // Step function 0.5/1.0: mean edge probability (E g)^2 = 0.5625.
  LatentSpec step;
  step.n = 60;
  step.funcs = {StepFunction{{0.5, 1.0}}};
  double phat_sum = 0;
  for (int s = 0; s < 200; ++s) {
    Rng r(derive_seed(74, 0, s));
    const auto sample = gen_latent(step, r);
    phat_sum += sample.graph.edge_count() / pairs;
    REQUIRE(sample.xi.size() == 60);
  }
  // Var(p_hat) is dominated by the latent draws; bound loosely at 5 sigma
  // of the Bernoulli part plus latent variability measured analytically:
  // Var(g(U)) = E g^2 - (E g)^2 = 0.625 - 0.5625 = 0.0625.
  CHECK(phat_sum / 200 == doctest::Approx(0.5625).epsilon(0.02));
}

TEST_CASE("snr diagnostics") {
  CHECK(snr_diagnostics(ErSpec{100, 0.3}, SamplingPlan::full()).raw == 0.0);

  const double d = std::sqrt(0.002);
  const auto sbm = snr_diagnostics(Sbm2Spec{100, 0.5, 0.2 + d, 0.2 - d},
                                   SamplingPlan::full());
  CHECK(sbm.raw == doctest::Approx(2.0).epsilon(1e-12));
  CHECK(sbm.adjusted == doctest::Approx(2.0).epsilon(1e-12));

  // a=b has zero signal.
  CHECK(snr_diagnostics(Sbm2Spec{100, 0.5, 0.2, 0.2}, SamplingPlan::full())
            .raw == 0.0);

  // k = 2 matches the two-community formula divided by 2^{4/3}.
  const auto sbmk =
      snr_diagnostics(SbmKSpec{100, 2, 0.2 + d, 0.2 - d, true},
                      SamplingPlan::full());
  CHECK(sbmk.raw == doctest::Approx(2.0 / std::pow(2.0, 4.0 / 3.0)));

  // Node sampling with m=n reproduces the raw SNR: (n*n^2)^{1/3} = n.
  const auto node = snr_diagnostics(Sbm2Spec{100, 0.5, 0.2 + d, 0.2 - d},
                                    SamplingPlan::node(100));
  CHECK(node.adjusted == doctest::Approx(node.raw).epsilon(1e-12));

  // Triple sampling scales by b^{1/3}.
  const auto trip = snr_diagnostics(Sbm2Spec{100, 0.5, 0.2 + d, 0.2 - d},
                                    SamplingPlan::triple(1000));
  CHECK(trip.adjusted == doctest::Approx(trip.raw / 10.0).epsilon(1e-12));
}

TEST_CASE("collapse chain: sbm(a=b), config(sqrt p), latent(sqrt p) vs er") {
  const double p = 0.16;
  const double c = 0.4;  // sqrt(p)
  const int samples = 200;
  const std::uint32_t n = 50;
  const double pairs = choose2(n);

  double mean_edge[4] = {0, 0, 0, 0};
  for (int s = 0; s < samples; ++s) {
    Rng r0(derive_seed(80, 0, s)), r1(derive_seed(80, 1, s)),
        r2(derive_seed(80, 2, s)), r3(derive_seed(80, 3, s));
    mean_edge[0] += gen_er(n, p, r0).edge_count() / pairs;
    mean_edge[1] +=
        gen_sbm(Sbm2Spec{n, 0.5, p, p}, r1).graph.edge_count() / pairs;
    std::vector<double> theta(n, c);
    mean_edge[2] += gen_config(theta, r2).edge_count() / pairs;
    LatentSpec latent;
    latent.n = n;
    latent.funcs = {StepFunction{{c}}};
    mean_edge[3] += gen_latent(latent, r3).graph.edge_count() / pairs;
  }
  const double se = std::sqrt(p * (1 - p) / pairs / samples);
  for (int i = 0; i < 4; ++i) mean_edge[i] /= samples;
  for (int i = 1; i < 4; ++i) {
    CHECK(std::abs(mean_edge[i] - mean_edge[0]) < 3.0 * std::sqrt(2.0) * se);
  }
}

TEST_CASE("generate() redraws latent data per call") {
  ConfigBetaSpec spec{40, 0.3, 2.0};
  Rng rng(444);
  const auto first = generate(spec, rng);
  const auto second = generate(spec, rng);
  REQUIRE(first.theta.has_value());
  REQUIRE(second.theta.has_value());
  CHECK(*first.theta != *second.theta);
}
