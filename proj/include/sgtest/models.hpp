#ifndef SGTEST_MODELS_HPP
#define SGTEST_MODELS_HPP

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <variant>
#include <vector>

#include "sgtest/graph.hpp"
#include "sgtest/rng.hpp"
#include "sgtest/sampling.hpp"

namespace sgt {

// Nonnegative step function on [0,1] over a uniform grid of cells.
// The grid makes means and second moments exact finite sums, so the
// deviation functional below has exact zeros on constants.
struct StepFunction {
  std::vector<double> values;

  double eval(double x) const;
  double mean() const;
  double mean_sq() const;
  double sup() const;
};

struct ErSpec {
  std::uint32_t n = 0;
  double p = 0.0;
};

// Two communities of sizes round(n*gamma) and the rest; edges Bernoulli(a)
// within and Bernoulli(b) between.
struct Sbm2Spec {
  std::uint32_t n = 0;
  double gamma = 0.5;
  double a = 0.0;
  double b = 0.0;
};

// k communities with sizes within +-1 of n/k.
struct SbmKSpec {
  std::uint32_t n = 0;
  std::uint32_t k = 0;
  double a = 0.0;
  double b = 0.0;
  bool balanced = true;
};

// Arbitrary community assignment, e.g. deliberately unbalanced designs.
struct SbmLabelsSpec {
  std::vector<std::uint32_t> labels;
  double a = 0.0;
  double b = 0.0;
};

// Rank-one heterogeneity: p_ij = theta_i * theta_j with a fixed vector.
struct ConfigSpec {
  std::vector<double> theta;
};

// Same model with theta_i redrawn i.i.d. Beta(alpha, (1-h)/h * alpha) for
// every generated graph, so E theta_i = h.
struct ConfigBetaSpec {
  std::uint32_t n = 0;
  double h = 0.0;
  double alpha = 0.0;
};

// Low-rank latent variable model: xi_{il} i.i.d. Uniform(0,1) and
// p_ij = sum_l g_l(xi_il) g_l(xi_jl).
struct LatentSpec {
  std::uint32_t n = 0;
  std::vector<StepFunction> funcs;
};

using ModelSpec = std::variant<ErSpec, Sbm2Spec, SbmKSpec, SbmLabelsSpec,
                               ConfigSpec, ConfigBetaSpec, LatentSpec>;

// "er", "sbm2", "sbmk", "sbm_labels", "config", "latent".
std::string model_name(const ModelSpec& spec);
std::uint32_t model_node_count(const ModelSpec& spec);

Graph gen_er(std::uint32_t n, double p, Rng& rng);

struct SbmSample {
  Graph graph;
  std::vector<std::uint32_t> labels;
};

SbmSample gen_sbm(const Sbm2Spec& spec, Rng& rng);
SbmSample gen_sbm(const SbmKSpec& spec, Rng& rng);
SbmSample gen_sbm(const SbmLabelsSpec& spec, Rng& rng);

// Community sizes used by the SBM variants (validated).
std::vector<std::uint32_t> sbm2_sizes(std::uint32_t n, double gamma);
std::vector<std::uint32_t> balanced_sizes(std::uint32_t n, std::uint32_t k);

Graph gen_config(std::span<const double> theta, Rng& rng);

std::vector<double> sample_beta_theta(std::uint32_t n, double h, double alpha,
                                      Rng& rng);

struct LatentSample {
  Graph graph;
  std::vector<std::vector<double>> xi;  // xi[i][l]
};

LatentSample gen_latent(const LatentSpec& spec, Rng& rng);

// Deviation functional ((1/n) sum theta_i^2)^3 - ((1/n) sum theta_i)^6.
// Evaluated through the moment decomposition so the result is nonnegative
// in floating point and exactly zero for constant vectors.
double v_theta(std::span<const double> theta);

// Tr[(E g g^T)^3] - ||E g||^6 for independent components, evaluated the
// same way; exactly zero when every component is constant.
double v_g(std::span<const StepFunction> funcs);

// Signal-to-noise diagnostics; advisory only, never enforced. `adjusted`
// replaces n by (m n^2)^{1/3} or b^{1/3} for the SBM families under the
// sampled plans and equals `raw` otherwise.
struct SnrDiagnostics {
  double raw = 0.0;
  double adjusted = 0.0;
};

SnrDiagnostics snr_diagnostics(const ModelSpec& spec,
                               const SamplingPlan& plan);

// Everything a generator knows about the sample beyond the graph itself.
struct GeneratedGraph {
  Graph graph;
  std::optional<std::vector<std::uint32_t>> labels;
  std::optional<std::vector<double>> theta;
  std::optional<std::vector<std::vector<double>>> xi;
};

// Unified dispatch; latent data (labels, theta, xi) is drawn fresh on
// every call, which is what makes the Bayes-risk experiments meaningful.
GeneratedGraph generate(const ModelSpec& spec, Rng& rng);

}  // namespace sgt

#endif  // SGTEST_MODELS_HPP
