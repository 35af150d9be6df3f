#ifndef SGTEST_POWER_LAB_HPP
#define SGTEST_POWER_LAB_HPP

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "sgtest/models.hpp"
#include "sgtest/rng.hpp"
#include "sgtest/sampling.hpp"
#include "sgtest/statistics.hpp"

namespace sgt {

// One point of an experiment grid; the plan override serves designs whose
// sampling budget varies across the grid.
struct GridEntry {
  ModelSpec model;
  std::optional<SamplingPlan> plan_override;
};

struct ExperimentConfig {
  std::vector<GridEntry> grid;
  SamplingPlan plan = SamplingPlan::full();
  double alpha = 0.05;
  std::uint32_t replicates = 1;
  std::uint64_t base_seed = 0;
  std::uint32_t bins = 40;  // calibration histograms
};

// Per-replicate record. Replicates whose statistic is undefined (empty or
// complete sample) are excluded-and-counted, never treated as rejections.
struct ReplicateOutcome {
  double z2 = 0.0;
  double z3 = 0.0;
  double t_squared = 0.0;
  bool reject = false;
  bool degenerate = false;
};

// Runs the replicates of one grid entry. Replicate r draws its whole
// randomness (graph, latent data, plan sampling) from one stream seeded by
// derive_seed(base_seed, grid_index, r); outcomes land in per-replicate
// slots and are reduced in index order, so results are bit-identical for
// any worker count.
std::vector<ReplicateOutcome> run_grid_entry(const ModelSpec& model,
                                             const SamplingPlan& plan,
                                             double alpha,
                                             std::uint32_t replicates,
                                             std::uint64_t base_seed,
                                             std::uint64_t grid_index,
                                             unsigned workers);

struct PowerRow {
  std::string model;
  std::string variant_params;
  std::uint32_t n = 0;
  std::string plan;
  std::uint64_t plan_param = 0;  // m, b, or 0 for the full plan
  double alpha = 0.0;
  std::uint32_t replicates = 0;
  double snr_raw = 0.0;
  double snr_adjusted = 0.0;
  double reject_rate = 0.0;
  double std_err = 0.0;  // sqrt(r(1-r)/replicates)
  double mean_t2 = 0.0;
  std::uint32_t excluded = 0;
};

struct PowerTable {
  std::vector<PowerRow> rows;
};

struct HistogramBin {
  double lo = 0.0;
  double hi = 0.0;
  double mass = 0.0;
};

struct StatReport {
  std::string stat;  // "z2", "z3", "t_squared"
  std::vector<HistogramBin> bins;
  double mean = 0.0;
  double var = 0.0;
  double ks = 0.0;  // distance to the reference law
  std::uint32_t excluded = 0;
};

struct CalibrationEntry {
  std::string model;
  std::string variant_params;
  std::uint32_t n = 0;
  std::string plan;
  std::uint64_t plan_param = 0;
  std::uint32_t replicates = 0;
  std::uint32_t excluded = 0;
  double corr_z2_z3 = 0.0;
  std::vector<StatReport> stats;
};

struct CalibrationReport {
  std::vector<CalibrationEntry> entries;
};

PowerTable run_power(const ExperimentConfig& config, unsigned workers);

// Null-calibration study; every grid entry must be an ER spec. z2 and z3
// are referenced against the standard normal, the combined statistic
// against the exact chi-squared(2) law.
CalibrationReport run_calibration(const ExperimentConfig& config,
                                  unsigned workers);

// Reference CDFs and the one-sample Kolmogorov-Smirnov distance.
double normal_cdf(double x);
double chi2_df2_cdf(double x);
double ks_distance(std::span<const double> sample, double (*cdf)(double));

std::vector<HistogramBin> histogram(std::span<const double> sample,
                                    std::uint32_t bins);

// Compact "k=v;k=v" description used in table rows.
std::string variant_params(const ModelSpec& spec);
std::string plan_kind_name(const SamplingPlan& plan);
std::uint64_t plan_param(const SamplingPlan& plan);

}  // namespace sgt

#endif  // SGTEST_POWER_LAB_HPP
