#include "sgtest/power_lab.hpp"

#include <algorithm>
#include <cmath>
#include <exception>
#include <map>
#include <thread>

#include "sgtest/errors.hpp"
#include "sgtest/json_io.hpp"

namespace sgt {

namespace {

// Contiguous index ranges over [0, count); exceptions from workers are
// re-thrown on the calling thread.
template <typename Fn>
void parallel_chunks(std::uint32_t count, unsigned workers, Fn&& fn) {
  workers = std::max(1u, workers);
  if (count > 0) workers = std::min(workers, count);
  if (workers <= 1 || count == 0) {
    fn(0u, count);
    return;
  }
  std::vector<std::thread> threads;
  std::vector<std::exception_ptr> errors(workers);
  const std::uint32_t chunk = (count + workers - 1) / workers;
  for (unsigned w = 0; w < workers; ++w) {
    const std::uint32_t lo = w * chunk;
    const std::uint32_t hi = std::min(count, lo + chunk);
    if (lo >= hi) break;
    threads.emplace_back([&, lo, hi, w] {
      try {
        fn(lo, hi);
      } catch (...) {
        errors[w] = std::current_exception();
      }
    });
  }
  for (auto& t : threads) t.join();
  for (auto& e : errors) {
    if (e) std::rethrow_exception(e);
  }
}

}  // namespace

std::vector<ReplicateOutcome> run_grid_entry(const ModelSpec& model,
                                             const SamplingPlan& plan,
                                             double alpha,
                                             std::uint32_t replicates,
                                             std::uint64_t base_seed,
                                             std::uint64_t grid_index,
                                             unsigned workers) {
  const double critical = chi2_df2_critical(alpha);
  const std::uint32_t n = model_node_count(model);
  validate_plan(plan, n);

  std::vector<ReplicateOutcome> outcomes(replicates);
  parallel_chunks(replicates, workers, [&](std::uint32_t lo, std::uint32_t hi) {
    for (std::uint32_t r = lo; r < hi; ++r) {
      Rng rng(derive_seed(base_seed, grid_index, r));
      const GeneratedGraph sample = generate(model, rng);
      ReplicateOutcome& out = outcomes[r];
      try {
        const TripleCensus census =
            census_under_plan(sample.graph, plan, rng);
        const double n_eff = effective_n(plan, n);
        const RelationStats stats =
            relation_stats_from_census(census, n_eff);
        out.z2 = stats.z2;
        out.z3 = stats.z3;
        out.t_squared = stats.t_squared;
        out.reject = stats.t_squared > critical;
      } catch (const DegenerateGraph&) {
        out.degenerate = true;
      }
    }
  });
  return outcomes;
}

std::string plan_kind_name(const SamplingPlan& plan) {
  if (std::holds_alternative<FullPlan>(plan.variant)) return "full";
  if (std::holds_alternative<NodeSamplePlan>(plan.variant)) return "node";
  return "triple";
}

std::uint64_t plan_param(const SamplingPlan& plan) {
  if (const auto* node = std::get_if<NodeSamplePlan>(&plan.variant)) {
    return node->m;
  }
  if (const auto* trip = std::get_if<TripleSamplePlan>(&plan.variant)) {
    return trip->b;
  }
  return 0;
}

std::string variant_params(const ModelSpec& spec) {
  struct Visitor {
    std::string operator()(const ErSpec& s) const {
      return "p=" + format_double(s.p);
    }
    std::string operator()(const Sbm2Spec& s) const {
      return "gamma=" + format_double(s.gamma) + ";a=" + format_double(s.a) +
             ";b=" + format_double(s.b);
    }
    std::string operator()(const SbmKSpec& s) const {
      return "k=" + std::to_string(s.k) + ";a=" + format_double(s.a) +
             ";b=" + format_double(s.b);
    }
    std::string operator()(const SbmLabelsSpec& s) const {
      std::map<std::uint32_t, std::uint32_t> sizes;
      for (auto label : s.labels) ++sizes[label];
      std::string joined;
      for (const auto& [label, size] : sizes) {
        if (!joined.empty()) joined += '|';
        joined += std::to_string(size);
      }
      return "sizes=" + joined + ";a=" + format_double(s.a) +
             ";b=" + format_double(s.b);
    }
    std::string operator()(const ConfigSpec& s) const {
      return "theta=fixed;v=" + format_double(v_theta(s.theta));
    }
    std::string operator()(const ConfigBetaSpec& s) const {
      return "h=" + format_double(s.h) + ";alpha=" + format_double(s.alpha);
    }
    std::string operator()(const LatentSpec& s) const {
      double rho = 0.0;
      for (const auto& g : s.funcs) rho += g.sup() * g.sup();
      return "r=" + std::to_string(s.funcs.size()) +
             ";rho=" + format_double(rho) + ";v=" + format_double(v_g(s.funcs));
    }
  };
  return std::visit(Visitor{}, spec);
}

namespace {

const SamplingPlan& entry_plan(const GridEntry& entry,
                               const ExperimentConfig& config) {
  return entry.plan_override ? *entry.plan_override : config.plan;
}

void validate_config(const ExperimentConfig& config) {
  if (config.grid.empty()) throw ConfigError("experiment grid is empty");
  if (config.replicates < 1) throw ConfigError("replicates must be >= 1");
  if (!(config.alpha > 0.0 && config.alpha < 1.0)) {
    throw ConfigError("alpha must lie in (0,1)");
  }
}

}  // namespace

PowerTable run_power(const ExperimentConfig& config, unsigned workers) {
  validate_config(config);
  PowerTable table;
  table.rows.reserve(config.grid.size());
  for (std::size_t g = 0; g < config.grid.size(); ++g) {
    const GridEntry& entry = config.grid[g];
    const SamplingPlan& plan = entry_plan(entry, config);
    const auto outcomes =
        run_grid_entry(entry.model, plan, config.alpha, config.replicates,
                       config.base_seed, g, workers);

    std::uint32_t excluded = 0, rejections = 0;
    double t2_sum = 0.0;
    for (const auto& out : outcomes) {
      if (out.degenerate) {
        ++excluded;
        continue;
      }
      rejections += out.reject ? 1u : 0u;
      t2_sum += out.t_squared;
    }
    const std::uint32_t valid = config.replicates - excluded;

    PowerRow row;
    row.model = model_name(entry.model);
    row.variant_params = variant_params(entry.model);
    row.n = model_node_count(entry.model);
    row.plan = plan_kind_name(plan);
    row.plan_param = plan_param(plan);
    row.alpha = config.alpha;
    row.replicates = config.replicates;
    const SnrDiagnostics snr = snr_diagnostics(entry.model, plan);
    row.snr_raw = snr.raw;
    row.snr_adjusted = snr.adjusted;
    row.reject_rate =
        valid > 0 ? static_cast<double>(rejections) / valid : 0.0;
    row.std_err = std::sqrt(row.reject_rate * (1.0 - row.reject_rate) /
                            config.replicates);
    row.mean_t2 = valid > 0 ? t2_sum / valid : 0.0;
    row.excluded = excluded;
    table.rows.push_back(std::move(row));
  }
  return table;
}

double normal_cdf(double x) {
  return 0.5 * std::erfc(-x / std::sqrt(2.0));
}

double chi2_df2_cdf(double x) {
  if (x <= 0.0) return 0.0;
  return 1.0 - std::exp(-x / 2.0);
}

double ks_distance(std::span<const double> sample, double (*cdf)(double)) {
  if (sample.empty()) return 0.0;
  std::vector<double> xs(sample.begin(), sample.end());
  std::sort(xs.begin(), xs.end());
  const double n = static_cast<double>(xs.size());
  double d = 0.0;
  for (std::size_t i = 0; i < xs.size(); ++i) {
    const double f = cdf(xs[i]);
    d = std::max(d, f - static_cast<double>(i) / n);
    d = std::max(d, static_cast<double>(i + 1) / n - f);
  }
  return d;
}

std::vector<HistogramBin> histogram(std::span<const double> sample,
                                    std::uint32_t bins) {
  std::vector<HistogramBin> out;
  if (sample.empty() || bins == 0) return out;
  const auto [lo_it, hi_it] = std::minmax_element(sample.begin(), sample.end());
  const double lo = *lo_it, hi = *hi_it;
  if (lo == hi) {
    out.push_back({lo, hi, 1.0});
    return out;
  }
  const double width = (hi - lo) / bins;
  std::vector<std::uint64_t> counts(bins, 0);
  for (double x : sample) {
    auto idx = static_cast<std::size_t>((x - lo) / width);
    if (idx >= bins) idx = bins - 1;  // x == hi
    ++counts[idx];
  }
  const double mass_unit = 1.0 / static_cast<double>(sample.size());
  for (std::uint32_t i = 0; i < bins; ++i) {
    out.push_back({lo + i * width, lo + (i + 1) * width,
                   static_cast<double>(counts[i]) * mass_unit});
  }
  return out;
}

namespace {

double sample_mean(std::span<const double> xs) {
  double acc = 0.0;
  for (double x : xs) acc += x;
  return acc / static_cast<double>(xs.size());
}

double sample_var(std::span<const double> xs, double mean) {
  if (xs.size() < 2) return 0.0;
  double acc = 0.0;
  for (double x : xs) acc += (x - mean) * (x - mean);
  return acc / static_cast<double>(xs.size() - 1);
}

StatReport make_stat_report(const std::string& name,
                            std::span<const double> xs,
                            double (*cdf)(double), std::uint32_t bins,
                            std::uint32_t excluded) {
  StatReport report;
  report.stat = name;
  report.bins = histogram(xs, bins);
  if (!xs.empty()) {
    report.mean = sample_mean(xs);
    report.var = sample_var(xs, report.mean);
    report.ks = ks_distance(xs, cdf);
  }
  report.excluded = excluded;
  return report;
}

}  // namespace

CalibrationReport run_calibration(const ExperimentConfig& config,
                                  unsigned workers) {
  validate_config(config);
  for (const auto& entry : config.grid) {
    if (!std::holds_alternative<ErSpec>(entry.model)) {
      throw ConfigError(
          "calibration grids accept only er models; found " +
          model_name(entry.model));
    }
  }

  CalibrationReport report;
  report.entries.reserve(config.grid.size());
  for (std::size_t g = 0; g < config.grid.size(); ++g) {
    const GridEntry& entry = config.grid[g];
    const SamplingPlan& plan = entry_plan(entry, config);
    const auto outcomes =
        run_grid_entry(entry.model, plan, config.alpha, config.replicates,
                       config.base_seed, g, workers);

    std::vector<double> z2s, z3s, t2s;
    std::uint32_t excluded = 0;
    for (const auto& out : outcomes) {
      if (out.degenerate) {
        ++excluded;
        continue;
      }
      z2s.push_back(out.z2);
      z3s.push_back(out.z3);
      t2s.push_back(out.t_squared);
    }

    CalibrationEntry cal;
    cal.model = model_name(entry.model);
    cal.variant_params = variant_params(entry.model);
    cal.n = model_node_count(entry.model);
    cal.plan = plan_kind_name(plan);
    cal.plan_param = plan_param(plan);
    cal.replicates = config.replicates;
    cal.excluded = excluded;
    if (z2s.size() >= 2) {
      const double m2 = sample_mean(z2s), m3 = sample_mean(z3s);
      double cov = 0.0;
      for (std::size_t i = 0; i < z2s.size(); ++i) {
        cov += (z2s[i] - m2) * (z3s[i] - m3);
      }
      cov /= static_cast<double>(z2s.size() - 1);
      const double v2 = sample_var(z2s, m2), v3 = sample_var(z3s, m3);
      cal.corr_z2_z3 = (v2 > 0.0 && v3 > 0.0)
                           ? cov / std::sqrt(v2 * v3)
                           : 0.0;
    }
    cal.stats.push_back(
        make_stat_report("z2", z2s, normal_cdf, config.bins, excluded));
    cal.stats.push_back(
        make_stat_report("z3", z3s, normal_cdf, config.bins, excluded));
    cal.stats.push_back(make_stat_report("t_squared", t2s, chi2_df2_cdf,
                                         config.bins, excluded));
    report.entries.push_back(std::move(cal));
  }
  return report;
}

}  // namespace sgt
