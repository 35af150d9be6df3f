// Command-line front end: test one graph file, generate graphs from model
// specs, and run calibration / power experiments from JSON configs.
//
// Exit codes: 0 completed, 2 usage/config/validation problem, 3 the test
// statistic is undefined for the input (empty or complete graph).

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>
#include <thread>

#include <CLI11.hpp>
#include <json.hpp>

#include "sgtest/errors.hpp"
#include "sgtest/graph.hpp"
#include "sgtest/json_io.hpp"
#include "sgtest/models.hpp"
#include "sgtest/power_lab.hpp"
#include "sgtest/statistics.hpp"

namespace {

constexpr int kExitOk = 0;
constexpr int kExitUsage = 2;
constexpr int kExitDegenerate = 3;

sgt::SamplingPlan parse_plan_flag(const std::string& text) {
  if (text == "full") return sgt::SamplingPlan::full();
  if (text.rfind("node:", 0) == 0) {
    const unsigned long m = std::stoul(text.substr(5));
    return sgt::SamplingPlan::node(static_cast<std::uint32_t>(m));
  }
  if (text.rfind("triple:", 0) == 0) {
    const unsigned long long b = std::stoull(text.substr(7));
    return sgt::SamplingPlan::triple(b);
  }
  throw sgt::ConfigError("bad --plan value \"" + text +
                         "\"; expected full, node:M, or triple:B");
}

unsigned default_workers() {
  if (const char* env = std::getenv("SUBGRAPH_TEST_WORKERS")) {
    const int parsed = std::atoi(env);
    if (parsed >= 1) return static_cast<unsigned>(parsed);
  }
  const unsigned hw = std::thread::hardware_concurrency();
  return hw > 0 ? hw : 1;
}

void write_text_file(const std::filesystem::path& path,
                     const std::string& content) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw sgt::ConfigError("cannot open " + path.string());
  out << content;
  if (!out) throw sgt::ConfigError("short write to " + path.string());
}

int cmd_test(const std::string& graph_path, double alpha,
             const std::string& plan_text, std::uint64_t seed) {
  sgt::SamplingPlan plan = parse_plan_flag(plan_text);
  plan.seed = seed;
  const sgt::Graph graph = sgt::read_edge_list(graph_path);
  const sgt::TestResult result = sgt::run_test(graph, alpha, plan);
  std::cout << sgt::test_result_to_json(result).dump() << "\n";
  std::cerr << "n=" << result.n << " m=" << result.m_edges
            << " p_hat=" << result.stats.p_hat
            << " T^2=" << result.stats.t_squared
            << " p_value=" << result.stats.p_value
            << (result.reject ? " -> reject" : " -> no rejection")
            << " at alpha=" << alpha << "\n";
  return kExitOk;
}

int cmd_gen(const std::string& spec_path, std::uint64_t seed,
            const std::string& out_path) {
  std::ifstream in(spec_path);
  if (!in) throw sgt::ConfigError("cannot open model spec " + spec_path);
  nlohmann::json spec_json;
  try {
    in >> spec_json;
  } catch (const nlohmann::json::exception& e) {
    throw sgt::ConfigError(spec_path + ": " + e.what());
  }
  const sgt::ModelSpec spec = sgt::model_from_json(spec_json);

  sgt::Rng rng(seed);
  const sgt::GeneratedGraph sample = sgt::generate(spec, rng);
  sgt::write_edge_list(sample.graph, out_path);

  nlohmann::json meta;
  meta["model"] = sgt::model_to_json(spec);
  meta["seed"] = seed;
  meta["n"] = sample.graph.node_count();
  meta["m_edges"] = sample.graph.edge_count();
  if (sample.labels) meta["labels"] = *sample.labels;
  if (sample.theta) meta["theta"] = *sample.theta;
  if (sample.xi) meta["xi"] = *sample.xi;
  write_text_file(out_path + ".meta.json", meta.dump(2) + "\n");

  std::cerr << "wrote " << out_path << " (n=" << sample.graph.node_count()
            << ", m=" << sample.graph.edge_count() << ") and " << out_path
            << ".meta.json\n";
  return kExitOk;
}

int cmd_calibrate(const std::string& config_path, const std::string& out_path,
                  unsigned workers) {
  const sgt::ExperimentConfig config =
      sgt::load_experiment_config(config_path);
  std::cerr << "calibration: " << config.grid.size() << " grid entries, "
            << config.replicates << " replicates, " << workers
            << " workers\n";
  const sgt::CalibrationReport report = sgt::run_calibration(config, workers);
  write_text_file(out_path, sgt::calibration_to_json(report).dump(2) + "\n");
  std::cerr << "wrote " << out_path << "\n";
  return kExitOk;
}

int cmd_power(const std::string& config_path, const std::string& out_path,
              unsigned workers) {
  const sgt::ExperimentConfig config =
      sgt::load_experiment_config(config_path);
  std::cerr << "power: " << config.grid.size() << " grid entries, "
            << config.replicates << " replicates, " << workers
            << " workers\n";
  const sgt::PowerTable table = sgt::run_power(config, workers);
  write_text_file(out_path, sgt::power_table_to_csv(table));
  std::cerr << "wrote " << out_path << " (" << table.rows.size()
            << " rows)\n";
  return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Erdos-Renyi goodness-of-fit testing from 3-node subgraph "
               "frequencies"};
  app.require_subcommand(1);

  // test
  auto* test_cmd = app.add_subcommand(
      "test", "Test one edge-list file; JSON result on stdout");
  std::string graph_path;
  double alpha = 0.05;
  std::string plan_text = "full";
  std::uint64_t seed = 0;
  test_cmd->add_option("file", graph_path, "edge-list file")->required();
  test_cmd->add_option("--alpha", alpha, "test level in (0,1)");
  test_cmd->add_option("--plan", plan_text, "full | node:M | triple:B");
  test_cmd->add_option("--seed", seed, "sampling seed");

  // gen
  auto* gen_cmd = app.add_subcommand(
      "gen", "Generate a graph from a JSON model spec");
  std::string spec_path, gen_out;
  std::uint64_t gen_seed = 0;
  gen_cmd->add_option("spec", spec_path, "model spec JSON file")->required();
  gen_cmd->add_option("--seed", gen_seed, "generator seed");
  gen_cmd->add_option("-o,--out", gen_out, "output edge-list path")
      ->required();

  // calibrate
  auto* cal_cmd = app.add_subcommand(
      "calibrate", "Null-calibration experiment from a config file");
  std::string cal_config, cal_out;
  unsigned cal_workers = default_workers();
  cal_cmd->add_option("config", cal_config, "experiment config JSON")
      ->required();
  cal_cmd->add_option("-o,--out", cal_out, "output report JSON")->required();
  cal_cmd->add_option("--workers", cal_workers, "worker thread count");

  // power
  auto* power_cmd = app.add_subcommand(
      "power", "Power experiment from a config file; CSV output");
  std::string power_config, power_out;
  unsigned power_workers = default_workers();
  power_cmd->add_option("config", power_config, "experiment config JSON")
      ->required();
  power_cmd->add_option("-o,--out", power_out, "output CSV path")->required();
  power_cmd->add_option("--workers", power_workers, "worker thread count");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kExitOk : kExitUsage;
  }

  try {
    if (test_cmd->parsed()) {
      return cmd_test(graph_path, alpha, plan_text, seed);
    }
    if (gen_cmd->parsed()) {
      return cmd_gen(spec_path, gen_seed, gen_out);
    }
    if (cal_cmd->parsed()) {
      return cmd_calibrate(cal_config, cal_out, cal_workers);
    }
    return cmd_power(power_config, power_out, power_workers);
  } catch (const sgt::DegenerateGraph& e) {
    std::cerr << "degenerate input: " << e.what() << "\n";
    return kExitDegenerate;
  } catch (const sgt::Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitUsage;
  }
}
