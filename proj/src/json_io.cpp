#include "sgtest/json_io.hpp"

#include <array>
#include <charconv>
#include <fstream>

#include "sgtest/errors.hpp"

namespace sgt {

using nlohmann::json;

std::string format_double(double value) {
  std::array<char, 32> buf;
  const auto [ptr, ec] = std::to_chars(buf.data(), buf.data() + buf.size(),
                                       value);
  return std::string(buf.data(), ptr);
}

json plan_to_json(const SamplingPlan& plan) {
  json j;
  if (std::holds_alternative<FullPlan>(plan.variant)) {
    j["variant"] = "full";
  } else if (const auto* node = std::get_if<NodeSamplePlan>(&plan.variant)) {
    j["variant"] = "node";
    j["m"] = node->m;
  } else {
    j["variant"] = "triple";
    j["b"] = std::get<TripleSamplePlan>(plan.variant).b;
  }
  j["seed"] = plan.seed;
  return j;
}

namespace {

[[noreturn]] void config_fail(const std::string& message) {
  throw ConfigError(message);
}

double require_number(const json& j, const char* key) {
  if (!j.contains(key) || !j[key].is_number()) {
    config_fail(std::string("missing or non-numeric field \"") + key + "\"");
  }
  return j[key].get<double>();
}

std::uint64_t require_uint(const json& j, const char* key) {
  if (!j.contains(key) || !j[key].is_number_unsigned()) {
    config_fail(std::string("missing or non-integer field \"") + key + "\"");
  }
  return j[key].get<std::uint64_t>();
}

}  // namespace

SamplingPlan plan_from_json(const json& j) {
  if (!j.is_object() || !j.contains("variant") || !j["variant"].is_string()) {
    config_fail("plan must be an object with a \"variant\" string");
  }
  const std::string variant = j["variant"].get<std::string>();
  SamplingPlan plan;
  if (variant == "full") {
    plan.variant = FullPlan{};
  } else if (variant == "node") {
    plan.variant =
        NodeSamplePlan{static_cast<std::uint32_t>(require_uint(j, "m"))};
  } else if (variant == "triple") {
    plan.variant = TripleSamplePlan{require_uint(j, "b")};
  } else {
    config_fail("unknown plan variant \"" + variant + "\"");
  }
  if (j.contains("seed")) plan.seed = require_uint(j, "seed");
  return plan;
}

json model_to_json(const ModelSpec& spec) {
  json j;
  j["model"] = model_name(spec);
  if (const auto* s = std::get_if<ErSpec>(&spec)) {
    j["n"] = s->n;
    j["p"] = s->p;
  } else if (const auto* s = std::get_if<Sbm2Spec>(&spec)) {
    j["n"] = s->n;
    j["gamma"] = s->gamma;
    j["a"] = s->a;
    j["b"] = s->b;
  } else if (const auto* s = std::get_if<SbmKSpec>(&spec)) {
    j["n"] = s->n;
    j["k"] = s->k;
    j["a"] = s->a;
    j["b"] = s->b;
    j["balanced"] = s->balanced;
  } else if (const auto* s = std::get_if<SbmLabelsSpec>(&spec)) {
    j["labels"] = s->labels;
    j["a"] = s->a;
    j["b"] = s->b;
  } else if (const auto* s = std::get_if<ConfigSpec>(&spec)) {
    j["theta"] = s->theta;
  } else if (const auto* s = std::get_if<ConfigBetaSpec>(&spec)) {
    j["n"] = s->n;
    j["beta"] = {{"h", s->h}, {"alpha", s->alpha}};
  } else {
    const auto& latent = std::get<LatentSpec>(spec);
    j["n"] = latent.n;
    json funcs = json::array();
    for (const auto& g : latent.funcs) funcs.push_back(g.values);
    j["functions"] = funcs;
  }
  return j;
}

ModelSpec model_from_json(const json& j) {
  if (!j.is_object() || !j.contains("model") || !j["model"].is_string()) {
    config_fail("model must be an object with a \"model\" string");
  }
  const std::string name = j["model"].get<std::string>();
  if (name == "er") {
    return ErSpec{static_cast<std::uint32_t>(require_uint(j, "n")),
                  require_number(j, "p")};
  }
  if (name == "sbm2") {
    return Sbm2Spec{static_cast<std::uint32_t>(require_uint(j, "n")),
                    require_number(j, "gamma"), require_number(j, "a"),
                    require_number(j, "b")};
  }
  if (name == "sbmk") {
    SbmKSpec spec{static_cast<std::uint32_t>(require_uint(j, "n")),
                  static_cast<std::uint32_t>(require_uint(j, "k")),
                  require_number(j, "a"), require_number(j, "b"), true};
    if (j.contains("balanced")) {
      if (!j["balanced"].is_boolean()) config_fail("\"balanced\" must be a bool");
      spec.balanced = j["balanced"].get<bool>();
    }
    return spec;
  }
  if (name == "sbm_labels") {
    if (!j.contains("labels") || !j["labels"].is_array()) {
      config_fail("sbm_labels needs a \"labels\" array");
    }
    SbmLabelsSpec spec;
    spec.labels = j["labels"].get<std::vector<std::uint32_t>>();
    spec.a = require_number(j, "a");
    spec.b = require_number(j, "b");
    return spec;
  }
  if (name == "config") {
    const bool has_theta = j.contains("theta");
    const bool has_beta = j.contains("beta");
    if (has_theta == has_beta) {
      config_fail("config needs exactly one of \"theta\" or \"beta\"");
    }
    if (has_theta) {
      if (!j["theta"].is_array()) config_fail("\"theta\" must be an array");
      return ConfigSpec{j["theta"].get<std::vector<double>>()};
    }
    const json& beta = j["beta"];
    if (!beta.is_object()) config_fail("\"beta\" must be an object");
    return ConfigBetaSpec{static_cast<std::uint32_t>(require_uint(j, "n")),
                          require_number(beta, "h"),
                          require_number(beta, "alpha")};
  }
  if (name == "latent") {
    if (!j.contains("functions") || !j["functions"].is_array()) {
      config_fail("latent needs a \"functions\" array of value arrays");
    }
    LatentSpec spec;
    spec.n = static_cast<std::uint32_t>(require_uint(j, "n"));
    for (const auto& values : j["functions"]) {
      if (!values.is_array()) config_fail("each feature function is an array");
      spec.funcs.push_back(StepFunction{values.get<std::vector<double>>()});
    }
    return spec;
  }
  config_fail("unknown model \"" + name + "\"");
}

json test_result_to_json(const TestResult& result) {
  json j;
  j["n"] = result.n;
  j["m_edges"] = result.m_edges;
  j["p_hat"] = result.stats.p_hat;
  j["t"] = {result.stats.t0, result.stats.t1, result.stats.t2,
            result.stats.t3};
  j["z2"] = result.stats.z2;
  j["z3"] = result.stats.z3;
  j["t_squared"] = result.stats.t_squared;
  j["p_value"] = result.stats.p_value;
  j["alpha"] = result.alpha;
  j["reject"] = result.reject;
  j["plan"] = plan_to_json(result.plan);
  j["seed"] = result.plan.seed;
  return j;
}

ExperimentConfig experiment_config_from_json(const json& j) {
  if (!j.is_object()) config_fail("experiment config must be a JSON object");
  ExperimentConfig config;
  config.alpha = require_number(j, "alpha");
  config.replicates = static_cast<std::uint32_t>(require_uint(j, "replicates"));
  config.base_seed = require_uint(j, "base_seed");
  if (j.contains("bins")) {
    config.bins = static_cast<std::uint32_t>(require_uint(j, "bins"));
  }
  if (j.contains("plan")) config.plan = plan_from_json(j["plan"]);
  if (!j.contains("models") || !j["models"].is_array() ||
      j["models"].empty()) {
    config_fail("config needs a nonempty \"models\" array");
  }
  for (const auto& entry : j["models"]) {
    GridEntry grid_entry;
    // Either a bare model object, or {"model": {...}, "plan": {...}}.
    if (entry.is_object() && entry.contains("model") &&
        entry["model"].is_object()) {
      grid_entry.model = model_from_json(entry["model"]);
      if (entry.contains("plan")) {
        grid_entry.plan_override = plan_from_json(entry["plan"]);
      }
    } else {
      grid_entry.model = model_from_json(entry);
    }
    config.grid.push_back(std::move(grid_entry));
  }
  return config;
}

ExperimentConfig load_experiment_config(const std::string& path) {
  std::ifstream in(path);
  if (!in) config_fail("cannot open config file " + path);
  json j;
  try {
    in >> j;
  } catch (const json::exception& e) {
    config_fail(path + ": " + e.what());
  }
  return experiment_config_from_json(j);
}

json calibration_to_json(const CalibrationReport& report) {
  json out = json::array();
  for (const auto& entry : report.entries) {
    json e;
    e["model"] = entry.model;
    e["variant_params"] = entry.variant_params;
    e["n"] = entry.n;
    e["plan"] = entry.plan;
    e["plan_param"] = entry.plan_param;
    e["replicates"] = entry.replicates;
    e["excluded"] = entry.excluded;
    e["corr_z2_z3"] = entry.corr_z2_z3;
    json stats = json::array();
    for (const auto& stat : entry.stats) {
      json s;
      s["stat"] = stat.stat;
      json bins = json::array();
      for (const auto& bin : stat.bins) {
        bins.push_back({{"lo", bin.lo}, {"hi", bin.hi}, {"mass", bin.mass}});
      }
      s["bins"] = bins;
      s["mean"] = stat.mean;
      s["var"] = stat.var;
      s["ks"] = stat.ks;
      s["excluded"] = stat.excluded;
      stats.push_back(std::move(s));
    }
    e["stats"] = std::move(stats);
    out.push_back(std::move(e));
  }
  return out;
}

std::string power_table_to_csv(const PowerTable& table) {
  std::string csv =
      "model,variant_params,n,plan,plan_param,alpha,replicates,snr_raw,"
      "snr_adjusted,reject_rate,std_err,mean_t2,excluded\n";
  for (const auto& row : table.rows) {
    csv += row.model;
    csv += ',';
    csv += row.variant_params;
    csv += ',';
    csv += std::to_string(row.n);
    csv += ',';
    csv += row.plan;
    csv += ',';
    csv += std::to_string(row.plan_param);
    csv += ',';
    csv += format_double(row.alpha);
    csv += ',';
    csv += std::to_string(row.replicates);
    csv += ',';
    csv += format_double(row.snr_raw);
    csv += ',';
    csv += format_double(row.snr_adjusted);
    csv += ',';
    csv += format_double(row.reject_rate);
    csv += ',';
    csv += format_double(row.std_err);
    csv += ',';
    csv += format_double(row.mean_t2);
    csv += ',';
    csv += std::to_string(row.excluded);
    csv += '\n';
  }
  return csv;
}

}  // namespace sgt
