#ifndef SGTEST_JSON_IO_HPP
#define SGTEST_JSON_IO_HPP

#include <string>

#include <json.hpp>

#include "sgtest/models.hpp"
#include "sgtest/power_lab.hpp"
#include "sgtest/sampling.hpp"
#include "sgtest/statistics.hpp"

namespace sgt {

// Shortest representation that round-trips the exact double; keeps CSV and
// edge-list output byte-stable across runs and worker counts.
std::string format_double(double value);

// {"variant":"full"|"node"|"triple", "m"/"b":..., "seed":...}
nlohmann::json plan_to_json(const SamplingPlan& plan);
SamplingPlan plan_from_json(const nlohmann::json& j);

// {"model":"er"|"sbm2"|"sbmk"|"sbm_labels"|"config"|"latent", ...}
nlohmann::json model_to_json(const ModelSpec& spec);
ModelSpec model_from_json(const nlohmann::json& j);

// {n, m_edges, p_hat, t:[t0..t3], z2, z3, t_squared, p_value, alpha,
//  reject, plan, seed}
nlohmann::json test_result_to_json(const TestResult& result);

ExperimentConfig experiment_config_from_json(const nlohmann::json& j);
ExperimentConfig load_experiment_config(const std::string& path);

nlohmann::json calibration_to_json(const CalibrationReport& report);

// Fixed column order:
// model,variant_params,n,plan,plan_param,alpha,replicates,snr_raw,
// snr_adjusted,reject_rate,std_err,mean_t2,excluded
std::string power_table_to_csv(const PowerTable& table);

}  // namespace sgt

#endif  // SGTEST_JSON_IO_HPP
