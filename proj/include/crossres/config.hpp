#pragma once

#include <string>
#include <vector>

#include <json.hpp>

#include "crossres/ecs.hpp"
#include "crossres/model.hpp"

namespace crossres {

enum class SeedPolicy { predictions, predictions_and_ecs };

/// One experiment: the model plus the h-sweep and oracle settings.
struct ExperimentConfig {
  ProblemSpec problem;
  std::vector<double> h_values;       // strictly positive, sorted descending
  std::vector<int> N{8192};           // one value for all h, or one per h
  std::vector<double> theta_values;   // first entry is the primary angle
  std::vector<OracleMethod> methods{OracleMethod::ecs, OracleMethod::wronskian};
  SeedPolicy seeds = SeedPolicy::predictions;
  double theta_tolerance = 1e-6;      // theta-stability filter
  int threads = 0;                    // 0: hardware concurrency

  int N_for(std::size_t h_index) const;
  /// Primary angle followed by the others; defaults to {theta, theta + 0.05}.
  std::vector<double> thetas() const;
};

AnalyticFunction parse_function(const nlohmann::json& j, const std::string& name);
nlohmann::json function_to_json(const AnalyticFunction& f);

ExperimentConfig parse_config(const nlohmann::json& j);
ExperimentConfig load_config(const std::string& path);
nlohmann::json config_to_json(const ExperimentConfig& config);

}  // namespace crossres
