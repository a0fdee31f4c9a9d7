#ifndef GIBBSLINE_CONFIG_HPP
#define GIBBSLINE_CONFIG_HPP

#include <nlohmann/json.hpp>
#include <string>
#include <utility>
#include <vector>

#include "gibbsline/interactions.hpp"

namespace gibbsline {

struct Limits {
  int r_max = 12;
  int p_max = 22;
  int n_max = 8;
  double tol = 1e-10;
  int max_iter = 200000;
};

struct ScanSpec {
  std::vector<int> r_values;
  std::vector<int> p_values;
  std::vector<long> s_values;
  std::vector<std::pair<int, int>> r_pairs;
  double xi = 0.5;
  int k_max = 8;
};

struct OutputSpec {
  std::string dir = "out";
  bool csv = true;
  bool json = true;
};

struct RunConfig {
  PairInteraction model = PairInteraction::zero();
  GrowthSpec growth;
  Limits limits;
  ScanSpec scan;
  OutputSpec output;
  nlohmann::json canonical;  // normalized config with defaults filled
  std::string config_hash;   // stable digest of the canonical form
};

/// Aggregates every schema error before failing.
struct ConfigError : std::runtime_error {
  std::vector<std::string> errors;
  explicit ConfigError(std::vector<std::string> errs);
};

RunConfig parse_config_json(const nlohmann::json& j, bool override_condition_flag = false);
RunConfig parse_config(const std::string& path, bool override_condition_flag = false);

}  // namespace gibbsline

#endif  // GIBBSLINE_CONFIG_HPP
