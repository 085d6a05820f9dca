#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

#include "abcrl/behavior_costs.hpp"
#include "abcrl/collector_env.hpp"
#include "abcrl/scheduler.hpp"
#include "abcrl/training.hpp"

namespace abcrl {

// Configuration problem with a field-level diagnostic in the message.
struct ConfigError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// One trained variant: a display/file name plus its weight scheduler.
struct AgentSpec {
  std::string name;
  SchedulerConfig scheduler;
};

// The experiment file: environment, agents, learner, cost detectors, seeds.
struct RunConfig {
  int config_version = 1;
  EnvConfig env;
  std::vector<AgentSpec> agents;
  LearnerConfig learner;
  int episodes = 0;
  std::vector<std::uint64_t> seeds{1, 2, 3};
  CostConfig cost;
  std::string output_dir;

  void validate() const;  // throws ConfigError
};

// Parses the JSON experiment file. Diagnostics name the offending field.
RunConfig load_run_config(const std::string& path);       // throws ConfigError
RunConfig parse_run_config(const std::string& json_text); // throws ConfigError

// Replaces config seeds with a comma-separated list of unsigned integers
// (the ABCRL_SEED_OVERRIDE contract). Throws ConfigError on malformed input.
void apply_seed_override(RunConfig& config, const std::string& override_value);

// 16-hex-digit FNV-1a hash over the reproducibility-relevant fields:
// config_version, env, learner, episodes, cost. Agent list, seeds, and
// output_dir are deliberately excluded so logs from different agents/seeds of
// one experiment aggregate together.
std::string config_hash_hex(const RunConfig& config);

}  // namespace abcrl
