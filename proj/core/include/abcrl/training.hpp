#pragma once

#include <cstdint>
#include <vector>

#include "abcrl/behavior_costs.hpp"
#include "abcrl/collector_env.hpp"
#include "abcrl/policy.hpp"
#include "abcrl/scheduler.hpp"
#include "abcrl/trace.hpp"

namespace abcrl {

struct LearnerConfig {
  double learning_rate = 0.4;
  double clip_epsilon = 0.2;
  double gamma = 0.99;
  int batch_episodes = 4;
  int epochs = 4;
  // When false, the cost detectors are not run at all (pure task learner);
  // exists so tests can prove the cost machinery alone never perturbs
  // parameter trajectories when the weight is zero.
  bool collect_costs = true;

  void validate() const;  // throws std::invalid_argument
};

// One RunLog row per episode.
struct RunLogRow {
  int episode = 0;  // 1-based
  double raw_return = 0.0;
  double adjusted_return = 0.0;
  double shaking_mean = 0.0;
  int spin_total = 0;
  double weight = 0.0;
  double lambda = 0.0;
  double v_avg = 0.0;
  double v_th = 0.0;
};

struct RunLog {
  std::vector<RunLogRow> rows;
  std::vector<SchedulerSnapshot> scheduler_rows;  // same order as rows
  PolicyParams final_params;
  ActionTrace final_episode_trace;  // last episode, exportable as a trace file
};

// Derives independent deterministic seed streams from one run seed.
std::uint64_t mix_seed(std::uint64_t seed, std::uint64_t stream);

// Full training run: per episode, freeze the behavioral weight, roll out with
// streaming cost detectors adjusting rewards step by step, update the policy
// every batch_episodes episodes, and feed the raw return back to the
// scheduler. Deterministic given the configs and seed.
RunLog run_training(const EnvConfig& env_config, const SchedulerConfig& scheduler_config,
                    const LearnerConfig& learner_config, const CostConfig& cost_config,
                    int episodes, std::uint64_t seed);

}  // namespace abcrl
