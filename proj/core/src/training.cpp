#include "abcrl/training.hpp"

#include <cmath>
#include <limits>
#include <stdexcept>

namespace abcrl {

void LearnerConfig::validate() const {
  if (!(learning_rate > 0.0) || !std::isfinite(learning_rate)) {
    throw std::invalid_argument("learning_rate must be finite and > 0");
  }
  if (!(clip_epsilon > 0.0)) {
    throw std::invalid_argument("clip_epsilon must be > 0");
  }
  if (!(gamma > 0.0) || !(gamma <= 1.0)) {
    throw std::invalid_argument("gamma must be in (0, 1]");
  }
  if (batch_episodes < 1) {
    throw std::invalid_argument("batch_episodes must be >= 1");
  }
  if (epochs < 1) {
    throw std::invalid_argument("epochs must be >= 1");
  }
}

std::uint64_t mix_seed(std::uint64_t seed, std::uint64_t stream) {
  // splitmix64 finalizer over seed + stream; decouples the per-consumer
  // streams of a single run seed.
  std::uint64_t z = seed + stream * 0x9E3779B97F4A7C15ULL;
  z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
  z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
  return z ^ (z >> 31);
}

RunLog run_training(const EnvConfig& env_config, const SchedulerConfig& scheduler_config,
                    const LearnerConfig& learner_config, const CostConfig& cost_config,
                    int episodes, std::uint64_t seed) {
  env_config.validate();
  scheduler_config.validate();
  learner_config.validate();
  cost_config.validate();
  if (episodes < 0) {
    throw std::invalid_argument("episodes must be >= 0");
  }

  EnvConfig env_cfg = env_config;
  env_cfg.seed = mix_seed(seed, 1);
  CollectorEnv env(env_cfg);
  std::mt19937_64 policy_rng(mix_seed(seed, 2));

  PolicyParams params = PolicyParams::zeros(env_cfg.feature_dim(), learner_config.learning_rate,
                                            learner_config.clip_epsilon, learner_config.gamma);
  Scheduler scheduler(scheduler_config);

  RunLog log;
  log.rows.reserve(static_cast<size_t>(episodes));
  log.scheduler_rows.reserve(static_cast<size_t>(episodes));

  std::vector<Trajectory> batch;
  batch.reserve(static_cast<size_t>(learner_config.batch_episodes));
  // Before the first update there is no loss measurement; +infinity keeps the
  // AB-CPO stability gate closed.
  double last_update_loss = std::numeric_limits<double>::infinity();
  const Rational zero_shaking = Rational::of(0, cost_config.window - 1);

  for (int episode = 1; episode <= episodes; ++episode) {
    double weight = scheduler.begin_episode();
    Observation obs = env.reset();
    ShakeWindow window(cost_config.window);
    SpinTracker tracker(cost_config.step_angle_deg);

    Trajectory traj;
    traj.transitions.reserve(static_cast<size_t>(env_cfg.episode_steps));
    ActionTrace trace;
    trace.reserve(static_cast<size_t>(env_cfg.episode_steps));
    double discount = 1.0;
    double shaking_sum = 0.0;

    for (int t = 0; t < env_cfg.episode_steps; ++t) {
      ActionSample sample = select_action(params, obs, policy_rng);
      StepResult result = env.step(sample.action);

      double cost = 0.0;
      double shaking_value = 0.0;
      if (learner_config.collect_costs) {
        window.push(result.rotation);
        Rational shaking = window.full() ? shaking_cost(window) : zero_shaking;
        int spins = tracker.step(result.rotation);
        cost = combined_cost(shaking, spins, cost_config.alpha);
        shaking_value = shaking.value();
        shaking_sum += shaking_value;
        traj.spin_total += spins;
      }

      Transition tr;
      tr.features = obs;
      tr.action_index = sample.index;
      tr.raw_reward = result.reward;
      tr.cost = cost;
      tr.adjusted_reward = adjust_reward(result.reward, weight, cost);
      tr.log_prob = sample.log_prob;
      traj.raw_return += discount * tr.raw_reward;
      traj.adjusted_return += discount * tr.adjusted_reward;
      discount *= learner_config.gamma;
      traj.transitions.push_back(std::move(tr));
      trace.push_back(TraceStep{sample.action.move, sample.action.rotate});

      obs = std::move(result.observation);
      if (result.done) {
        break;
      }
    }
    traj.shaking_mean =
        traj.transitions.empty() ? 0.0 : shaking_sum / static_cast<double>(traj.transitions.size());

    double raw_return = traj.raw_return;
    double shaking_mean = traj.shaking_mean;
    int spin_total = traj.spin_total;
    double adjusted_return = traj.adjusted_return;
    batch.push_back(std::move(traj));
    if (static_cast<int>(batch.size()) == learner_config.batch_episodes) {
      UpdateResult updated = update(params, batch, learner_config.epochs);
      params = std::move(updated.params);
      last_update_loss = updated.mean_policy_loss;
      batch.clear();
    }
    scheduler.end_episode(raw_return, last_update_loss);

    RunLogRow row;
    row.episode = episode;
    row.raw_return = raw_return;
    row.adjusted_return = adjusted_return;
    row.shaking_mean = shaking_mean;
    row.spin_total = spin_total;
    row.weight = weight;
    row.lambda = scheduler.lambda();
    row.v_avg = scheduler.v_avg();
    row.v_th = scheduler.v_th();
    log.rows.push_back(row);
    log.scheduler_rows.push_back(scheduler.snapshot());

    if (episode == episodes) {
      log.final_episode_trace = std::move(trace);
    }
  }

  log.final_params = std::move(params);
  return log;
}

}  // namespace abcrl
