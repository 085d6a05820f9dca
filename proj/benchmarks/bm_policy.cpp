#include <benchmark/benchmark.h>

#include <random>
#include <vector>

#include "abcrl/policy.hpp"

namespace {

abcrl::PolicyParams random_params(int feature_dim, std::uint64_t seed) {
  abcrl::PolicyParams params = abcrl::PolicyParams::zeros(feature_dim, 0.05, 0.2, 0.99);
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> dist(-0.5, 0.5);
  for (double& w : params.weights) w = dist(rng);
  return params;
}

std::vector<abcrl::Trajectory> random_batch(const abcrl::PolicyParams& params, int episodes,
                                            int steps, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> feature_dist(0.0, 1.0);
  std::uniform_real_distribution<double> reward_dist(-1.0, 1.0);
  std::vector<abcrl::Trajectory> batch(episodes);
  for (abcrl::Trajectory& traj : batch) {
    traj.transitions.resize(steps);
    for (abcrl::Transition& t : traj.transitions) {
      t.features.resize(params.feature_dim);
      for (double& f : t.features) f = feature_dist(rng);
      const abcrl::ActionSample sample = abcrl::select_action(params, t.features, rng);
      t.action_index = sample.index;
      t.log_prob = sample.log_prob;
      t.adjusted_reward = reward_dist(rng);
    }
  }
  return batch;
}

void BM_ActionProbabilities(benchmark::State& state) {
  const abcrl::PolicyParams params = random_params(20, 5);
  std::mt19937_64 rng(6);
  std::uniform_real_distribution<double> feature_dist(0.0, 1.0);
  abcrl::Observation features(20);
  for (double& f : features) f = feature_dist(rng);

  for (auto _ : state) {
    benchmark::DoNotOptimize(abcrl::action_probabilities(params, features));
  }
  state.SetItemsProcessed(state.iterations());
}
BENCHMARK(BM_ActionProbabilities);

void BM_SelectAction(benchmark::State& state) {
  const abcrl::PolicyParams params = random_params(20, 5);
  std::mt19937_64 rng(6);
  std::uniform_real_distribution<double> feature_dist(0.0, 1.0);
  abcrl::Observation features(20);
  for (double& f : features) f = feature_dist(rng);

  for (auto _ : state) {
    benchmark::DoNotOptimize(abcrl::select_action(params, features, rng));
  }
  state.SetItemsProcessed(state.iterations());
}
BENCHMARK(BM_SelectAction);

void BM_PolicyUpdate(benchmark::State& state) {
  const abcrl::PolicyParams params = random_params(20, 5);
  const std::vector<abcrl::Trajectory> batch =
      random_batch(params, static_cast<int>(state.range(0)), static_cast<int>(state.range(1)), 8);

  for (auto _ : state) {
    benchmark::DoNotOptimize(abcrl::update(params, batch, 4));
  }
  state.SetItemsProcessed(state.iterations() * state.range(0) * state.range(1));
}
BENCHMARK(BM_PolicyUpdate)->Args({4, 500});

}  // namespace
