#include <benchmark/benchmark.h>

#include <random>

#include "abcrl/actions.hpp"
#include "abcrl/collector_env.hpp"

namespace {

void BM_EnvStep(benchmark::State& state) {
  abcrl::EnvConfig config;
  config.seed = 17;
  abcrl::CollectorEnv env(config);
  env.reset();

  std::mt19937_64 rng(3);
  std::uniform_int_distribution<int> action_dist(0, abcrl::kNumJointActions - 1);
  for (auto _ : state) {
    if (env.done()) {
      state.PauseTiming();
      env.reset();
      state.ResumeTiming();
    }
    benchmark::DoNotOptimize(env.step(abcrl::joint_action_from_index(action_dist(rng))));
  }
  state.SetItemsProcessed(state.iterations());
}
BENCHMARK(BM_EnvStep);

void BM_EnvObserve(benchmark::State& state) {
  abcrl::EnvConfig config;
  config.seed = 17;
  abcrl::CollectorEnv env(config);
  env.reset();
  for (auto _ : state) {
    benchmark::DoNotOptimize(env.observe());
  }
  state.SetItemsProcessed(state.iterations());
}
BENCHMARK(BM_EnvObserve);

void BM_EnvEpisode(benchmark::State& state) {
  abcrl::EnvConfig config;
  config.seed = 17;
  config.episode_steps = static_cast<int>(state.range(0));
  abcrl::CollectorEnv env(config);

  std::mt19937_64 rng(3);
  std::uniform_int_distribution<int> action_dist(0, abcrl::kNumJointActions - 1);
  for (auto _ : state) {
    env.reset();
    while (!env.done()) {
      benchmark::DoNotOptimize(env.step(abcrl::joint_action_from_index(action_dist(rng))));
    }
  }
  state.SetItemsProcessed(state.iterations() * state.range(0));
}
BENCHMARK(BM_EnvEpisode)->Arg(500);

}  // namespace
