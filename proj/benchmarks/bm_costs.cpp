#include <benchmark/benchmark.h>

#include <random>
#include <vector>

#include "abcrl/behavior_costs.hpp"
#include "abcrl/trace.hpp"

namespace {

abcrl::ActionTrace random_trace(size_t length, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::uniform_int_distribution<int> move_dist(0, 2);
  std::uniform_int_distribution<int> rot_dist(0, 2);
  abcrl::ActionTrace trace;
  trace.reserve(length);
  for (size_t i = 0; i < length; ++i) {
    trace.push_back(abcrl::TraceStep{static_cast<abcrl::MoveAction>(move_dist(rng)),
                                     static_cast<abcrl::HorizontalAction>(rot_dist(rng))});
  }
  return trace;
}

void BM_TraceCosts(benchmark::State& state) {
  const abcrl::ActionTrace trace = random_trace(static_cast<size_t>(state.range(0)), 99);
  abcrl::CostConfig config;
  config.window = static_cast<int>(state.range(1));
  for (auto _ : state) {
    benchmark::DoNotOptimize(abcrl::trace_costs(trace, config));
  }
  state.SetItemsProcessed(state.iterations() * state.range(0));
}
BENCHMARK(BM_TraceCosts)->Args({500, 8})->Args({2000, 8})->Args({2000, 16});

void BM_ShakingWindowStep(benchmark::State& state) {
  const abcrl::ActionTrace trace = random_trace(4096, 7);
  abcrl::ShakeWindow window(static_cast<int>(state.range(0)));
  size_t i = 0;
  for (auto _ : state) {
    window.push(trace[i % trace.size()].rotate);
    if (window.full()) {
      benchmark::DoNotOptimize(abcrl::shaking_cost(window));
    }
    ++i;
  }
  state.SetItemsProcessed(state.iterations());
}
BENCHMARK(BM_ShakingWindowStep)->Arg(8)->Arg(16);

void BM_SpinTrackerStep(benchmark::State& state) {
  const abcrl::ActionTrace trace = random_trace(4096, 11);
  abcrl::SpinTracker tracker(72);
  size_t i = 0;
  for (auto _ : state) {
    benchmark::DoNotOptimize(tracker.step(trace[i % trace.size()].rotate));
    ++i;
  }
  state.SetItemsProcessed(state.iterations());
}
BENCHMARK(BM_SpinTrackerStep);

}  // namespace

// The prebuilt benchmark_main archive on some toolchains carries incompatible
// LTO bytecode; providing the entry point here avoids linking it.
BENCHMARK_MAIN();
