#pragma once

#include <cstdint>
#include <iosfwd>
#include <string>
#include <vector>

#include "abcrl/run_log_io.hpp"

namespace abcrl {

// Terminal statistics of one run: means over the last 10% of episodes
// (at least one episode).
struct SeedStats {
  std::string agent;
  std::uint64_t seed = 0;
  int episodes = 0;
  double mean_raw_return = 0.0;
  double mean_shaking = 0.0;
  double mean_spins = 0.0;
};

SeedStats terminal_stats(const ParsedRunLog& log);

// Per-agent aggregate: the per-seed terminal statistics averaged over seeds.
struct AgentAggregate {
  std::string agent;
  int seed_count = 0;
  double mean_raw_return = 0.0;
  double mean_shaking = 0.0;
  double mean_spins = 0.0;
};

// Groups logs by agent (sorted by name, so input order never matters).
// Throws LogFormatError if the logs carry different config hashes.
std::vector<AgentAggregate> aggregate_runs(const std::vector<ParsedRunLog>& logs);

// Aggregate CSV: `# config_hash=...` then agent,seeds,mean_raw_return,...
void write_aggregate_csv(std::ostream& out, const std::vector<AgentAggregate>& aggregates,
                         const std::string& config_hash);

// One human play session, produced from a trace by the cost command.
struct HumanCostRow {
  std::string trace;
  double mean_shaking = 0.0;
  long long total_spins = 0;
};

// Parses `trace,mean_shaking,total_spins` CSV. Throws LogFormatError.
std::vector<HumanCostRow> read_human_summary(std::istream& in);

// Plot-ready long format: agent,seed,episode,metric,value. Curve metrics are
// raw_return (as logged), raw_return_smooth / shaking_mean_smooth /
// spin_total_smooth (trailing mean over `smoothing_window` episodes), weight
// and lambda. Human rows, when given, appear once per metric with
// agent=human, seed=0, episode=0.
void write_curves_csv(std::ostream& out, const std::vector<ParsedRunLog>& logs,
                      const std::string& config_hash, int smoothing_window,
                      const std::vector<HumanCostRow>& human);

}  // namespace abcrl
