#pragma once

#include <cstdint>
#include <iosfwd>
#include <stdexcept>
#include <string>
#include <vector>

#include "abcrl/behavior_costs.hpp"
#include "abcrl/policy.hpp"
#include "abcrl/scheduler.hpp"
#include "abcrl/training.hpp"

namespace abcrl {

// Malformed log/report file; message carries the 1-based line number.
struct LogFormatError : std::runtime_error {
  LogFormatError(size_t line, const std::string& message);
  size_t line;
};

// Shortest round-trippable decimal for a double (printf %.17g).
std::string format_double(double value);

// RunLog CSV: two comment headers (config hash; agent + seed) followed by
//   episode,raw_return,adjusted_return,shaking_mean,spin_total,weight,lambda,v_avg,v_th
void write_run_log(std::ostream& out, const std::vector<RunLogRow>& rows,
                   const std::string& config_hash, const std::string& agent, std::uint64_t seed);

struct ParsedRunLog {
  std::string config_hash;
  std::string agent;
  std::uint64_t seed = 0;
  std::vector<RunLogRow> rows;
};

ParsedRunLog read_run_log(std::istream& in);              // throws LogFormatError
ParsedRunLog load_run_log(const std::string& path);       // throws LogFormatError

// Scheduler snapshot CSV: same comment headers, then
//   episode,v_avg,v_max,v_th,lambda,weight
void write_scheduler_log(std::ostream& out, const std::vector<SchedulerSnapshot>& rows,
                         const std::string& config_hash, const std::string& agent,
                         std::uint64_t seed);

// Per-step cost report CSV: step,shaking,spin_count,combined (shaking as a
// float), then a trailing summary comment: mean shaking and total spins.
void write_cost_report(std::ostream& out, const std::vector<CostSignal>& signals);

// Final policy as JSON: feature_dim, action count, config hash, flat weights.
void write_policy_json(std::ostream& out, const PolicyParams& params,
                       const std::string& config_hash);
PolicyParams read_policy_json(std::istream& in, std::string* config_hash);  // throws LogFormatError

}  // namespace abcrl
