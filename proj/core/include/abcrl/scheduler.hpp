#pragma once

#include <stdexcept>
#include <string>
#include <vector>

namespace abcrl {

// Sliding statistics over raw episode returns. v_max tracks the running
// maximum of the windowed average (not of individual returns), which keeps
// threshold selection robust to single-episode spikes.
class ValueTracker {
 public:
  explicit ValueTracker(int capacity);

  void push(double episode_return);

  bool empty() const { return episodes_seen_ == 0; }
  int episodes_seen() const { return episodes_seen_; }

  // Mean over the most recent min(capacity, episodes_seen) returns.
  double average() const;
  // Running maximum of `average()` after each push; non-decreasing.
  double max_average() const;

 private:
  std::vector<double> window_;
  int capacity_;
  int next_ = 0;
  int count_ = 0;
  int episodes_seen_ = 0;
  double sum_ = 0.0;
  double max_average_ = 0.0;
};

enum class SchedulerKind { Baseline, Const, AbcSigmoid, AbCpo };

std::string scheduler_kind_name(SchedulerKind kind);
SchedulerKind scheduler_kind_from_name(const std::string& name);  // throws std::invalid_argument

// How the value threshold v_th is chosen: a fixed value, or a running
// fraction of the maximum windowed average seen so far.
struct VthMode {
  enum class Kind { Fixed, FractionOfMax };
  Kind kind = Kind::FractionOfMax;
  double value = 0.8;  // threshold for Fixed, fraction in (0,1] for FractionOfMax
};

struct SchedulerConfig {
  SchedulerKind kind = SchedulerKind::Baseline;
  double max_weight = 0.3;  // W, sigmoid weight ceiling
  double slope_h = 0.0;     // sigmoid slope; <= 0 selects 0.1 * max(|v_th|, 1)
  double mu = 0.1;
  double lambda0 = 1.0;
  double delta = 1e-3;
  VthMode v_th_mode;
  double stability_loss_threshold = 2.0;
  int window_k = 10;

  void validate() const;  // throws std::invalid_argument
};

// Per-episode state snapshot, one row of the scheduler log.
struct SchedulerSnapshot {
  double v_avg = 0.0;
  double v_max = 0.0;
  double v_th = 0.0;
  double lambda = 0.0;
  double weight = 0.0;
};

// Episode-level weight scheduler for the four agent variants. begin_episode
// produces the behavioral weight for the whole episode; end_episode feeds the
// raw (unadjusted) return back in.
class Scheduler {
 public:
  explicit Scheduler(SchedulerConfig config);

  double begin_episode();
  void end_episode(double raw_return, double mean_policy_loss);

  double lambda() const { return lambda_; }
  double last_weight() const { return last_weight_; }
  double v_th() const;    // current threshold
  double v_avg() const;   // windowed average; requires at least one episode
  double v_max() const;   // requires at least one episode
  bool has_history() const { return !tracker_.empty(); }

  SchedulerSnapshot snapshot() const;
  const SchedulerConfig& config() const { return config_; }

 private:
  double effective_h() const;

  SchedulerConfig config_;
  ValueTracker tracker_;
  double lambda_;
  double v_th_;
  double last_weight_ = 0.0;
};

}  // namespace abcrl
