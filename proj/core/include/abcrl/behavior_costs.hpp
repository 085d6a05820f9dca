#pragma once

#include <vector>

#include "abcrl/actions.hpp"
#include "abcrl/rational.hpp"
#include "abcrl/trace.hpp"

namespace abcrl {

// Ring buffer over the most recent `capacity` horizontal actions. Cost
// evaluation is defined only once the buffer is full.
class ShakeWindow {
 public:
  explicit ShakeWindow(int capacity);

  void push(HorizontalAction a);
  void clear();

  bool full() const { return size_ == capacity_; }
  int capacity() const { return capacity_; }
  int size() const { return size_; }

  // i = 0 is the oldest action in the window.
  HorizontalAction at(int i) const;

 private:
  std::vector<HorizontalAction> buf_;
  int capacity_;
  int head_ = 0;  // slot the next push writes to
  int size_ = 0;
};

// Normalized direction-reversal count of a full window: the number of
// consecutive subsequences <a_i,...,a_j> with a_i, a_j opposite and only
// no-ops in between, divided by capacity-1. Throws std::logic_error if the
// window is not full.
Rational shaking_cost(const ShakeWindow& window);

enum class SpinDirection : int { None = 0, Left = 1, Right = 2 };

// Accumulates same-direction rotation and reports each completed 360-degree
// revolution. Any change of rotation direction resets the accumulator before
// the new step accrues; reaching an exact multiple of 360 counts at the step
// that reaches it.
class SpinTracker {
 public:
  explicit SpinTracker(int step_angle_deg);

  // Returns the number of full revolutions completed by this step (0 or 1).
  int step(HorizontalAction a);
  void reset();

  // Signed degrees since the last direction change; left turns accrue
  // positive, right turns negative.
  long long accumulated_angle() const { return accumulated_angle_; }
  SpinDirection current_direction() const { return direction_; }
  int step_angle() const { return step_angle_; }

 private:
  int step_angle_;
  long long accumulated_angle_ = 0;
  SpinDirection direction_ = SpinDirection::None;
};

// Per-step cost record: combined = shaking + alpha * spin_count.
struct CostSignal {
  Rational shaking;
  int spin_count = 0;
  double combined = 0.0;
};

// Throws std::invalid_argument for negative alpha.
double combined_cost(const Rational& shaking, int spin_count, double alpha);

struct CostConfig {
  int window = 8;
  double alpha = 1.0;
  int step_angle_deg = 72;
  // When set, forward/backward moves feed a second reversal detector whose
  // cost is added to the rotation shaking cost.
  bool move_channel = false;

  void validate() const;  // throws std::invalid_argument
};

// Batch wrapper around the streaming detectors: one CostSignal per trace
// step. Steps before the shake window first fills report shaking 0. An empty
// trace yields an empty sequence.
std::vector<CostSignal> trace_costs(const ActionTrace& trace, const CostConfig& config);

}  // namespace abcrl
