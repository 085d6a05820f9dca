#include "abcrl/behavior_costs.hpp"

#include <stdexcept>

namespace abcrl {

ShakeWindow::ShakeWindow(int capacity) : capacity_(capacity) {
  if (capacity < 2) throw std::invalid_argument("ShakeWindow: capacity must be >= 2");
  buf_.assign(static_cast<size_t>(capacity), HorizontalAction::NoOp);
}

void ShakeWindow::push(HorizontalAction a) {
  buf_[static_cast<size_t>(head_)] = a;
  head_ = (head_ + 1) % capacity_;
  if (size_ < capacity_) ++size_;
}

void ShakeWindow::clear() {
  head_ = 0;
  size_ = 0;
}

HorizontalAction ShakeWindow::at(int i) const {
  if (i < 0 || i >= size_) throw std::out_of_range("ShakeWindow::at");
  // head_ points at the slot holding the oldest entry once the buffer is full.
  const int start = (size_ == capacity_) ? head_ : 0;
  return buf_[static_cast<size_t>((start + i) % capacity_)];
}

Rational shaking_cost(const ShakeWindow& window) {
  if (!window.full()) throw std::logic_error("shaking_cost: window not full");
  // A reversal pair is a non-noop action whose nearest non-noop predecessor
  // in the window is its opposite, so a single pass over the condensed
  // non-noop subsequence counts them all.
  int count = 0;
  HorizontalAction last = HorizontalAction::NoOp;
  for (int i = 0; i < window.capacity(); ++i) {
    const HorizontalAction a = window.at(i);
    if (a == HorizontalAction::NoOp) continue;
    if (opposite(last, a)) ++count;
    last = a;
  }
  return Rational::of(count, window.capacity() - 1);
}

SpinTracker::SpinTracker(int step_angle_deg) : step_angle_(step_angle_deg) {
  if (step_angle_deg <= 0 || 360 % step_angle_deg != 0) {
    throw std::invalid_argument("SpinTracker: step angle must be a positive divisor of 360");
  }
}

int SpinTracker::step(HorizontalAction a) {
  if (a == HorizontalAction::NoOp) return 0;
  const SpinDirection dir =
      (a == HorizontalAction::TurnLeft) ? SpinDirection::Left : SpinDirection::Right;
  if (dir != direction_) {
    accumulated_angle_ = 0;
    direction_ = dir;
  }
  const long long before = accumulated_angle_ < 0 ? -accumulated_angle_ : accumulated_angle_;
  accumulated_angle_ += (dir == SpinDirection::Left) ? step_angle_ : -step_angle_;
  const long long after = accumulated_angle_ < 0 ? -accumulated_angle_ : accumulated_angle_;
  return static_cast<int>(after / 360 - before / 360);
}

void SpinTracker::reset() {
  accumulated_angle_ = 0;
  direction_ = SpinDirection::None;
}

double combined_cost(const Rational& shaking, int spin_count, double alpha) {
  if (alpha < 0) throw std::invalid_argument("combined_cost: alpha must be non-negative");
  if (spin_count < 0) throw std::invalid_argument("combined_cost: spin count must be non-negative");
  return shaking.value() + alpha * spin_count;
}

void CostConfig::validate() const {
  if (window < 2) throw std::invalid_argument("cost.window must be >= 2");
  if (alpha < 0) throw std::invalid_argument("cost.alpha must be non-negative");
  if (step_angle_deg <= 0 || 360 % step_angle_deg != 0) {
    throw std::invalid_argument("cost.step_angle must be a positive divisor of 360");
  }
}

namespace {

HorizontalAction move_as_horizontal(MoveAction m) {
  switch (m) {
    case MoveAction::Forward:
      return HorizontalAction::TurnLeft;
    case MoveAction::Backward:
      return HorizontalAction::TurnRight;
    default:
      return HorizontalAction::NoOp;
  }
}

}  // namespace

std::vector<CostSignal> trace_costs(const ActionTrace& trace, const CostConfig& config) {
  config.validate();
  std::vector<CostSignal> out;
  out.reserve(trace.size());

  ShakeWindow rotate_window(config.window);
  ShakeWindow move_window(config.window);
  SpinTracker spin(config.step_angle_deg);

  for (const TraceStep& step : trace) {
    rotate_window.push(step.rotate);
    Rational shaking = rotate_window.full() ? shaking_cost(rotate_window)
                                            : Rational::of(0, config.window - 1);
    if (config.move_channel) {
      move_window.push(move_as_horizontal(step.move));
      if (move_window.full()) shaking = shaking + shaking_cost(move_window);
    }
    const int spins = spin.step(step.rotate);
    out.push_back(CostSignal{shaking, spins, combined_cost(shaking, spins, config.alpha)});
  }
  return out;
}

}  // namespace abcrl
