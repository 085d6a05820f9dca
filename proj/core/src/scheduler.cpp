#include "abcrl/scheduler.hpp"

#include <algorithm>
#include <cmath>

#include "abcrl/lagrangian.hpp"

namespace abcrl {

ValueTracker::ValueTracker(int capacity) : capacity_(capacity) {
  if (capacity < 1) {
    throw std::invalid_argument("ValueTracker capacity must be >= 1");
  }
  window_.resize(static_cast<size_t>(capacity), 0.0);
}

void ValueTracker::push(double episode_return) {
  if (count_ == capacity_) {
    sum_ -= window_[static_cast<size_t>(next_)];
  } else {
    ++count_;
  }
  window_[static_cast<size_t>(next_)] = episode_return;
  next_ = (next_ + 1) % capacity_;
  ++episodes_seen_;
  sum_ += episode_return;
  double avg = sum_ / count_;
  if (episodes_seen_ == 1 || avg > max_average_) {
    max_average_ = avg;
  }
}

double ValueTracker::average() const {
  if (count_ == 0) {
    throw std::logic_error("ValueTracker::average called before any push");
  }
  return sum_ / count_;
}

double ValueTracker::max_average() const {
  if (count_ == 0) {
    throw std::logic_error("ValueTracker::max_average called before any push");
  }
  return max_average_;
}

std::string scheduler_kind_name(SchedulerKind kind) {
  switch (kind) {
    case SchedulerKind::Baseline:
      return "baseline";
    case SchedulerKind::Const:
      return "const";
    case SchedulerKind::AbcSigmoid:
      return "abc_sigmoid";
    case SchedulerKind::AbCpo:
      return "ab_cpo";
  }
  throw std::invalid_argument("unknown SchedulerKind");
}

SchedulerKind scheduler_kind_from_name(const std::string& name) {
  if (name == "baseline") return SchedulerKind::Baseline;
  if (name == "const") return SchedulerKind::Const;
  if (name == "abc_sigmoid") return SchedulerKind::AbcSigmoid;
  if (name == "ab_cpo") return SchedulerKind::AbCpo;
  throw std::invalid_argument("unknown scheduler kind '" + name +
                              "' (expected baseline, const, abc_sigmoid or ab_cpo)");
}

void SchedulerConfig::validate() const {
  if (!(max_weight >= 0.0) || !std::isfinite(max_weight)) {
    throw std::invalid_argument("scheduler max_weight must be finite and >= 0");
  }
  if (std::isnan(slope_h)) {
    throw std::invalid_argument("scheduler slope_h must not be NaN");
  }
  if (!(mu > 0.0) || !std::isfinite(mu)) {
    throw std::invalid_argument("scheduler mu must be finite and > 0");
  }
  if (!(lambda0 >= 0.0) || !std::isfinite(lambda0)) {
    throw std::invalid_argument("scheduler lambda0 must be finite and >= 0");
  }
  if (!(delta > 0.0) || !std::isfinite(delta)) {
    throw std::invalid_argument("scheduler delta must be finite and > 0");
  }
  if (v_th_mode.kind == VthMode::Kind::Fixed) {
    if (std::isnan(v_th_mode.value)) {
      throw std::invalid_argument("fixed v_th must not be NaN");
    }
  } else {
    if (!(v_th_mode.value > 0.0) || !(v_th_mode.value <= 1.0)) {
      throw std::invalid_argument("v_th fraction must be in (0, 1]");
    }
  }
  if (!(stability_loss_threshold > 0.0)) {
    throw std::invalid_argument("stability_loss_threshold must be > 0");
  }
  if (window_k < 1) {
    throw std::invalid_argument("window_k must be >= 1");
  }
}

Scheduler::Scheduler(SchedulerConfig config)
    : config_(config), tracker_(config.window_k), lambda_(config.lambda0) {
  config_.validate();
  v_th_ = config_.v_th_mode.kind == VthMode::Kind::Fixed ? config_.v_th_mode.value : 0.0;
}

double Scheduler::effective_h() const {
  if (config_.slope_h > 0.0) {
    return config_.slope_h;
  }
  // Auto slope: a tenth of the threshold scale. A non-finite threshold has no
  // scale; any positive slope gives the same saturated sigmoid, so use 1.
  if (!std::isfinite(v_th_)) {
    return 1.0;
  }
  return 0.1 * std::max(std::abs(v_th_), 1.0);
}

double Scheduler::begin_episode() {
  double weight = 0.0;
  switch (config_.kind) {
    case SchedulerKind::Baseline:
      weight = 0.0;
      break;
    case SchedulerKind::Const:
      weight = 1.0;
      break;
    case SchedulerKind::AbcSigmoid:
      // Until a return is observed the agent is presumed far below threshold.
      weight = tracker_.empty()
                   ? 0.0
                   : sigmoid_weight(config_.max_weight, effective_h(), tracker_.average(), v_th_);
      break;
    case SchedulerKind::AbCpo: {
      LagrangianParams p;
      p.lambda = lambda_;
      p.mu = config_.mu;
      p.v_th = v_th_;
      p.delta = config_.delta;
      // With no history the constraint-gap term is unknown; fall back to the
      // multiplier alone.
      weight = tracker_.empty() ? 1.0 / std::max(config_.delta, lambda_)
                                : penalty_weight(p, tracker_.average());
      break;
    }
  }
  last_weight_ = weight;
  return weight;
}

void Scheduler::end_episode(double raw_return, double mean_policy_loss) {
  tracker_.push(raw_return);
  if (config_.v_th_mode.kind == VthMode::Kind::FractionOfMax) {
    v_th_ = config_.v_th_mode.value * tracker_.max_average();
  }
  if (config_.kind == SchedulerKind::AbCpo && mean_policy_loss < config_.stability_loss_threshold) {
    lambda_ = lambda_update(lambda_, config_.mu, v_th_, tracker_.average());
  }
}

double Scheduler::v_th() const { return v_th_; }

double Scheduler::v_avg() const { return tracker_.average(); }

double Scheduler::v_max() const { return tracker_.max_average(); }

SchedulerSnapshot Scheduler::snapshot() const {
  SchedulerSnapshot snap;
  snap.v_avg = tracker_.empty() ? 0.0 : tracker_.average();
  snap.v_max = tracker_.empty() ? 0.0 : tracker_.max_average();
  snap.v_th = v_th_;
  snap.lambda = lambda_;
  snap.weight = last_weight_;
  return snap;
}

}  // namespace abcrl
