#pragma once

#include <random>
#include <vector>

#include "abcrl/actions.hpp"
#include "abcrl/collector_env.hpp"

namespace abcrl {

// Linear softmax policy over the observation features: one logit per joint
// action, logit_a = w[., a] . features.
struct PolicyParams {
  int feature_dim = 0;
  std::vector<double> weights;  // row-major [feature][action], feature_dim x kNumJointActions
  double learning_rate = 0.4;
  double clip_epsilon = 0.2;
  double gamma = 0.99;

  static PolicyParams zeros(int feature_dim, double learning_rate, double clip_epsilon,
                            double gamma);
  void validate() const;  // throws std::invalid_argument
};

struct Transition {
  Observation features;
  int action_index = 0;
  double raw_reward = 0.0;
  double cost = 0.0;            // combined behavioral cost C(t)
  double adjusted_reward = 0.0; // raw_reward - weight * cost
  double log_prob = 0.0;        // log pi(a|s) at collection time
};

struct Trajectory {
  std::vector<Transition> transitions;
  double raw_return = 0.0;       // sum of gamma^t * raw_reward
  double adjusted_return = 0.0;  // sum of gamma^t * adjusted_reward
  double shaking_mean = 0.0;     // mean per-step shaking cost
  int spin_total = 0;            // total full revolutions
};

// Softmax probabilities over the 9 joint actions. Throws std::runtime_error
// if any logit is non-finite (diverged parameters).
std::vector<double> action_probabilities(const PolicyParams& params, const Observation& features);

struct ActionSample {
  int index = 0;
  JointAction action;
  double log_prob = 0.0;
};

ActionSample select_action(const PolicyParams& params, const Observation& features,
                           std::mt19937_64& rng);

// r' = raw - weight * cost.
double adjust_reward(double raw, double weight, double cost);

struct SurrogateEval {
  double objective = 0.0;       // mean clipped surrogate (to maximize)
  double mean_abs_term = 0.0;   // mean |surrogate term|, the stability-gate loss
  std::vector<double> gradient; // d objective / d weights, same layout as weights
};

// Clipped-ratio surrogate over a batch: per transition,
//   min(r * A, clip(r, 1-eps, 1+eps) * A),
// where r = exp(log pi_new - log pi_old) and A is the discounted
// return-to-go of adjusted rewards minus the batch mean. Gradient flows only
// through the unclipped branch when it attains the min. clip_epsilon may be
// +infinity, which yields the plain (unclipped) surrogate.
SurrogateEval evaluate_surrogate(const PolicyParams& params, const std::vector<Trajectory>& batch,
                                 double clip_epsilon);

struct UpdateResult {
  PolicyParams params;
  double mean_policy_loss = 0.0;  // mean_abs_term averaged over epochs
};

// Several epochs of full-batch gradient ascent on the clipped surrogate.
// Throws std::invalid_argument on an empty batch, std::runtime_error on a
// non-finite gradient.
UpdateResult update(const PolicyParams& params, const std::vector<Trajectory>& batch, int epochs);

}  // namespace abcrl
