#include "abcrl/policy.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace abcrl {

PolicyParams PolicyParams::zeros(int feature_dim, double learning_rate, double clip_epsilon,
                                 double gamma) {
  PolicyParams p;
  p.feature_dim = feature_dim;
  p.weights.assign(static_cast<size_t>(feature_dim) * kNumJointActions, 0.0);
  p.learning_rate = learning_rate;
  p.clip_epsilon = clip_epsilon;
  p.gamma = gamma;
  p.validate();
  return p;
}

void PolicyParams::validate() const {
  if (feature_dim < 1) {
    throw std::invalid_argument("feature_dim must be >= 1");
  }
  if (weights.size() != static_cast<size_t>(feature_dim) * kNumJointActions) {
    throw std::invalid_argument("weights size does not match feature_dim x action count");
  }
  for (double w : weights) {
    if (!std::isfinite(w)) {
      throw std::invalid_argument("weights must be finite");
    }
  }
  if (!(learning_rate > 0.0) || !std::isfinite(learning_rate)) {
    throw std::invalid_argument("learning_rate must be finite and > 0");
  }
  if (!(clip_epsilon > 0.0)) {
    throw std::invalid_argument("clip_epsilon must be > 0");
  }
  if (!(gamma > 0.0) || !(gamma <= 1.0)) {
    throw std::invalid_argument("gamma must be in (0, 1]");
  }
}

namespace {

void action_logits(const PolicyParams& params, const Observation& features, double* logits) {
  if (features.size() != static_cast<size_t>(params.feature_dim)) {
    throw std::invalid_argument("feature vector length does not match policy feature_dim");
  }
  for (int a = 0; a < kNumJointActions; ++a) {
    logits[a] = 0.0;
  }
  for (int f = 0; f < params.feature_dim; ++f) {
    double x = features[static_cast<size_t>(f)];
    if (x == 0.0) {
      continue;
    }
    const double* row = params.weights.data() + static_cast<size_t>(f) * kNumJointActions;
    for (int a = 0; a < kNumJointActions; ++a) {
      logits[a] += x * row[a];
    }
  }
  for (int a = 0; a < kNumJointActions; ++a) {
    if (!std::isfinite(logits[a])) {
      throw std::runtime_error("non-finite policy logits (diverged parameters)");
    }
  }
}

void softmax_from_logits(const double* logits, double* probs) {
  double max_logit = logits[0];
  for (int a = 1; a < kNumJointActions; ++a) {
    max_logit = std::max(max_logit, logits[a]);
  }
  double sum = 0.0;
  for (int a = 0; a < kNumJointActions; ++a) {
    probs[a] = std::exp(logits[a] - max_logit);
    sum += probs[a];
  }
  for (int a = 0; a < kNumJointActions; ++a) {
    probs[a] /= sum;
  }
}

}  // namespace

std::vector<double> action_probabilities(const PolicyParams& params, const Observation& features) {
  double logits[kNumJointActions];
  double probs[kNumJointActions];
  action_logits(params, features, logits);
  softmax_from_logits(logits, probs);
  return std::vector<double>(probs, probs + kNumJointActions);
}

ActionSample select_action(const PolicyParams& params, const Observation& features,
                           std::mt19937_64& rng) {
  std::vector<double> probs = action_probabilities(params, features);
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  double u = unit(rng);
  double cum = 0.0;
  int index = kNumJointActions - 1;  // guard against round-off leaving u above the last cum
  for (int a = 0; a < kNumJointActions; ++a) {
    cum += probs[static_cast<size_t>(a)];
    if (u < cum) {
      index = a;
      break;
    }
  }
  ActionSample sample;
  sample.index = index;
  sample.action = joint_action_from_index(index);
  sample.log_prob = std::log(probs[static_cast<size_t>(index)]);
  return sample;
}

double adjust_reward(double raw, double weight, double cost) { return raw - weight * cost; }

namespace {

// Advantages: discounted return-to-go of adjusted rewards, centered by the
// batch mean. Independent of the policy parameters, so finite-difference
// probes of the surrogate see a fixed advantage field.
std::vector<std::vector<double>> batch_advantages(const std::vector<Trajectory>& batch,
                                                  double gamma) {
  std::vector<std::vector<double>> advantages(batch.size());
  double sum = 0.0;
  size_t count = 0;
  for (size_t i = 0; i < batch.size(); ++i) {
    const auto& transitions = batch[i].transitions;
    advantages[i].resize(transitions.size());
    double tail = 0.0;
    for (size_t t = transitions.size(); t-- > 0;) {
      tail = transitions[t].adjusted_reward + gamma * tail;
      advantages[i][t] = tail;
      sum += tail;
      ++count;
    }
  }
  if (count == 0) {
    return advantages;
  }
  double mean = sum / static_cast<double>(count);
  for (auto& row : advantages) {
    for (double& a : row) {
      a -= mean;
    }
  }
  return advantages;
}

}  // namespace

SurrogateEval evaluate_surrogate(const PolicyParams& params, const std::vector<Trajectory>& batch,
                                 double clip_epsilon) {
  if (batch.empty()) {
    throw std::invalid_argument("surrogate evaluation requires a non-empty batch");
  }
  std::vector<std::vector<double>> advantages = batch_advantages(batch, params.gamma);

  SurrogateEval eval;
  eval.gradient.assign(params.weights.size(), 0.0);
  double logits[kNumJointActions];
  double probs[kNumJointActions];
  size_t count = 0;

  for (size_t i = 0; i < batch.size(); ++i) {
    const auto& transitions = batch[i].transitions;
    for (size_t t = 0; t < transitions.size(); ++t) {
      const Transition& tr = transitions[t];
      action_logits(params, tr.features, logits);
      softmax_from_logits(logits, probs);
      double new_log_prob =
          std::log(probs[static_cast<size_t>(tr.action_index)]);
      double ratio = std::exp(new_log_prob - tr.log_prob);
      double clipped = std::clamp(ratio, 1.0 - clip_epsilon, 1.0 + clip_epsilon);
      double advantage = advantages[i][t];
      double unclipped_term = ratio * advantage;
      double clipped_term = clipped * advantage;
      double term = std::min(unclipped_term, clipped_term);
      eval.objective += term;
      eval.mean_abs_term += std::abs(term);
      ++count;

      // Gradient flows only where the unclipped branch attains the min.
      if (unclipped_term <= clipped_term) {
        double scale = ratio * advantage;  // d term / d log pi(a|s)
        for (int f = 0; f < params.feature_dim; ++f) {
          double x = tr.features[static_cast<size_t>(f)];
          if (x == 0.0) {
            continue;
          }
          double* grad_row = eval.gradient.data() + static_cast<size_t>(f) * kNumJointActions;
          for (int a = 0; a < kNumJointActions; ++a) {
            double indicator = a == tr.action_index ? 1.0 : 0.0;
            grad_row[a] += scale * x * (indicator - probs[a]);
          }
        }
      }
    }
  }
  if (count > 0) {
    double inv = 1.0 / static_cast<double>(count);
    eval.objective *= inv;
    eval.mean_abs_term *= inv;
    for (double& g : eval.gradient) {
      g *= inv;
    }
  }
  return eval;
}

UpdateResult update(const PolicyParams& params, const std::vector<Trajectory>& batch, int epochs) {
  if (batch.empty()) {
    throw std::invalid_argument("update requires a non-empty batch");
  }
  if (epochs < 1) {
    throw std::invalid_argument("epochs must be >= 1");
  }
  UpdateResult result;
  result.params = params;
  double loss_sum = 0.0;
  for (int e = 0; e < epochs; ++e) {
    SurrogateEval eval = evaluate_surrogate(result.params, batch, result.params.clip_epsilon);
    for (double g : eval.gradient) {
      if (!std::isfinite(g)) {
        throw std::runtime_error("non-finite policy gradient");
      }
    }
    for (size_t i = 0; i < result.params.weights.size(); ++i) {
      result.params.weights[i] += result.params.learning_rate * eval.gradient[i];
    }
    loss_sum += eval.mean_abs_term;
  }
  result.mean_policy_loss = loss_sum / epochs;
  return result;
}

}  // namespace abcrl
