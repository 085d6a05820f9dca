#pragma once

#include <stdexcept>

namespace abcrl {

// Parameters of the augmented-Lagrangian relaxation of
//   minimize J_c(pi)  subject to  J_v(pi) >= v_th.
struct LagrangianParams {
  double lambda = 1.0;  // Lagrange multiplier, >= 0
  double mu = 0.1;      // quadratic penalty parameter, > 0
  double v_th = 0.0;    // value threshold
  double delta = 1e-3;  // denominator floor for the penalty weight, > 0

  void validate() const {
    if (!(lambda >= 0)) throw std::invalid_argument("lambda must be >= 0");
    if (!(mu > 0)) throw std::invalid_argument("mu must be > 0");
    if (!(delta > 0)) throw std::invalid_argument("delta must be > 0");
  }
};

// One evaluation point of the constrained objective.
struct ObjectiveSample {
  double j_c = 0.0;  // expected total discounted cost, >= 0
  double j_v = 0.0;  // expected total discounted return
};

// L(theta, z) = J_c + lambda*(v_th - J_v + z^2) + (mu/2)*(v_th - J_v + z^2)^2,
// where z is the slack variable that turns the inequality into an equality.
double augmented_lagrangian(const ObjectiveSample& s, double z, const LagrangianParams& p);

// Exact minimum of augmented_lagrangian over z:
// J_c + (1/(2*mu)) * ((max{0, lambda + mu*(v_th - J_v)})^2 - lambda^2).
double inner_min_closed_form(const ObjectiveSample& s, const LagrangianParams& p);

// Dual ascent step: max{0, lambda + mu*(v_th - j_v)}.
double lambda_update(double lambda_t, double mu, double v_th, double j_v);

// Behavioral weight of the constrained learner:
// 1 / max{delta, lambda + mu*(v_th - j_v_est)}.
double penalty_weight(const LagrangianParams& p, double j_v_est);

// Logistic function, exact at the infinities.
double sigmoid(double x);

// Sigmoid-scheduled behavioral weight: W * sigmoid((v_avg - v_th) / h).
double sigmoid_weight(double max_weight, double h, double v_avg, double v_th);

// Relative error of approximating 1/(lambda + mu*d) by
// (2/lambda) * sigmoid(-2*mu*d/lambda) at d = v_th - j_v.
// Exactly zero at d = 0 and decays quadratically as d -> 0.
double sigmoid_approx_error(double lambda, double mu, double d);

// Symmetric grid [-z_max, z_max] with the given step.
struct GridSpec {
  double z_max = 10.0;
  double step = 1e-4;
};

struct Prop1Report {
  double closed_form = 0.0;
  double grid_min = 0.0;
  double gap = 0.0;
};

// Test oracle: compares inner_min_closed_form against a grid search over z
// refined by golden-section search. Requires z_max^2 >= lambda/mu +
// |v_th - j_v| so the analytic minimizer lies inside the grid; throws
// std::invalid_argument otherwise.
Prop1Report verify_prop1(const ObjectiveSample& s, const LagrangianParams& p, const GridSpec& grid);

}  // namespace abcrl
