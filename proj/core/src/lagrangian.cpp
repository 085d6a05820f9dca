#include "abcrl/lagrangian.hpp"

#include <algorithm>
#include <cmath>

namespace abcrl {

double augmented_lagrangian(const ObjectiveSample& s, double z, const LagrangianParams& p) {
  p.validate();
  const double violation = p.v_th - s.j_v + z * z;
  return s.j_c + p.lambda * violation + 0.5 * p.mu * violation * violation;
}

double inner_min_closed_form(const ObjectiveSample& s, const LagrangianParams& p) {
  p.validate();
  const double active = std::max(0.0, p.lambda + p.mu * (p.v_th - s.j_v));
  return s.j_c + (active * active - p.lambda * p.lambda) / (2.0 * p.mu);
}

double lambda_update(double lambda_t, double mu, double v_th, double j_v) {
  return std::max(0.0, lambda_t + mu * (v_th - j_v));
}

double penalty_weight(const LagrangianParams& p, double j_v_est) {
  p.validate();
  return 1.0 / std::max(p.delta, p.lambda + p.mu * (p.v_th - j_v_est));
}

double sigmoid(double x) {
  if (x >= 0) return 1.0 / (1.0 + std::exp(-x));
  const double e = std::exp(x);
  return e / (1.0 + e);
}

double sigmoid_weight(double max_weight, double h, double v_avg, double v_th) {
  if (!(max_weight >= 0)) throw std::invalid_argument("sigmoid_weight: W must be >= 0");
  if (!(h > 0)) throw std::invalid_argument("sigmoid_weight: h must be > 0");
  return max_weight * sigmoid((v_avg - v_th) / h);
}

double sigmoid_approx_error(double lambda, double mu, double d) {
  if (!(lambda > 0) || !(mu > 0)) {
    throw std::invalid_argument("sigmoid_approx_error: lambda and mu must be > 0");
  }
  const double exact = 1.0 / (lambda + mu * d);
  if (!(lambda + mu * d > 0)) {
    throw std::invalid_argument("sigmoid_approx_error: lambda + mu*d must be > 0");
  }
  const double approx = (2.0 / lambda) * sigmoid(-2.0 * mu * d / lambda);
  return std::abs(exact - approx) / exact;
}

namespace {

// Golden-section search for the minimum of f on [lo, hi]; f must be unimodal
// there. Returns the best point found.
template <typename F>
double golden_section_min(F f, double lo, double hi, int iterations) {
  constexpr double kInvPhi = 0.6180339887498949;
  double a = lo, b = hi;
  double x1 = b - kInvPhi * (b - a);
  double x2 = a + kInvPhi * (b - a);
  double f1 = f(x1), f2 = f(x2);
  for (int i = 0; i < iterations; ++i) {
    if (f1 < f2) {
      b = x2;
      x2 = x1;
      f2 = f1;
      x1 = b - kInvPhi * (b - a);
      f1 = f(x1);
    } else {
      a = x1;
      x1 = x2;
      f1 = f2;
      x2 = a + kInvPhi * (b - a);
      f2 = f(x2);
    }
  }
  return f1 < f2 ? x1 : x2;
}

}  // namespace

Prop1Report verify_prop1(const ObjectiveSample& s, const LagrangianParams& p, const GridSpec& grid) {
  p.validate();
  if (!(grid.step > 0) || !(grid.z_max > 0)) {
    throw std::invalid_argument("verify_prop1: grid must have positive extent and step");
  }
  const double required = p.lambda / p.mu + std::abs(p.v_th - s.j_v);
  if (grid.z_max * grid.z_max < required) {
    throw std::invalid_argument("verify_prop1: grid too small to contain the minimizer");
  }

  const auto objective = [&](double z) { return augmented_lagrangian(s, z, p); };

  // The objective is even in z, so scanning [0, z_max] is enough.
  double best_z = 0.0;
  double best = objective(0.0);
  const long long steps = static_cast<long long>(grid.z_max / grid.step);
  for (long long i = 1; i <= steps; ++i) {
    const double z = static_cast<double>(i) * grid.step;
    const double v = objective(z);
    if (v < best) {
      best = v;
      best_z = z;
    }
  }

  // Refine inside the bracketing cells; the restriction to z >= 0 is unimodal
  // around the coarse minimum.
  const double lo = std::max(0.0, best_z - grid.step);
  const double hi = std::min(grid.z_max, best_z + grid.step);
  const double refined_z = golden_section_min(objective, lo, hi, 80);
  best = std::min(best, objective(refined_z));

  Prop1Report report;
  report.closed_form = inner_min_closed_form(s, p);
  report.grid_min = best;
  report.gap = std::abs(report.closed_form - report.grid_min);
  return report;
}

}  // namespace abcrl
