#include "abcrl/verify.hpp"

#include <algorithm>
#include <cmath>
#include <random>

#include "abcrl/lagrangian.hpp"

namespace abcrl {

CheckReport check_prop1(const VerifyOptions& options) {
  std::mt19937_64 rng(options.seed);
  std::uniform_real_distribution<double> cost_dist(0.0, 10.0);
  std::uniform_real_distribution<double> value_dist(-10.0, 10.0);
  std::uniform_real_distribution<double> lambda_dist(0.0, 5.0);
  std::uniform_real_distribution<double> mu_dist(0.05, 5.0);

  CheckReport report{"prop1_closed_form_vs_grid", options.prop1_samples, 0.0, true};
  for (int i = 0; i < options.prop1_samples; ++i) {
    ObjectiveSample s{cost_dist(rng), value_dist(rng)};
    LagrangianParams p;
    p.lambda = lambda_dist(rng);
    p.mu = mu_dist(rng);
    p.v_th = value_dist(rng);

    GridSpec grid;
    grid.z_max = std::sqrt(p.lambda / p.mu + std::abs(p.v_th - s.j_v)) + 1.0;
    grid.step = 1e-4;

    Prop1Report r = verify_prop1(s, p, grid);
    double gap = r.gap;
    if (options.corrupt_closed_form) {
      gap = std::abs(r.closed_form + 1e-3 - r.grid_min);
    }
    report.max_gap = std::max(report.max_gap, gap);
  }
  report.pass = report.max_gap <= 1e-6;
  return report;
}

CheckReport check_sigmoid_approx(const VerifyOptions& options) {
  (void)options;
  const double lambdas[] = {0.5, 1.0, 2.0};
  const double mus[] = {0.1, 1.0};
  constexpr int kGridPoints = 201;

  CheckReport report{"sigmoid_weight_approximation", 0, 0.0, true};
  for (double lambda : lambdas) {
    for (double mu : mus) {
      if (sigmoid_approx_error(lambda, mu, 0.0) != 0.0) report.pass = false;
      ++report.samples;
      const double d_max = 0.05 * lambda / mu;
      for (int i = 0; i < kGridPoints; ++i) {
        const double d = -d_max + 2.0 * d_max * i / (kGridPoints - 1);
        report.max_gap = std::max(report.max_gap, sigmoid_approx_error(lambda, mu, d));
        ++report.samples;
      }
    }
  }
  if (report.max_gap > 0.01) report.pass = false;
  return report;
}

CheckReport check_lambda_update(const VerifyOptions& options) {
  std::mt19937_64 rng(options.seed + 1);
  std::uniform_real_distribution<double> value_dist(-20.0, 20.0);
  std::uniform_real_distribution<double> mu_dist(0.01, 2.0);

  CheckReport report{"lambda_update_properties", 0, 0.0, true};

  // Non-negativity over random update sequences.
  for (int trial = 0; trial < 200; ++trial) {
    const double mu = mu_dist(rng);
    const double v_th = value_dist(rng);
    double lambda = std::abs(value_dist(rng));
    for (int step = 0; step < 50; ++step) {
      lambda = lambda_update(lambda, mu, v_th, value_dist(rng));
      if (lambda < 0) {
        report.pass = false;
        report.max_gap = std::max(report.max_gap, -lambda);
      }
      ++report.samples;
    }
  }

  // Constant J_v above the threshold drives lambda to zero in finitely many
  // steps: each step subtracts mu * (j_v - v_th).
  {
    double lambda = 3.0;
    const double mu = 0.5, v_th = 1.0, j_v = 2.0;
    int steps = 0;
    while (lambda > 0 && steps < 100) {
      lambda = lambda_update(lambda, mu, v_th, j_v);
      ++steps;
    }
    ++report.samples;
    if (lambda != 0.0 || steps > 7) report.pass = false;
  }

  // Worked spot check: 0.5 + 0.1 * (10 - 12) = 0.3.
  {
    const double updated = lambda_update(0.5, 0.1, 10.0, 12.0);
    const double gap = std::abs(updated - 0.3);
    report.max_gap = std::max(report.max_gap, gap);
    ++report.samples;
    if (updated != 0.3) report.pass = false;
  }

  return report;
}

std::vector<CheckReport> run_all_checks(const VerifyOptions& options) {
  return {check_prop1(options), check_sigmoid_approx(options), check_lambda_update(options)};
}

}  // namespace abcrl
