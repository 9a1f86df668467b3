#include "rgfbk/analysis.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <set>
#include <string>
#include <vector>

#include "rgfbk/errors.hpp"

namespace rgfbk {

namespace {

// min(C(m, alpha), cap + 1) without overflow.
long binomial_capped(int m, int alpha, long cap) {
  double value = 1.0;
  for (int t = 0; t < alpha; ++t) {
    value *= static_cast<double>(m - t) / (t + 1);
    if (value > static_cast<double>(cap)) return cap + 1;
  }
  return static_cast<long>(std::llround(value));
}

}  // namespace

double submatrix_condition(const Eigen::MatrixXd& block_jacobian) {
  Eigen::JacobiSVD<Eigen::MatrixXd> svd(block_jacobian);
  const Eigen::VectorXd& sigma = svd.singularValues();
  const double sigma_max = sigma[0];
  if (sigma_max == 0.0) {
    throw DegenerateError("block is identically zero");
  }
  const double cutoff = 1e-12 * sigma_max;
  double sigma_min = sigma_max;
  for (Eigen::Index i = 0; i < sigma.size(); ++i) {
    if (sigma[i] > cutoff) sigma_min = sigma[i];
  }
  return sigma_max / sigma_min;
}

SgcnEstimate estimate_sgcn(const NonlinearSystem& problem,
                           const Eigen::VectorXd& x, int alpha, int beta,
                           long budget, Rng& rng) {
  const int m = problem.equation_count();
  if (alpha < 1 || alpha > m || beta < 1 || beta > alpha) {
    throw ParameterError("require 1 <= beta <= alpha <= m");
  }
  if (budget < 1) {
    throw ParameterError("budget must be positive");
  }
  const Eigen::VectorXd abs_r = problem.evaluate(x).cwiseAbs();
  const long subsets = binomial_capped(m, alpha, budget);
  const bool exact = subsets <= budget;

  // Collect the distinct blocks realizable under the rule, then take the
  // maximum condition number over them.
  std::set<std::vector<int>> blocks;
  if (exact) {
    std::vector<int> control(alpha);
    std::iota(control.begin(), control.end(), 0);
    while (true) {
      blocks.insert(
          greedy_top_beta(abs_r, ControlSet{control}, beta).indices);
      int t = alpha - 1;
      while (t >= 0 && control[t] == m - alpha + t) --t;
      if (t < 0) break;
      ++control[t];
      for (int s = t + 1; s < alpha; ++s) control[s] = control[s - 1] + 1;
    }
  } else {
    for (long draw = 0; draw < budget; ++draw) {
      const ControlSet control = sample_control(m, alpha, rng);
      blocks.insert(greedy_top_beta(abs_r, control, beta).indices);
    }
  }

  SgcnEstimate estimate;
  estimate.mode = exact ? SgcnMode::Exact : SgcnMode::MonteCarlo;
  estimate.samples_used = exact ? subsets : budget;
  estimate.value = 0.0;
  for (const std::vector<int>& block : blocks) {
    double kappa = 0.0;
    try {
      kappa = submatrix_condition(problem.jacobian_block(x, block));
    } catch (const DegenerateError&) {
      std::string joined;
      for (int i : block) joined += std::to_string(i) + " ";
      throw DegenerateError("degenerate block { " + joined + "}");
    }
    if (kappa > estimate.value) {
      estimate.value = kappa;
      estimate.worst_block.indices = block;
    }
  }
  return estimate;
}

double rate_bound(const RateBoundInputs& inputs) {
  if (!(inputs.kappa >= 1.0)) {
    throw ParameterError("kappa must be >= 1");
  }
  if (!(inputs.eta >= 0.0 && inputs.eta < 0.5)) {
    throw ParameterError("eta must lie in [0, 1/2)");
  }
  if (!(inputs.gamma > 0.0 && inputs.gamma < 2.0 * (1.0 - inputs.eta))) {
    throw HypothesisError("gamma outside (0, 2(1 - eta)); the bound is vacuous");
  }
  const double numer =
      2.0 * inputs.gamma * (1.0 - inputs.eta) - inputs.gamma * inputs.gamma;
  const double denom =
      (1.0 + inputs.eta * inputs.eta) * inputs.kappa * inputs.kappa;
  return 1.0 - numer / denom;
}

OptimalGamma optimal_gamma(double eta) {
  if (!(eta >= 0.0 && eta < 0.5)) {
    throw ParameterError("eta must lie in [0, 1/2)");
  }
  const double gamma_star = 1.0 - eta;
  return OptimalGamma{gamma_star, gamma_star * gamma_star / (1.0 + eta * eta)};
}

double empirical_rate(std::span<const double> error_history) {
  const double floor = 100.0 * std::numeric_limits<double>::epsilon();
  std::size_t count = error_history.size();
  while (count > 0 && error_history[count - 1] < floor) --count;
  if (count < 5) {
    throw InsufficientDataError("fewer than 5 usable error entries");
  }
  for (std::size_t i = 0; i < count; ++i) {
    if (!(error_history[i] > 0.0)) {
      throw ParameterError("error history entries must be positive");
    }
  }
  return std::pow(error_history[count - 1] / error_history[0],
                  1.0 / static_cast<double>(count - 1));
}

Eigen::VectorXd reference_solution(const NonlinearSystem& problem,
                                   const Eigen::VectorXd& x0) {
  const int m = problem.equation_count();
  if (m != problem.unknown_count()) {
    throw ParameterError("reference solutions require a square system");
  }
  if (m > 5000) {
    throw ParameterError("reference solutions are limited to m <= 5000");
  }
  std::vector<int> all_rows(m);
  std::iota(all_rows.begin(), all_rows.end(), 0);

  Eigen::VectorXd x = x0;
  Eigen::VectorXd f = problem.evaluate(x);
  const double target = 1e-12 * (1.0 + f.norm());
  for (int iteration = 0; iteration < 100; ++iteration) {
    if (f.norm() <= target) return x;
    const Eigen::MatrixXd jac = problem.jacobian_block(x, all_rows);
    const Eigen::VectorXd step = Eigen::PartialPivLU<Eigen::MatrixXd>(jac).solve(f);
    if (!step.allFinite() || (jac * step - f).norm() > 1e-8 * (1.0 + f.norm())) {
      throw NoReferenceError("Jacobian is numerically singular");
    }
    x -= step;
    f = problem.evaluate(x);
  }
  if (f.norm() <= target) return x;
  throw NoReferenceError("Newton iteration did not converge in 100 steps");
}

}  // namespace rgfbk
