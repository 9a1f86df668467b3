#include "rgfbk/selection.hpp"

#include <algorithm>
#include <numeric>
#include <string>
#include <utility>

#include "rgfbk/errors.hpp"

namespace rgfbk {

namespace {

// beta control indices with the largest scores; ties broken by smaller
// index. Returns ascending indices.
BlockIndexSet top_beta_by_score(const std::vector<double>& scores,
                                const ControlSet& control, int beta) {
  const int alpha = control.alpha();
  if (beta < 1 || beta > alpha) {
    throw ParameterError("beta = " + std::to_string(beta) +
                         " outside [1, alpha = " + std::to_string(alpha) + "]");
  }
  std::vector<int> order(alpha);
  std::iota(order.begin(), order.end(), 0);
  std::partial_sort(order.begin(), order.begin() + beta, order.end(),
                    [&](int a, int b) {
                      if (scores[a] != scores[b]) return scores[a] > scores[b];
                      return control.indices[a] < control.indices[b];
                    });
  BlockIndexSet block;
  block.indices.reserve(beta);
  for (int t = 0; t < beta; ++t) {
    block.indices.push_back(control.indices[order[t]]);
  }
  std::sort(block.indices.begin(), block.indices.end());
  return block;
}

}  // namespace

ControlSet sample_control(int m, int alpha, Rng& rng) {
  if (alpha < 1 || alpha > m) {
    throw ParameterError("alpha = " + std::to_string(alpha) +
                         " outside [1, m = " + std::to_string(m) + "]");
  }
  std::vector<int> pool(m);
  std::iota(pool.begin(), pool.end(), 0);
  for (int t = 0; t < alpha; ++t) {
    const int j = t + rng.uniform_index(m - t);
    std::swap(pool[t], pool[j]);
  }
  pool.resize(alpha);
  std::sort(pool.begin(), pool.end());
  return ControlSet{std::move(pool)};
}

BlockIndexSet greedy_top_beta(const Eigen::VectorXd& abs_residuals,
                              const ControlSet& control, int beta) {
  std::vector<double> scores(control.alpha());
  for (int t = 0; t < control.alpha(); ++t) {
    scores[t] = abs_residuals[control.indices[t]];
  }
  return top_beta_by_score(scores, control, beta);
}

BlockIndexSet capped_set(const Eigen::VectorXd& abs_residuals) {
  const int m = static_cast<int>(abs_residuals.size());
  const double total = abs_residuals.squaredNorm();
  if (total == 0.0) {
    throw AlreadyConverged("residual vector is zero; nothing to select");
  }
  int argmax = 0;
  abs_residuals.maxCoeff(&argmax);
  const double max_sq = abs_residuals[argmax] * abs_residuals[argmax];
  const double delta = 0.5 * (max_sq / total + 1.0 / m);
  const double threshold = delta * total;
  BlockIndexSet block;
  for (int i = 0; i < m; ++i) {
    if (abs_residuals[i] * abs_residuals[i] >= threshold) {
      block.indices.push_back(i);
    }
  }
  return block;
}

BlockIndexSet max_residual_from_sample(const Eigen::VectorXd& abs_residuals,
                                       const ControlSet& control, int beta) {
  return greedy_top_beta(abs_residuals, control, beta);
}

BlockIndexSet max_distance_from_sample(const Eigen::VectorXd& abs_residuals,
                                       const Eigen::VectorXd& row_norms,
                                       const ControlSet& control, int beta) {
  std::vector<double> scores(control.alpha());
  for (int t = 0; t < control.alpha(); ++t) {
    const int i = control.indices[t];
    if (!(row_norms[i] > 0.0)) {
      throw DegenerateError("Jacobian row " + std::to_string(i) +
                            " has zero norm");
    }
    scores[t] = abs_residuals[i] / row_norms[i];
  }
  return top_beta_by_score(scores, control, beta);
}

}  // namespace rgfbk
