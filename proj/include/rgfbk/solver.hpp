#pragma once

#include <Eigen/Dense>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "rgfbk/problem.hpp"
#include "rgfbk/rng.hpp"
#include "rgfbk/selection.hpp"

namespace rgfbk {

enum class Method {
  Rgfbk,            // random greedy sample + relaxed weighted projection
  NkUniform,        // single row, chosen uniformly at random
  BlockPinvCapped,  // capped greedy block + pseudoinverse update (RB-CNK style)
  MrBsnkStyle,      // max-residual-from-sample block + pseudoinverse update
  MdBsnkStyle,      // max-distance-from-sample block + pseudoinverse update
};

enum class WeightRule { Residual, Gaussian };

std::string method_name(Method method);
Method method_from_name(const std::string& name);
std::string weight_rule_name(WeightRule rule);
WeightRule weight_rule_from_name(const std::string& name);

struct SolverConfig {
  Method method = Method::Rgfbk;
  int alpha = 1;
  int beta = 1;
  double gamma = 1.2;
  WeightRule weight_rule = WeightRule::Residual;
  long max_iterations = 100000;
  // Explicit stopping threshold on ||F(x_k)||; when absent, the threshold is
  // stopping_threshold(||r_0||).
  std::optional<double> residual_tolerance;
  std::uint64_t seed = 0;

  // Throws ParameterError unless 1 <= beta <= alpha <= m and gamma in (0, 2).
  void validate(int m) const;
};

struct IterationRecord {
  long k = 0;
  double residual_norm = 0.0;
  // Block used to reach this iterate; absent on the initial record.
  std::optional<BlockIndexSet> block;
  // ||x_k - x_ref|| when a reference solution was supplied.
  std::optional<double> error_norm;
};

struct SolveReport {
  bool converged = false;
  long iterations = 0;
  double elapsed_seconds = 0.0;
  Eigen::VectorXd final_x;
  std::vector<IterationRecord> history;
  double threshold_used = 0.0;
};

// Stopping threshold RES = 1e-6 + 1e-8 * ||r_0||.
double stopping_threshold(double r0_norm);

// Weight vector equal to the block residual itself.
Eigen::VectorXd residual_weight(const Eigen::VectorXd& block_residual);

// Independent standard normal weights. Consumes 2 * ceil(size / 2) raw
// values from the stream regardless of size parity.
Eigen::VectorXd gaussian_weight(int size, Rng& rng);

// Relaxed weighted projection
//   x' = x - gamma * (w^T F_I) / ||J_I^T w||^2 * J_I^T w.
// At gamma = 1 this is the exact minimizer of |w^T (F_I + J_I (x' - x))|^2
// along the direction J_I^T w; the denominator carries the squared norm that
// optimality requires. Costs two products with the block, no factorization.
// Throws DegenerateError when ||J_I^T w||^2 falls below 1e-300.
Eigen::VectorXd rgfbk_step(const Eigen::VectorXd& x,
                           const Eigen::VectorXd& block_residual,
                           const Eigen::MatrixXd& block_jacobian,
                           const Eigen::VectorXd& weight, double gamma);

// Single-row Kaczmarz projection x' = x - f_i / ||grad_i||^2 * grad_i.
// Throws DegenerateError on a zero gradient row.
Eigen::VectorXd nk_step(const Eigen::VectorXd& x, double f_i,
                        const Eigen::VectorXd& grad_i);

// Block pseudoinverse update x' = x - pinv(J_I) F_I, computed as the
// minimum-norm least-squares solution of J_I d = F_I through a
// rank-revealing complete orthogonal decomposition; no pseudoinverse matrix
// is formed. Throws NumericError if the factorization produces non-finite
// values.
Eigen::VectorXd block_pinv_step(const Eigen::VectorXd& x,
                                const Eigen::VectorXd& block_residual,
                                const Eigen::MatrixXd& block_jacobian);

// Outer loop: evaluate the residual, stop once ||r_k|| <= RES or the
// iteration cap is hit, otherwise select a block per config.method, build
// the weight per config.weight_rule and apply the matching update. Every
// iteration appends to the history (the initial state is record 0). A block
// whose residual restriction is zero, or whose step direction degenerates,
// is resampled with fresh randomness up to 10 times within the iteration
// before a StagnationError aborts the run.
SolveReport solve(const NonlinearSystem& problem, const SolverConfig& config,
                  const Eigen::VectorXd& x0,
                  const std::optional<Eigen::VectorXd>& x_ref = std::nullopt);

}  // namespace rgfbk
