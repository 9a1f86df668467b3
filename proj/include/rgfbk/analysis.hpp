#pragma once

#include <Eigen/Dense>
#include <span>

#include "rgfbk/problem.hpp"
#include "rgfbk/rng.hpp"
#include "rgfbk/selection.hpp"

namespace rgfbk {

// Inputs of the theoretical contraction factor: the stochastic greedy
// condition number kappa, the relaxation parameter gamma and the tangential
// cone constant eta. The bound requires eta in [0, 1/2) and
// gamma in (0, 2(1 - eta)); eta is user supplied (0 for affine maps).
struct RateBoundInputs {
  double kappa = 1.0;
  double gamma = 1.0;
  double eta = 0.0;
};

enum class SgcnMode { Exact, MonteCarlo };

struct SgcnEstimate {
  double value = 1.0;
  SgcnMode mode = SgcnMode::Exact;
  long samples_used = 0;
  BlockIndexSet worst_block;  // realization attaining the reported maximum
};

// Spectral condition number sigma_max / sigma_min of a row block, with
// sigma_min the smallest nonzero singular value (values below
// 1e-12 * sigma_max count as zero). Throws DegenerateError on a zero matrix.
double submatrix_condition(const Eigen::MatrixXd& block_jacobian);

// Stochastic greedy condition number of the Jacobian at x: the maximum of
// submatrix_condition over the blocks realizable by sampling alpha rows and
// keeping the beta with largest |F_i(x)|. When C(m, alpha) <= budget every
// control set is enumerated and the value is exact; otherwise `budget`
// control sets are drawn and the reported maximum is a lower bound.
SgcnEstimate estimate_sgcn(const NonlinearSystem& problem,
                           const Eigen::VectorXd& x, int alpha, int beta,
                           long budget, Rng& rng);

// Contraction factor rho = 1 - (2 gamma (1 - eta) - gamma^2) / ((1 + eta^2) kappa^2),
// the bound on the expected squared-error reduction per iteration. Throws
// HypothesisError when gamma lies outside (0, 2(1 - eta)).
double rate_bound(const RateBoundInputs& inputs);

struct OptimalGamma {
  double gamma_star;       // 1 - eta
  double rate_numerator;   // (1 - eta)^2 / (1 + eta^2); rho* = 1 - this / kappa^2
};

// The relaxation parameter minimizing the contraction factor, with the
// kappa-independent numerator of the optimal rate.
OptimalGamma optimal_gamma(double eta);

// Geometric-mean per-iteration contraction (e_K / e_1)^(1 / (K - 1)) over a
// recorded error history, ignoring trailing entries below 100 * machine
// epsilon. Throws InsufficientDataError when fewer than 5 usable entries
// remain.
double empirical_rate(std::span<const double> error_history);

// Reference solution by a dense Newton iteration with full-Jacobian LU
// solves, for square problems of modest size (m <= 5000). Iterates until
// ||F(x)|| <= 1e-12 * (1 + ||F(x0)||) or 100 steps; throws NoReferenceError
// on a singular Jacobian or non-convergence (callers then disable error
// tracking rather than fail).
Eigen::VectorXd reference_solution(const NonlinearSystem& problem,
                                   const Eigen::VectorXd& x0);

}  // namespace rgfbk
