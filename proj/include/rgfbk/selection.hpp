#pragma once

#include <Eigen/Dense>
#include <vector>

#include "rgfbk/rng.hpp"

namespace rgfbk {

// The alpha indices drawn uniformly without replacement each iteration.
struct ControlSet {
  std::vector<int> indices;  // distinct, ascending

  int alpha() const { return static_cast<int>(indices.size()); }
};

// A row block selected for the update. For the sample-then-greedy rules the
// size is exactly beta and the indices are a subset of the generating
// control set; for the capped rule the size is data dependent.
struct BlockIndexSet {
  std::vector<int> indices;  // distinct, ascending

  int beta() const { return static_cast<int>(indices.size()); }
};

// Uniform sample of alpha distinct indices from [0, m), via a partial
// Fisher-Yates shuffle: every alpha-subset has probability 1 / C(m, alpha).
// Consumes exactly alpha raw values from the stream.
ControlSet sample_control(int m, int alpha, Rng& rng);

// The beta control indices with the largest absolute residuals. Ties go to
// the smaller index, which keeps runs reproducible per seed.
BlockIndexSet greedy_top_beta(const Eigen::VectorXd& abs_residuals,
                              const ControlSet& control, int beta);

// Capped greedy rule over all rows: keep every index i with
//   |f_i|^2 >= delta * ||f||^2,  delta = (max_i |f_i|^2 / ||f||^2 + 1/m) / 2.
// The argmax always qualifies, so the result is nonempty. Throws
// AlreadyConverged when the residual vector is identically zero.
BlockIndexSet capped_set(const Eigen::VectorXd& abs_residuals);

// Maximum-residual rule applied to a uniform sample. Under this artifact's
// simplification it shares greedy_top_beta's contract; it is kept as a
// separately named entry point so reports can label the baseline.
BlockIndexSet max_residual_from_sample(const Eigen::VectorXd& abs_residuals,
                                       const ControlSet& control, int beta);

// Maximum-distance rule applied to a uniform sample: score each control row
// by |f_i| / ||grad F_i|| (the single-row step length) and keep the beta
// largest. Throws DegenerateError on a zero row norm inside the control set.
BlockIndexSet max_distance_from_sample(const Eigen::VectorXd& abs_residuals,
                                       const Eigen::VectorXd& row_norms,
                                       const ControlSet& control, int beta);

}  // namespace rgfbk
