#pragma once

#include <Eigen/Dense>
#include <algorithm>
#include <cmath>

#include "rgfbk/rng.hpp"

namespace test_util {

// Max relative entry deviation, comparing entries below 1e-12 in magnitude
// absolutely. `truth` plays the role of the oracle.
inline double max_entry_deviation(const Eigen::MatrixXd& value,
                                  const Eigen::MatrixXd& truth) {
  double worst = 0.0;
  for (Eigen::Index j = 0; j < truth.cols(); ++j) {
    for (Eigen::Index i = 0; i < truth.rows(); ++i) {
      const double diff = std::abs(value(i, j) - truth(i, j));
      const double scale = std::abs(truth(i, j));
      worst = std::max(worst, scale >= 1e-12 ? diff / scale : diff);
    }
  }
  return worst;
}

inline Eigen::VectorXd uniform_vector(int n, double lo, double hi,
                                      rgfbk::Rng& rng) {
  Eigen::VectorXd v(n);
  for (int i = 0; i < n; ++i) v[i] = lo + (hi - lo) * rng.uniform01();
  return v;
}

inline Eigen::VectorXd gaussian_vector(int n, rgfbk::Rng& rng) {
  Eigen::VectorXd v(n);
  for (int i = 0; i < n; ++i) {
    const double u1 = rng.uniform_pos();
    const double u2 = rng.uniform01();
    v[i] = std::sqrt(-2.0 * std::log(u1)) * std::cos(6.283185307179586 * u2);
  }
  return v;
}

inline Eigen::MatrixXd gaussian_matrix(int rows, int cols, rgfbk::Rng& rng) {
  Eigen::MatrixXd m(rows, cols);
  for (int j = 0; j < cols; ++j) m.col(j) = gaussian_vector(rows, rng);
  return m;
}

}  // namespace test_util
