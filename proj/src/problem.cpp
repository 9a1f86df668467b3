#include "rgfbk/problem.hpp"

#include <cmath>
#include <limits>
#include <numbers>
#include <numeric>
#include <string>

#include "rgfbk/errors.hpp"
#include "rgfbk/kernels.hpp"
#include "rgfbk/rng.hpp"

namespace rgfbk {

namespace {

void check_finite_vector(const Eigen::VectorXd& v, const char* what) {
  for (Eigen::Index i = 0; i < v.size(); ++i) {
    if (!std::isfinite(v[i])) {
      throw EvaluationError(std::string(what) + " has non-finite component at index " +
                            std::to_string(i));
    }
  }
}

}  // namespace

NonlinearSystem::NonlinearSystem(int m, int n) : m_(m), n_(n), all_rows_(m) {
  if (m <= 0 || n <= 0) {
    throw ParameterError("system dimensions must be positive");
  }
  std::iota(all_rows_.begin(), all_rows_.end(), 0);
}

void NonlinearSystem::check_point(const Eigen::VectorXd& x) const {
  if (x.size() != n_) {
    throw ParameterError("point has length " + std::to_string(x.size()) +
                         ", expected " + std::to_string(n_));
  }
  check_finite_vector(x, "evaluation point");
}

void NonlinearSystem::check_rows(std::span<const int> rows) const {
  if (rows.empty()) {
    throw ParameterError("row index set is empty");
  }
  for (int r : rows) {
    if (r < 0 || r >= m_) {
      throw ParameterError("row index " + std::to_string(r) + " outside [0, " +
                           std::to_string(m_) + ")");
    }
  }
}

Eigen::VectorXd NonlinearSystem::evaluate(const Eigen::VectorXd& x) const {
  return evaluate_block(x, all_rows_);
}

Eigen::VectorXd NonlinearSystem::evaluate_block(const Eigen::VectorXd& x,
                                                std::span<const int> rows) const {
  check_point(x);
  check_rows(rows);
  Eigen::VectorXd out(rows.size());
  residual_rows(x, rows, out);
  for (Eigen::Index t = 0; t < out.size(); ++t) {
    if (!std::isfinite(out[t])) {
      throw EvaluationError("residual component " + std::to_string(rows[t]) +
                            " is non-finite");
    }
  }
  return out;
}

Eigen::MatrixXd NonlinearSystem::jacobian_block(const Eigen::VectorXd& x,
                                                std::span<const int> rows) const {
  check_point(x);
  check_rows(rows);
  Eigen::MatrixXd out(rows.size(), n_);
  jacobian_rows(x, rows, out);
  if (!out.allFinite()) {
    throw EvaluationError("Jacobian block has non-finite entries");
  }
  return out;
}

// --- Chandrasekhar H-equation ---

ChandrasekharH::ChandrasekharH(int n, double c)
    : NonlinearSystem(n, n), c_(c), coef_(c / (2.0 * n)), mu_(n) {
  if (!(c >= 0.0 && c <= 1.0)) {
    throw ParameterError("Chandrasekhar parameter c must lie in [0, 1]");
  }
  for (int i = 0; i < n; ++i) {
    mu_[i] = (i + 0.5) / n;
  }
}

Eigen::VectorXd ChandrasekharH::denominators(const Eigen::VectorXd& x,
                                             std::span<const int> rows) const {
  Eigen::VectorXd g(rows.size());
  kernels::h_denominators(mu_.data(), unknown_count(), x.data(), coef_,
                          rows.data(), static_cast<int>(rows.size()), g.data());
  for (Eigen::Index t = 0; t < g.size(); ++t) {
    if (g[t] == 0.0) {
      throw DomainError("Chandrasekhar denominator vanishes at row " +
                        std::to_string(rows[t]));
    }
  }
  return g;
}

void ChandrasekharH::residual_rows(const Eigen::VectorXd& x,
                                   std::span<const int> rows,
                                   Eigen::VectorXd& out) const {
  const Eigen::VectorXd g = denominators(x, rows);
  for (Eigen::Index t = 0; t < out.size(); ++t) {
    out[t] = x[rows[t]] - 1.0 / g[t];
  }
}

void ChandrasekharH::jacobian_rows(const Eigen::VectorXd& x,
                                   std::span<const int> rows,
                                   Eigen::MatrixXd& out) const {
  const Eigen::VectorXd g = denominators(x, rows);
  Eigen::VectorXd scale(g.size());
  for (Eigen::Index t = 0; t < g.size(); ++t) {
    scale[t] = coef_ * mu_[rows[t]] / (g[t] * g[t]);
  }
  kernels::h_jacobian(mu_.data(), unknown_count(), rows.data(),
                      static_cast<int>(rows.size()), scale.data(), out.data(),
                      static_cast<int>(out.rows()));
}

// --- Broyden tridiagonal ---

BroydenTridiagonal::BroydenTridiagonal(int m) : NonlinearSystem(m, m) {}

void BroydenTridiagonal::residual_rows(const Eigen::VectorXd& x,
                                       std::span<const int> rows,
                                       Eigen::VectorXd& out) const {
  kernels::broyden_residual(x.data(), equation_count(), rows.data(),
                            static_cast<int>(rows.size()), out.data());
}

void BroydenTridiagonal::jacobian_rows(const Eigen::VectorXd& x,
                                       std::span<const int> rows,
                                       Eigen::MatrixXd& out) const {
  kernels::broyden_jacobian(x.data(), equation_count(), rows.data(),
                            static_cast<int>(rows.size()), out.data(),
                            static_cast<int>(out.rows()));
}

// --- Linear adapter ---

LinearSystem::LinearSystem(Eigen::MatrixXd a, Eigen::VectorXd b)
    : NonlinearSystem(static_cast<int>(a.rows()), static_cast<int>(a.cols())),
      a_(std::move(a)),
      b_(std::move(b)) {
  if (b_.size() != a_.rows()) {
    throw ParameterError("right-hand side length " + std::to_string(b_.size()) +
                         " does not match row count " + std::to_string(a_.rows()));
  }
}

void LinearSystem::residual_rows(const Eigen::VectorXd& x,
                                 std::span<const int> rows,
                                 Eigen::VectorXd& out) const {
  if (static_cast<int>(rows.size()) == equation_count()) {
    out.noalias() = a_ * x - b_;
    return;
  }
  for (Eigen::Index t = 0; t < out.size(); ++t) {
    out[t] = a_.row(rows[t]).dot(x) - b_[rows[t]];
  }
}

void LinearSystem::jacobian_rows(const Eigen::VectorXd& x,
                                 std::span<const int> rows,
                                 Eigen::MatrixXd& out) const {
  (void)x;
  for (Eigen::Index t = 0; t < out.rows(); ++t) {
    out.row(t) = a_.row(rows[t]);
  }
}

ConditionedLinear make_conditioned_linear(int m, int n, double condition,
                                          std::uint64_t seed) {
  if (m < n || n <= 0) {
    throw ParameterError("conditioned linear systems require m >= n >= 1");
  }
  if (condition < 1.0) {
    throw ParameterError("condition number must be >= 1");
  }
  Rng rng(seed);
  auto gaussian = [&rng](Eigen::Index r, Eigen::Index c) {
    Eigen::MatrixXd g(r, c);
    for (Eigen::Index j = 0; j < c; ++j) {
      for (Eigen::Index i = 0; i < r; ++i) {
        // Box-Muller; consumes two raw values per entry.
        const double u1 = rng.uniform_pos();
        const double u2 = rng.uniform01();
        g(i, j) = std::sqrt(-2.0 * std::log(u1)) *
                  std::cos(2.0 * std::numbers::pi_v<double> * u2);
      }
    }
    return g;
  };

  // A = U diag(sigma) V^T with orthonormal factors from QR of Gaussian blocks
  // and singular values spread linearly over [1, condition].
  Eigen::MatrixXd u = Eigen::HouseholderQR<Eigen::MatrixXd>(gaussian(m, n))
                          .householderQ() *
                      Eigen::MatrixXd::Identity(m, n);
  Eigen::MatrixXd v = Eigen::HouseholderQR<Eigen::MatrixXd>(gaussian(n, n))
                          .householderQ() *
                      Eigen::MatrixXd::Identity(n, n);
  Eigen::VectorXd sigma(n);
  for (int i = 0; i < n; ++i) {
    sigma[i] = n == 1 ? condition
                      : condition - (condition - 1.0) * i / (n - 1.0);
  }
  ConditionedLinear out;
  out.a = u * sigma.asDiagonal() * v.transpose();
  out.x_star = gaussian(n, 1);
  out.b = out.a * out.x_star;
  return out;
}

// --- Finite-difference oracle ---

namespace {

Eigen::MatrixXd fd_jacobian_impl(const NonlinearSystem& problem,
                                 const Eigen::VectorXd& x, double fixed_h) {
  const int n = problem.unknown_count();
  const double cbrt_eps =
      std::cbrt(std::numeric_limits<double>::epsilon());
  Eigen::MatrixXd jac(problem.equation_count(), n);
  Eigen::VectorXd point = x;
  for (int k = 0; k < n; ++k) {
    const double h = fixed_h > 0.0 ? fixed_h : cbrt_eps * (1.0 + std::abs(x[k]));
    const double saved = point[k];
    point[k] = saved + h;
    const Eigen::VectorXd forward = problem.evaluate(point);
    point[k] = saved - h;
    const Eigen::VectorXd backward = problem.evaluate(point);
    point[k] = saved;
    jac.col(k) = (forward - backward) / (2.0 * h);
  }
  return jac;
}

}  // namespace

Eigen::MatrixXd fd_jacobian(const NonlinearSystem& problem,
                            const Eigen::VectorXd& x, double h) {
  if (!(h > 0.0)) {
    throw ParameterError("finite-difference step must be positive");
  }
  return fd_jacobian_impl(problem, x, h);
}

Eigen::MatrixXd fd_jacobian(const NonlinearSystem& problem,
                            const Eigen::VectorXd& x) {
  return fd_jacobian_impl(problem, x, 0.0);
}

}  // namespace rgfbk
