#pragma once

#include <Eigen/Dense>
#include <cstdint>
#include <span>
#include <vector>

namespace rgfbk {

// A square or rectangular nonlinear system F(x) = 0 with m equations in n
// unknowns, exposing the full residual, residual restrictions to row blocks,
// and row blocks of the Jacobian. Instances are immutable after construction
// and safe to share across concurrent solves.
class NonlinearSystem {
public:
  virtual ~NonlinearSystem() = default;

  int equation_count() const { return m_; }
  int unknown_count() const { return n_; }

  // Full residual F(x). Throws EvaluationError naming the first non-finite
  // component if the evaluation leaves the representable range.
  Eigen::VectorXd evaluate(const Eigen::VectorXd& x) const;

  // Residual restricted to the given rows; entry t equals F_{rows[t]}(x).
  Eigen::VectorXd evaluate_block(const Eigen::VectorXd& x,
                                 std::span<const int> rows) const;

  // Jacobian row block: row t of the result is the gradient of F_{rows[t]}.
  Eigen::MatrixXd jacobian_block(const Eigen::VectorXd& x,
                                 std::span<const int> rows) const;

protected:
  NonlinearSystem(int m, int n);

  virtual void residual_rows(const Eigen::VectorXd& x,
                             std::span<const int> rows,
                             Eigen::VectorXd& out) const = 0;
  virtual void jacobian_rows(const Eigen::VectorXd& x,
                             std::span<const int> rows,
                             Eigen::MatrixXd& out) const = 0;

private:
  void check_point(const Eigen::VectorXd& x) const;
  void check_rows(std::span<const int> rows) const;

  int m_;
  int n_;
  std::vector<int> all_rows_;
};

// Discretized Chandrasekhar H-equation on N midpoint nodes,
//   F_i(x) = x_i - 1 / g_i(x),
//   g_i(x) = 1 - (c / 2N) * sum_j mu_i x_j / (mu_i + mu_j),
// with mu_i = (i + 1/2) / N (0-based) and physical parameter c in (0, 1].
// Evaluation throws DomainError if any required g_i vanishes.
class ChandrasekharH : public NonlinearSystem {
public:
  ChandrasekharH(int n, double c);

  double c() const { return c_; }
  const Eigen::VectorXd& nodes() const { return mu_; }

protected:
  void residual_rows(const Eigen::VectorXd& x, std::span<const int> rows,
                     Eigen::VectorXd& out) const override;
  void jacobian_rows(const Eigen::VectorXd& x, std::span<const int> rows,
                     Eigen::MatrixXd& out) const override;

private:
  // g_i for the selected rows; throws DomainError on an exact zero.
  Eigen::VectorXd denominators(const Eigen::VectorXd& x,
                               std::span<const int> rows) const;

  double c_;
  double coef_;  // c / (2N)
  Eigen::VectorXd mu_;
};

// Broyden tridiagonal function,
//   F_k(x) = x_k (0.5 x_k - 3) + x_{k-1} + 2 x_{k+1} - 1
// with the x_{k-1} / x_{k+1} terms dropped at the boundary rows. The Jacobian
// is tridiagonal: subdiagonal 1, diagonal x_k - 3, superdiagonal 2.
class BroydenTridiagonal : public NonlinearSystem {
public:
  explicit BroydenTridiagonal(int m);

protected:
  void residual_rows(const Eigen::VectorXd& x, std::span<const int> rows,
                     Eigen::VectorXd& out) const override;
  void jacobian_rows(const Eigen::VectorXd& x, std::span<const int> rows,
                     Eigen::MatrixXd& out) const override;
};

// Affine adapter F(x) = A x - b. The tangential cone condition holds with
// eta = 0, which makes this the exact test bed for the convergence theory.
class LinearSystem : public NonlinearSystem {
public:
  LinearSystem(Eigen::MatrixXd a, Eigen::VectorXd b);

  const Eigen::MatrixXd& matrix() const { return a_; }
  const Eigen::VectorXd& rhs() const { return b_; }

protected:
  void residual_rows(const Eigen::VectorXd& x, std::span<const int> rows,
                     Eigen::VectorXd& out) const override;
  void jacobian_rows(const Eigen::VectorXd& x, std::span<const int> rows,
                     Eigen::MatrixXd& out) const override;

private:
  Eigen::MatrixXd a_;
  Eigen::VectorXd b_;
};

inline LinearSystem make_linear(Eigen::MatrixXd a, Eigen::VectorXd b) {
  return LinearSystem(std::move(a), std::move(b));
}

// A random consistent linear system with prescribed spectral condition
// number, plus the solution it was built from.
struct ConditionedLinear {
  Eigen::MatrixXd a;
  Eigen::VectorXd b;
  Eigen::VectorXd x_star;
};

ConditionedLinear make_conditioned_linear(int m, int n, double condition,
                                          std::uint64_t seed);

// Central-difference Jacobian with a fixed step h > 0 in every coordinate.
Eigen::MatrixXd fd_jacobian(const NonlinearSystem& problem,
                            const Eigen::VectorXd& x, double h);

// Same, with the per-coordinate step h_k = eps^(1/3) * (1 + |x_k|).
Eigen::MatrixXd fd_jacobian(const NonlinearSystem& problem,
                            const Eigen::VectorXd& x);

}  // namespace rgfbk
