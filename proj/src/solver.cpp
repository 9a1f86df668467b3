#include "rgfbk/solver.hpp"

#include <chrono>
#include <cmath>
#include <numbers>

#include "rgfbk/errors.hpp"

namespace rgfbk {

namespace {

constexpr double kDirectionFloor = 1e-300;
constexpr int kMaxResampleAttempts = 10;

Eigen::VectorXd gather(const Eigen::VectorXd& v, const std::vector<int>& idx) {
  Eigen::VectorXd out(idx.size());
  for (std::size_t t = 0; t < idx.size(); ++t) out[t] = v[idx[t]];
  return out;
}

}  // namespace

std::string method_name(Method method) {
  switch (method) {
    case Method::Rgfbk: return "rgfbk";
    case Method::NkUniform: return "nk-uniform";
    case Method::BlockPinvCapped: return "block-pinv-capped";
    case Method::MrBsnkStyle: return "mr-bsnk-style";
    case Method::MdBsnkStyle: return "md-bsnk-style";
  }
  throw ParameterError("unknown method");
}

Method method_from_name(const std::string& name) {
  if (name == "rgfbk") return Method::Rgfbk;
  if (name == "nk-uniform") return Method::NkUniform;
  if (name == "block-pinv-capped") return Method::BlockPinvCapped;
  if (name == "mr-bsnk-style") return Method::MrBsnkStyle;
  if (name == "md-bsnk-style") return Method::MdBsnkStyle;
  throw ParameterError("unknown method name: " + name);
}

std::string weight_rule_name(WeightRule rule) {
  return rule == WeightRule::Residual ? "residual" : "gaussian";
}

WeightRule weight_rule_from_name(const std::string& name) {
  if (name == "residual") return WeightRule::Residual;
  if (name == "gaussian") return WeightRule::Gaussian;
  throw ParameterError("unknown weight rule: " + name);
}

void SolverConfig::validate(int m) const {
  if (alpha < 1 || alpha > m) {
    throw ParameterError("alpha = " + std::to_string(alpha) +
                         " outside [1, m = " + std::to_string(m) + "]");
  }
  if (beta < 1 || beta > alpha) {
    throw ParameterError("beta = " + std::to_string(beta) +
                         " outside [1, alpha = " + std::to_string(alpha) + "]");
  }
  if (!(gamma > 0.0 && gamma < 2.0)) {
    throw ParameterError("gamma = " + std::to_string(gamma) +
                         " outside (0, 2)");
  }
  if (max_iterations < 1) {
    throw ParameterError("max_iterations must be positive");
  }
  if (residual_tolerance && !(*residual_tolerance >= 0.0)) {
    throw ParameterError("residual tolerance must be nonnegative");
  }
}

double stopping_threshold(double r0_norm) {
  return 1e-6 + 1e-8 * r0_norm;
}

Eigen::VectorXd residual_weight(const Eigen::VectorXd& block_residual) {
  return block_residual;
}

Eigen::VectorXd gaussian_weight(int size, Rng& rng) {
  if (size < 1) {
    throw ParameterError("weight size must be positive");
  }
  Eigen::VectorXd w(size);
  for (int t = 0; t < size; t += 2) {
    const double u1 = rng.uniform_pos();
    const double u2 = rng.uniform01();
    const double radius = std::sqrt(-2.0 * std::log(u1));
    const double angle = 2.0 * std::numbers::pi_v<double> * u2;
    w[t] = radius * std::cos(angle);
    if (t + 1 < size) w[t + 1] = radius * std::sin(angle);
  }
  return w;
}

Eigen::VectorXd rgfbk_step(const Eigen::VectorXd& x,
                           const Eigen::VectorXd& block_residual,
                           const Eigen::MatrixXd& block_jacobian,
                           const Eigen::VectorXd& weight, double gamma) {
  const Eigen::VectorXd direction = block_jacobian.transpose() * weight;
  const double denom = direction.squaredNorm();
  if (denom < kDirectionFloor) {
    throw DegenerateError("weighted step direction has vanishing norm");
  }
  const double numer = weight.dot(block_residual);
  return x - (gamma * numer / denom) * direction;
}

Eigen::VectorXd nk_step(const Eigen::VectorXd& x, double f_i,
                        const Eigen::VectorXd& grad_i) {
  const double denom = grad_i.squaredNorm();
  if (denom < kDirectionFloor) {
    throw DegenerateError("gradient row has vanishing norm");
  }
  return x - (f_i / denom) * grad_i;
}

Eigen::VectorXd block_pinv_step(const Eigen::VectorXd& x,
                                const Eigen::VectorXd& block_residual,
                                const Eigen::MatrixXd& block_jacobian) {
  Eigen::CompleteOrthogonalDecomposition<Eigen::MatrixXd> cod(block_jacobian);
  const Eigen::VectorXd correction = cod.solve(block_residual);
  if (!correction.allFinite()) {
    throw NumericError("pseudoinverse solve produced non-finite values");
  }
  return x - correction;
}

SolveReport solve(const NonlinearSystem& problem, const SolverConfig& config,
                  const Eigen::VectorXd& x0,
                  const std::optional<Eigen::VectorXd>& x_ref) {
  const int m = problem.equation_count();
  config.validate(m);
  if (x0.size() != problem.unknown_count()) {
    throw ParameterError("initial point has wrong length");
  }
  if (x_ref && x_ref->size() != problem.unknown_count()) {
    throw ParameterError("reference solution has wrong length");
  }

  Rng rng(config.seed);
  SolveReport report;
  const auto start = std::chrono::steady_clock::now();

  Eigen::VectorXd x = x0;
  Eigen::VectorXd r = problem.evaluate(x);
  double residual_norm = r.norm();
  report.threshold_used =
      config.residual_tolerance.value_or(stopping_threshold(residual_norm));

  auto record = [&](long k, std::optional<BlockIndexSet> block) {
    IterationRecord rec;
    rec.k = k;
    rec.residual_norm = residual_norm;
    rec.block = std::move(block);
    if (x_ref) rec.error_norm = (x - *x_ref).norm();
    report.history.push_back(std::move(rec));
  };
  record(0, std::nullopt);

  long k = 0;
  while (residual_norm > report.threshold_used && k < config.max_iterations) {
    const Eigen::VectorXd abs_r = r.cwiseAbs();

    // Select a block and apply the step; a zero block residual or a
    // degenerate direction resamples with fresh randomness.
    BlockIndexSet block;
    bool stepped = false;
    for (int attempt = 0; attempt < kMaxResampleAttempts && !stepped;
         ++attempt) {
      try {
        switch (config.method) {
          case Method::Rgfbk: {
            const ControlSet control = sample_control(m, config.alpha, rng);
            block = greedy_top_beta(abs_r, control, config.beta);
            break;
          }
          case Method::NkUniform:
            block = BlockIndexSet{{rng.uniform_index(m)}};
            break;
          case Method::BlockPinvCapped:
            block = capped_set(abs_r);
            break;
          case Method::MrBsnkStyle: {
            const ControlSet control = sample_control(m, config.alpha, rng);
            block = max_residual_from_sample(abs_r, control, config.beta);
            break;
          }
          case Method::MdBsnkStyle: {
            const ControlSet control = sample_control(m, config.alpha, rng);
            const Eigen::MatrixXd control_jac =
                problem.jacobian_block(x, control.indices);
            const Eigen::VectorXd norms = control_jac.rowwise().norm();
            Eigen::VectorXd full_norms = Eigen::VectorXd::Zero(m);
            for (int t = 0; t < control.alpha(); ++t) {
              full_norms[control.indices[t]] = norms[t];
            }
            block = max_distance_from_sample(abs_r, full_norms, control,
                                             config.beta);
            break;
          }
        }

        const Eigen::VectorXd block_r = gather(r, block.indices);
        if (block_r.norm() == 0.0) continue;

        switch (config.method) {
          case Method::Rgfbk: {
            const Eigen::MatrixXd jac = problem.jacobian_block(x, block.indices);
            const Eigen::VectorXd w = config.weight_rule == WeightRule::Residual
                                          ? residual_weight(block_r)
                                          : gaussian_weight(block.beta(), rng);
            x = rgfbk_step(x, block_r, jac, w, config.gamma);
            break;
          }
          case Method::NkUniform: {
            const Eigen::MatrixXd jac = problem.jacobian_block(x, block.indices);
            x = nk_step(x, block_r[0], jac.row(0).transpose());
            break;
          }
          case Method::BlockPinvCapped:
          case Method::MrBsnkStyle:
          case Method::MdBsnkStyle: {
            const Eigen::MatrixXd jac = problem.jacobian_block(x, block.indices);
            x = block_pinv_step(x, block_r, jac);
            break;
          }
        }
        stepped = true;
      } catch (const DegenerateError&) {
        // retry with a fresh block
      }
    }
    if (!stepped) {
      throw StagnationError("no usable block after " +
                            std::to_string(kMaxResampleAttempts) +
                            " attempts at iteration " + std::to_string(k));
    }

    ++k;
    r = problem.evaluate(x);
    residual_norm = r.norm();
    record(k, std::move(block));
  }

  report.converged = residual_norm <= report.threshold_used;
  report.iterations = k;
  report.final_x = std::move(x);
  report.elapsed_seconds =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - start)
          .count();
  return report;
}

}  // namespace rgfbk
