// Command-line harness: runs solver/problem/seed grids, reports the
// stochastic greedy condition number and the theoretical contraction
// factor, and re-pivots existing summaries.

#include <CLI11.hpp>
#include <cstdlib>
#include <iostream>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "rgfbk/analysis.hpp"
#include "rgfbk/bench.hpp"
#include "rgfbk/errors.hpp"
#include "rgfbk/problem.hpp"
#include "rgfbk/solver.hpp"

namespace {

std::string default_output_dir() {
  const char* env = std::getenv("RGFBK_OUT_DIR");
  return env && *env ? env : "rgfbk_out";
}

struct RunOptions {
  rgfbk::ExperimentSpec spec;
  std::vector<std::string> method_names{"rgfbk"};
  std::string weight = "residual";
  std::string tolerance = "auto";
  int alpha = 0;
  int beta = 0;
  double x0 = 0.0;
  bool pivot_elapsed = false;
};

void add_problem_flags(CLI::App* cmd, rgfbk::ProblemSpec& problem) {
  cmd->add_option("--problem", problem.name,
                  "Problem family: chandrasekhar | broyden | linear")
      ->capture_default_str();
  cmd->add_option("--c", problem.c, "Chandrasekhar physical parameter")
      ->capture_default_str();
  cmd->add_option("--n", problem.n,
                  "Column count for linear problems (0 = square)")
      ->capture_default_str();
  cmd->add_option("--conditioning", problem.conditioning,
                  "Target condition number for linear problems")
      ->capture_default_str();
  cmd->add_option("--problem-seed", problem.problem_seed,
                  "Seed for linear problem construction")
      ->capture_default_str();
}

int run_command(RunOptions& opt, const CLI::App& cmd) {
  rgfbk::ExperimentSpec& spec = opt.spec;
  for (const std::string& name : opt.method_names) {
    spec.methods.push_back(rgfbk::method_from_name(name));
  }
  spec.weight_rule = rgfbk::weight_rule_from_name(opt.weight);
  if (opt.tolerance != "auto") {
    spec.tolerance = std::stod(opt.tolerance);
  }
  if (cmd.count("--alpha")) spec.alpha = opt.alpha;
  if (cmd.count("--beta")) spec.beta = opt.beta;
  if (cmd.count("--x0")) spec.x0_fill = opt.x0;

  const rgfbk::ExperimentResult result = rgfbk::run_experiment(spec);
  std::cout << rgfbk::emit_table(result.rows,
                                 opt.pivot_elapsed ? "elapsed" : "it");
  std::cout << "summary: " << spec.output_dir << "/summary.csv\n";
  if (!result.failures.empty()) {
    std::cerr << result.failures.size() << " run(s) failed; see "
              << spec.output_dir << "/failures.log\n";
    return 1;
  }
  return 0;
}

struct SgcnOptions {
  rgfbk::ProblemSpec problem;
  int size = 100;
  int alpha = 0;
  int beta = 0;
  long budget = 10000;
  std::uint64_t seed = 0;
  std::string at = "x0";
  double x0 = 0.0;
  bool x0_set = false;
};

int sgcn_command(const SgcnOptions& opt) {
  Eigen::VectorXd x_star;
  std::unique_ptr<rgfbk::NonlinearSystem> problem;
  if (opt.problem.name == "chandrasekhar") {
    problem = std::make_unique<rgfbk::ChandrasekharH>(opt.size, opt.problem.c);
  } else if (opt.problem.name == "broyden") {
    problem = std::make_unique<rgfbk::BroydenTridiagonal>(opt.size);
  } else if (opt.problem.name == "linear") {
    const int n = opt.problem.n > 0 ? opt.problem.n : opt.size;
    rgfbk::ConditionedLinear built = rgfbk::make_conditioned_linear(
        opt.size, n, opt.problem.conditioning, opt.problem.problem_seed);
    x_star = built.x_star;
    problem = std::make_unique<rgfbk::LinearSystem>(std::move(built.a),
                                                    std::move(built.b));
  } else {
    throw rgfbk::ParameterError("unknown problem name: " + opt.problem.name);
  }

  const int m = problem->equation_count();
  const int alpha = opt.alpha > 0 ? opt.alpha : std::max(1, (3 * m) / 4);
  const int beta = opt.beta > 0 ? opt.beta : std::max(1, alpha / 2);

  const double fill =
      opt.x0_set ? opt.x0 : rgfbk::default_x0_fill(opt.problem.name);
  Eigen::VectorXd at_point =
      Eigen::VectorXd::Constant(problem->unknown_count(), fill);
  if (opt.at == "reference") {
    at_point = opt.problem.name == "linear"
                   ? x_star
                   : rgfbk::reference_solution(*problem, at_point);
  } else if (opt.at != "x0") {
    throw rgfbk::ParameterError("--at must be 'x0' or 'reference'");
  }

  rgfbk::Rng rng(opt.seed);
  const rgfbk::SgcnEstimate estimate =
      rgfbk::estimate_sgcn(*problem, at_point, alpha, beta, opt.budget, rng);
  std::cout << "value=" << rgfbk::format_double(estimate.value) << "\n";
  std::cout << "mode="
            << (estimate.mode == rgfbk::SgcnMode::Exact ? "exact"
                                                        : "monte-carlo")
            << "\n";
  std::cout << "samples_used=" << estimate.samples_used << "\n";
  std::cout << "alpha=" << alpha << "\nbeta=" << beta << "\n";
  std::cout << "evaluated_at=" << opt.at << "\n";
  std::cout << "worst_block=";
  for (std::size_t i = 0; i < estimate.worst_block.indices.size(); ++i) {
    std::cout << (i ? "," : "") << estimate.worst_block.indices[i];
  }
  std::cout << "\n";
  if (estimate.mode == rgfbk::SgcnMode::MonteCarlo) {
    std::cout << "note=monte-carlo value is a lower bound of the exact "
                 "maximum\n";
  }
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Random greedy fast block Kaczmarz benchmark harness"};
  app.require_subcommand(1);

  // --- run ---
  RunOptions run_opt;
  run_opt.spec.output_dir = default_output_dir();
  CLI::App* run = app.add_subcommand("run", "Run an experiment grid");
  run->set_config("--config", "",
                  "Key=value config file; command-line flags take precedence");
  add_problem_flags(run, run_opt.spec.problem);
  run->add_option("--methods", run_opt.method_names,
                  "Solver methods (comma separated): rgfbk | nk-uniform | "
                  "block-pinv-capped | mr-bsnk-style | md-bsnk-style")
      ->delimiter(',')
      ->capture_default_str();
  run->add_option("--sizes", run_opt.spec.sizes,
                  "Problem sizes m (comma separated)")
      ->delimiter(',')
      ->required();
  run->add_option("--seeds", run_opt.spec.seeds, "Run seeds (comma separated)")
      ->delimiter(',')
      ->required();
  run->add_option("--alpha", run_opt.alpha,
                  "Control-set size (default floor(0.75 m))");
  run->add_option("--beta", run_opt.beta,
                  "Block size (default floor(0.5 alpha))");
  run->add_option("--gamma", run_opt.spec.gamma, "Relaxation parameter in (0, 2)")
      ->capture_default_str();
  run->add_option("--weight", run_opt.weight, "Weight rule: residual | gaussian")
      ->capture_default_str();
  run->add_option("--max-iterations", run_opt.spec.max_iterations,
                  "Iteration cap per run")
      ->capture_default_str();
  run->add_option("--tolerance", run_opt.tolerance,
                  "Stopping threshold, or 'auto' for 1e-6 + 1e-8 ||r0||")
      ->capture_default_str();
  run->add_option("--x0", run_opt.x0,
                  "Constant initial point (default: problem specific)");
  run->add_flag("--history", run_opt.spec.history,
                "Write per-iteration residual curves");
  run->add_option("--jobs", run_opt.spec.jobs, "Concurrent runs")
      ->capture_default_str();
  run->add_option("--output-dir", run_opt.spec.output_dir,
                  "Output directory (env RGFBK_OUT_DIR)")
      ->capture_default_str();
  run->add_flag("--pivot-elapsed", run_opt.pivot_elapsed,
                "Print the elapsed-seconds table instead of IT");

  // --- analyze-sgcn ---
  SgcnOptions sgcn_opt;
  CLI::App* sgcn = app.add_subcommand(
      "analyze-sgcn", "Estimate the stochastic greedy condition number");
  add_problem_flags(sgcn, sgcn_opt.problem);
  sgcn->add_option("--size", sgcn_opt.size, "Problem size m")->required();
  sgcn->add_option("--alpha", sgcn_opt.alpha,
                   "Control-set size (default floor(0.75 m))");
  sgcn->add_option("--beta", sgcn_opt.beta,
                   "Block size (default floor(0.5 alpha))");
  sgcn->add_option("--budget", sgcn_opt.budget,
                   "Enumeration budget; beyond it the estimate is Monte Carlo")
      ->capture_default_str();
  sgcn->add_option("--seed", sgcn_opt.seed, "Monte Carlo seed")
      ->capture_default_str();
  sgcn->add_option("--at", sgcn_opt.at,
                   "Evaluation point: x0 | reference (dense Newton solution)")
      ->capture_default_str();
  CLI::Option* sgcn_x0 =
      sgcn->add_option("--x0", sgcn_opt.x0, "Constant initial point");

  // --- rate-bound ---
  rgfbk::RateBoundInputs bound;
  CLI::App* rate =
      app.add_subcommand("rate-bound", "Evaluate the contraction factor");
  rate->add_option("--kappa", bound.kappa,
                   "Stochastic greedy condition number (>= 1)")
      ->required();
  rate->add_option("--gamma", bound.gamma, "Relaxation parameter")
      ->capture_default_str();
  rate->add_option("--eta", bound.eta, "Tangential cone constant in [0, 1/2)")
      ->capture_default_str();

  // --- table ---
  std::string summary_path;
  std::string pivot = "it";
  CLI::App* table =
      app.add_subcommand("table", "Re-pivot an existing summary.csv");
  table->add_option("--summary", summary_path, "Path to summary.csv")
      ->required();
  table->add_option("--pivot", pivot, "Cell values: it | elapsed")
      ->capture_default_str();

  CLI11_PARSE(app, argc, argv);

  try {
    if (run->parsed()) {
      return run_command(run_opt, *run);
    }
    if (sgcn->parsed()) {
      sgcn_opt.x0_set = sgcn_x0->count() > 0;
      return sgcn_command(sgcn_opt);
    }
    if (rate->parsed()) {
      const double rho = rgfbk::rate_bound(bound);
      const rgfbk::OptimalGamma best = rgfbk::optimal_gamma(bound.eta);
      std::cout << "rho=" << rgfbk::format_double(rho) << "\n";
      std::cout << "gamma_star=" << rgfbk::format_double(best.gamma_star)
                << "\n";
      std::cout << "rho_star="
                << rgfbk::format_double(rgfbk::rate_bound(
                       {bound.kappa, best.gamma_star, bound.eta}))
                << "\n";
      return 0;
    }
    if (table->parsed()) {
      std::cout << rgfbk::emit_table(rgfbk::read_summary_csv(summary_path),
                                     pivot);
      return 0;
    }
  } catch (const rgfbk::ParameterError& e) {
    std::cerr << "usage error: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return 0;
}
