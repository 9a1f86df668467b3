#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "rgfbk/solver.hpp"

namespace rgfbk {

// Problem family plus its construction parameters. `name` is one of
// "chandrasekhar", "broyden", "linear"; sizes come from ExperimentSpec.
struct ProblemSpec {
  std::string name = "chandrasekhar";
  double c = 0.9;                  // chandrasekhar only
  int n = 0;                       // linear column count; 0 means square
  double conditioning = 10.0;      // linear only
  std::uint64_t problem_seed = 0;  // linear only
};

// A full experiment grid: every (method, size, seed) triple becomes one run.
struct ExperimentSpec {
  ProblemSpec problem;
  std::vector<Method> methods;
  std::vector<int> sizes;
  std::vector<std::uint64_t> seeds;
  std::string output_dir;
  bool history = false;
  // Unset alpha/beta resolve per size to alpha = floor(0.75 m),
  // beta = floor(0.5 alpha).
  std::optional<int> alpha;
  std::optional<int> beta;
  double gamma = 1.2;
  WeightRule weight_rule = WeightRule::Residual;
  long max_iterations = 100000;
  std::optional<double> tolerance;  // unset: RES = 1e-6 + 1e-8 ||r0||
  std::optional<double> x0_fill;    // constant initial point override
  int jobs = 1;

  void validate() const;  // throws ParameterError naming the offending field
};

struct RunSummaryRow {
  std::string method;
  int m = 0;
  std::uint64_t seed = 0;
  bool converged = false;
  long it = 0;
  double elapsed_seconds = 0.0;
  double final_residual = 0.0;
  double threshold = 0.0;
};

struct ExperimentResult {
  std::vector<RunSummaryRow> rows;
  // Runs that raised an execution error; recorded in failures.log as well.
  std::vector<std::string> failures;
};

// Solver configuration for one run of the grid, with the default
// alpha/beta rule applied at the given problem size.
SolverConfig resolve_config(const ExperimentSpec& spec, Method method, int m,
                            std::uint64_t seed);

// Initial point used when x0_fill is unset: zeros for chandrasekhar and
// linear, all -1 for broyden.
double default_x0_fill(const std::string& problem_name);

// Runs the grid and writes summary.csv, spec.resolved, per-run history
// files (when enabled) and failures.log (when nonempty) into
// spec.output_dir. Files are written to temporaries and renamed, so
// concurrent runs never interleave bytes. Runs execute concurrently up to
// spec.jobs.
ExperimentResult run_experiment(const ExperimentSpec& spec);

// Pivot table over summary rows: methods as rows, sizes as columns, cells
// the median over converged seeds of IT ("it") or elapsed seconds
// ("elapsed"); cells with no converged run print an em dash.
std::string emit_table(const std::vector<RunSummaryRow>& rows,
                       const std::string& pivot);

std::vector<RunSummaryRow> read_summary_csv(const std::string& path);

// Shortest round-trip decimal form, used for all CSV numbers.
std::string format_double(double value);

}  // namespace rgfbk
