#include "rgfbk/bench.hpp"

#include <algorithm>
#include <atomic>
#include <charconv>
#include <filesystem>
#include <fstream>
#include <map>
#include <memory>
#include <sstream>
#include <thread>

#ifdef _OPENMP
#include <omp.h>
#endif

#include "rgfbk/analysis.hpp"
#include "rgfbk/errors.hpp"
#include "rgfbk/problem.hpp"

namespace rgfbk {

namespace fs = std::filesystem;

std::string format_double(double value) {
  char buffer[64];
  const auto result = std::to_chars(buffer, buffer + sizeof(buffer), value);
  return std::string(buffer, result.ptr);
}

namespace {

double parse_double(const std::string& text) {
  double value = 0.0;
  const auto result =
      std::from_chars(text.data(), text.data() + text.size(), value);
  if (result.ec != std::errc{}) {
    throw ParameterError("cannot parse number: " + text);
  }
  return value;
}

// Write-temp-then-rename so partially written files are never observed.
void write_file_atomic(const fs::path& path, const std::string& content) {
  const fs::path tmp = path.string() + ".tmp";
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out) {
      throw Error("cannot open " + tmp.string() + " for writing");
    }
    out << content;
  }
  fs::rename(tmp, path);
}

std::unique_ptr<NonlinearSystem> build_problem(const ProblemSpec& spec, int m,
                                               Eigen::VectorXd* x_star_out) {
  if (spec.name == "chandrasekhar") {
    return std::make_unique<ChandrasekharH>(m, spec.c);
  }
  if (spec.name == "broyden") {
    return std::make_unique<BroydenTridiagonal>(m);
  }
  if (spec.name == "linear") {
    const int n = spec.n > 0 ? spec.n : m;
    ConditionedLinear built =
        make_conditioned_linear(m, n, spec.conditioning, spec.problem_seed);
    if (x_star_out) *x_star_out = built.x_star;
    return std::make_unique<LinearSystem>(std::move(built.a),
                                          std::move(built.b));
  }
  throw ParameterError("unknown problem name: " + spec.name);
}

std::string spec_provenance(const ExperimentSpec& spec) {
  std::ostringstream out;
  out << "problem=" << spec.problem.name << "\n";
  if (spec.problem.name == "chandrasekhar") {
    out << "c=" << format_double(spec.problem.c) << "\n";
  }
  if (spec.problem.name == "linear") {
    out << "n=" << (spec.problem.n > 0 ? std::to_string(spec.problem.n)
                                       : std::string("square"))
        << "\n";
    out << "conditioning=" << format_double(spec.problem.conditioning) << "\n";
    out << "problem_seed=" << spec.problem.problem_seed << "\n";
  }
  out << "methods=";
  for (std::size_t i = 0; i < spec.methods.size(); ++i) {
    out << (i ? "," : "") << method_name(spec.methods[i]);
  }
  out << "\nsizes=";
  for (std::size_t i = 0; i < spec.sizes.size(); ++i) {
    out << (i ? "," : "") << spec.sizes[i];
  }
  out << "\nseeds=";
  for (std::size_t i = 0; i < spec.seeds.size(); ++i) {
    out << (i ? "," : "") << spec.seeds[i];
  }
  out << "\n";
  for (int m : spec.sizes) {
    const SolverConfig resolved =
        resolve_config(spec, spec.methods.front(), m, 0);
    out << "alpha[" << m << "]=" << resolved.alpha << "\n";
    out << "beta[" << m << "]=" << resolved.beta << "\n";
  }
  out << "gamma=" << format_double(spec.gamma) << "\n";
  out << "weight=" << weight_rule_name(spec.weight_rule) << "\n";
  out << "max_iterations=" << spec.max_iterations << "\n";
  out << "tolerance="
      << (spec.tolerance ? format_double(*spec.tolerance) : std::string("auto"))
      << "\n";
  out << "x0="
      << (spec.x0_fill ? format_double(*spec.x0_fill) : std::string("default"))
      << "\n";
  out << "history=" << (spec.history ? "true" : "false") << "\n";
  out << "jobs=" << spec.jobs << "\n";
  return out.str();
}

std::string history_csv(const SolveReport& report, bool with_error) {
  std::ostringstream out;
  out << "iter,residual_norm" << (with_error ? ",error_norm" : "") << "\n";
  for (const IterationRecord& rec : report.history) {
    out << rec.k << "," << format_double(rec.residual_norm);
    if (with_error) {
      out << "," << (rec.error_norm ? format_double(*rec.error_norm) : "");
    }
    out << "\n";
  }
  return out.str();
}

}  // namespace

void ExperimentSpec::validate() const {
  if (problem.name != "chandrasekhar" && problem.name != "broyden" &&
      problem.name != "linear") {
    throw ParameterError("problem: unknown name '" + problem.name + "'");
  }
  if (problem.name == "chandrasekhar" && !(problem.c > 0.0 && problem.c <= 1.0)) {
    throw ParameterError("c: must lie in (0, 1]");
  }
  if (methods.empty()) {
    throw ParameterError("methods: at least one method is required");
  }
  if (sizes.empty()) {
    throw ParameterError("sizes: at least one problem size is required");
  }
  for (int m : sizes) {
    if (m < 1) throw ParameterError("sizes: must be positive");
  }
  if (seeds.empty()) {
    throw ParameterError("seeds: at least one seed is required");
  }
  if (alpha && *alpha < 1) {
    throw ParameterError("alpha: must be positive");
  }
  if (beta && *beta < 1) {
    throw ParameterError("beta: must be positive");
  }
  if (alpha && beta && *beta > *alpha) {
    throw ParameterError("beta: must not exceed alpha");
  }
  if (!(gamma > 0.0 && gamma < 2.0)) {
    throw ParameterError("gamma: must lie in (0, 2)");
  }
  if (max_iterations < 1) {
    throw ParameterError("max-iterations: must be positive");
  }
  if (tolerance && !(*tolerance >= 0.0)) {
    throw ParameterError("tolerance: must be nonnegative");
  }
  if (jobs < 1) {
    throw ParameterError("jobs: must be positive");
  }
  if (output_dir.empty()) {
    throw ParameterError("output-dir: required");
  }
}

SolverConfig resolve_config(const ExperimentSpec& spec, Method method, int m,
                            std::uint64_t seed) {
  SolverConfig config;
  config.method = method;
  if (method == Method::NkUniform) {
    config.alpha = 1;
    config.beta = 1;
  } else {
    config.alpha = spec.alpha.value_or(std::max(1, (3 * m) / 4));
    config.beta = spec.beta.value_or(std::max(1, config.alpha / 2));
  }
  config.gamma = spec.gamma;
  config.weight_rule = spec.weight_rule;
  config.max_iterations = spec.max_iterations;
  config.residual_tolerance = spec.tolerance;
  config.seed = seed;
  return config;
}

double default_x0_fill(const std::string& problem_name) {
  return problem_name == "broyden" ? -1.0 : 0.0;
}

ExperimentResult run_experiment(const ExperimentSpec& spec) {
  spec.validate();
  fs::create_directories(spec.output_dir);

  struct SizeContext {
    std::unique_ptr<NonlinearSystem> problem;
    std::optional<Eigen::VectorXd> reference;
  };
  std::map<int, SizeContext> contexts;
  for (int m : spec.sizes) {
    SizeContext ctx;
    Eigen::VectorXd x_star;
    ctx.problem = build_problem(spec.problem, m, &x_star);
    if (spec.problem.name == "linear") {
      ctx.reference = x_star;
    } else if (spec.history && m <= 5000) {
      // Reference for error tracking; disabled when Newton cannot provide one.
      const double fill = spec.x0_fill.value_or(default_x0_fill(spec.problem.name));
      const Eigen::VectorXd x0 =
          Eigen::VectorXd::Constant(ctx.problem->unknown_count(), fill);
      try {
        ctx.reference = reference_solution(*ctx.problem, x0);
      } catch (const NoReferenceError&) {
      }
    }
    contexts.emplace(m, std::move(ctx));
  }

  struct RunTask {
    Method method;
    int m;
    std::uint64_t seed;
  };
  std::vector<RunTask> tasks;
  for (Method method : spec.methods) {
    for (int m : spec.sizes) {
      for (std::uint64_t seed : spec.seeds) {
        tasks.push_back(RunTask{method, m, seed});
      }
    }
  }

  ExperimentResult result;
  result.rows.resize(tasks.size());
  std::vector<std::string> errors(tasks.size());

  std::atomic<std::size_t> next{0};
  auto worker = [&]() {
#ifdef _OPENMP
    // Grid-level concurrency replaces kernel-level threading.
    if (spec.jobs > 1) omp_set_num_threads(1);
#endif
    while (true) {
      const std::size_t index = next.fetch_add(1);
      if (index >= tasks.size()) break;
      const RunTask& task = tasks[index];
      const SizeContext& ctx = contexts.at(task.m);
      RunSummaryRow row;
      row.method = method_name(task.method);
      row.m = task.m;
      row.seed = task.seed;
      try {
        const SolverConfig config =
            resolve_config(spec, task.method, task.m, task.seed);
        const double fill =
            spec.x0_fill.value_or(default_x0_fill(spec.problem.name));
        const Eigen::VectorXd x0 =
            Eigen::VectorXd::Constant(ctx.problem->unknown_count(), fill);
        const SolveReport report =
            solve(*ctx.problem, config, x0, ctx.reference);
        row.converged = report.converged;
        row.it = report.iterations;
        row.elapsed_seconds = report.elapsed_seconds;
        row.final_residual = report.history.back().residual_norm;
        row.threshold = report.threshold_used;
        if (spec.history) {
          const std::string name = "history_" + row.method + "_" +
                                   std::to_string(task.m) + "_" +
                                   std::to_string(task.seed) + ".csv";
          write_file_atomic(fs::path(spec.output_dir) / name,
                            history_csv(report, ctx.reference.has_value()));
        }
      } catch (const std::exception& e) {
        errors[index] = row.method + " m=" + std::to_string(task.m) +
                        " seed=" + std::to_string(task.seed) + ": " + e.what();
      }
      result.rows[index] = std::move(row);
    }
  };

  const int thread_count =
      std::min<int>(spec.jobs, static_cast<int>(tasks.size()));
  if (thread_count <= 1) {
    worker();
  } else {
    std::vector<std::thread> threads;
    for (int t = 0; t < thread_count; ++t) threads.emplace_back(worker);
    for (std::thread& thread : threads) thread.join();
  }

  for (std::size_t i = 0; i < tasks.size(); ++i) {
    if (!errors[i].empty()) result.failures.push_back(errors[i]);
  }
  // Failed runs keep no summary row.
  std::vector<RunSummaryRow> rows;
  rows.reserve(result.rows.size());
  for (std::size_t i = 0; i < tasks.size(); ++i) {
    if (errors[i].empty()) rows.push_back(std::move(result.rows[i]));
  }
  result.rows = std::move(rows);

  std::ostringstream summary;
  summary << "method,m,seed,converged,it,elapsed_seconds,final_residual,"
             "threshold\n";
  for (const RunSummaryRow& row : result.rows) {
    summary << row.method << "," << row.m << "," << row.seed << ","
            << (row.converged ? "true" : "false") << "," << row.it << ","
            << format_double(row.elapsed_seconds) << ","
            << format_double(row.final_residual) << ","
            << format_double(row.threshold) << "\n";
  }
  write_file_atomic(fs::path(spec.output_dir) / "summary.csv", summary.str());
  write_file_atomic(fs::path(spec.output_dir) / "spec.resolved",
                    spec_provenance(spec));
  if (!result.failures.empty()) {
    std::string log;
    for (const std::string& line : result.failures) log += line + "\n";
    write_file_atomic(fs::path(spec.output_dir) / "failures.log", log);
  }
  return result;
}

std::string emit_table(const std::vector<RunSummaryRow>& rows,
                       const std::string& pivot) {
  if (pivot != "it" && pivot != "elapsed") {
    throw ParameterError("pivot must be 'it' or 'elapsed'");
  }
  if (rows.empty()) {
    throw ParameterError("no summary rows to tabulate");
  }
  std::vector<std::string> methods;
  std::vector<int> sizes;
  for (const RunSummaryRow& row : rows) {
    if (std::find(methods.begin(), methods.end(), row.method) == methods.end()) {
      methods.push_back(row.method);
    }
    if (std::find(sizes.begin(), sizes.end(), row.m) == sizes.end()) {
      sizes.push_back(row.m);
    }
  }
  std::sort(sizes.begin(), sizes.end());

  // Median over converged seeds; non-converged cells mirror the paper's
  // exclusion convention with a dash.
  auto cell = [&](const std::string& method, int m) -> std::string {
    std::vector<double> values;
    for (const RunSummaryRow& row : rows) {
      if (row.method == method && row.m == m && row.converged) {
        values.push_back(pivot == "it" ? static_cast<double>(row.it)
                                       : row.elapsed_seconds);
      }
    }
    if (values.empty()) return "—";
    std::sort(values.begin(), values.end());
    const std::size_t mid = values.size() / 2;
    const double median = values.size() % 2 == 1
                              ? values[mid]
                              : 0.5 * (values[mid - 1] + values[mid]);
    return format_double(median);
  };

  std::vector<std::vector<std::string>> grid;
  std::vector<std::string> header{"method \\ m (median " + pivot + ")"};
  for (int m : sizes) header.push_back(std::to_string(m));
  grid.push_back(header);
  for (const std::string& method : methods) {
    std::vector<std::string> line{method};
    for (int m : sizes) line.push_back(cell(method, m));
    grid.push_back(line);
  }

  std::vector<std::size_t> widths(grid[0].size(), 0);
  for (const auto& line : grid) {
    for (std::size_t j = 0; j < line.size(); ++j) {
      widths[j] = std::max(widths[j], line[j].size());
    }
  }
  std::ostringstream out;
  for (const auto& line : grid) {
    for (std::size_t j = 0; j < line.size(); ++j) {
      out << (j ? "  " : "");
      out << line[j] << std::string(widths[j] - line[j].size(), ' ');
    }
    out << "\n";
  }
  return out.str();
}

std::vector<RunSummaryRow> read_summary_csv(const std::string& path) {
  std::ifstream in(path);
  if (!in) {
    throw Error("cannot open summary file: " + path);
  }
  std::string line;
  if (!std::getline(in, line)) {
    throw Error("summary file is empty: " + path);
  }
  std::vector<RunSummaryRow> rows;
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    std::vector<std::string> fields;
    std::stringstream ss(line);
    std::string field;
    while (std::getline(ss, field, ',')) fields.push_back(field);
    if (fields.size() != 8) {
      throw Error("malformed summary row: " + line);
    }
    RunSummaryRow row;
    row.method = fields[0];
    row.m = static_cast<int>(parse_double(fields[1]));
    row.seed = static_cast<std::uint64_t>(std::stoull(fields[2]));
    row.converged = fields[3] == "true";
    row.it = static_cast<long>(parse_double(fields[4]));
    row.elapsed_seconds = parse_double(fields[5]);
    row.final_residual = parse_double(fields[6]);
    row.threshold = parse_double(fields[7]);
    rows.push_back(std::move(row));
  }
  return rows;
}

}  // namespace rgfbk
