// Times the OpenMP evaluation kernels against their serial reference
// implementations and verifies that both produce identical bytes.

#include <CLI11.hpp>
#include <chrono>
#include <cstdio>
#include <functional>
#include <numeric>
#include <vector>

#ifdef _OPENMP
#include <omp.h>
#endif

#include "rgfbk/kernels.hpp"
#include "rgfbk/rng.hpp"

namespace {

using Clock = std::chrono::steady_clock;

double best_of(int reps, const std::function<void()>& fn) {
  double best = 1e300;
  for (int rep = 0; rep < reps; ++rep) {
    const auto start = Clock::now();
    fn();
    const double seconds =
        std::chrono::duration<double>(Clock::now() - start).count();
    if (seconds < best) best = seconds;
  }
  return best;
}

bool same_bits(const std::vector<double>& a, const std::vector<double>& b) {
  for (std::size_t i = 0; i < a.size(); ++i) {
    if (a[i] != b[i]) return false;
  }
  return true;
}

void report(const char* name, int n, int nrows, double serial_s,
            double parallel_s, bool match) {
  std::printf("%-28s %7d %7d %12.3f %12.3f %8.2fx %s\n", name, n, nrows,
              serial_s * 1e3, parallel_s * 1e3, serial_s / parallel_s,
              match ? "identical" : "MISMATCH");
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Serial vs OpenMP kernel comparison"};
  std::vector<int> sizes{2000, 4000, 8000};
  int reps = 5;
  app.add_option("--sizes", sizes, "Problem sizes to benchmark")
      ->delimiter(',')
      ->capture_default_str();
  app.add_option("--reps", reps, "Repetitions (best time wins)")
      ->capture_default_str();
  CLI11_PARSE(app, argc, argv);

#ifdef _OPENMP
  std::printf("threads: %d\n", omp_get_max_threads());
#else
  std::printf("threads: 1 (built without OpenMP)\n");
#endif
  std::printf("%-28s %7s %7s %12s %12s %9s\n", "kernel", "n", "rows",
              "serial_ms", "parallel_ms", "speedup");

  for (int n : sizes) {
    rgfbk::Rng rng(42);
    std::vector<double> mu(n), x(n);
    for (int i = 0; i < n; ++i) {
      mu[i] = (i + 0.5) / n;
      x[i] = rng.uniform01();
    }
    const double coef = 0.9 / (2.0 * n);
    const int nrows = std::max(1, (3 * n) / 8);  // default-rule block size
    std::vector<int> rows(nrows);
    for (int t = 0; t < nrows; ++t) rows[t] = rng.uniform_index(n);
    std::vector<double> g_serial(nrows), g_parallel(nrows);

    const double g_s = best_of(reps, [&] {
      rgfbk::kernels::serial::h_denominators(mu.data(), n, x.data(), coef,
                                             rows.data(), nrows,
                                             g_serial.data());
    });
    const double g_p = best_of(reps, [&] {
      rgfbk::kernels::h_denominators(mu.data(), n, x.data(), coef, rows.data(),
                                     nrows, g_parallel.data());
    });
    report("chandrasekhar denominators", n, nrows, g_s, g_p,
           same_bits(g_serial, g_parallel));

    std::vector<double> scale(nrows);
    for (int t = 0; t < nrows; ++t) {
      scale[t] = coef * mu[rows[t]] / (g_serial[t] * g_serial[t]);
    }
    // Cap the Jacobian buffer at ~512 MB.
    if (static_cast<long>(nrows) * n <= (1L << 26)) {
      std::vector<double> jac_serial(static_cast<std::size_t>(nrows) * n);
      std::vector<double> jac_parallel(jac_serial.size());
      const double j_s = best_of(reps, [&] {
        rgfbk::kernels::serial::h_jacobian(mu.data(), n, rows.data(), nrows,
                                           scale.data(), jac_serial.data(),
                                           nrows);
      });
      const double j_p = best_of(reps, [&] {
        rgfbk::kernels::h_jacobian(mu.data(), n, rows.data(), nrows,
                                   scale.data(), jac_parallel.data(), nrows);
      });
      report("chandrasekhar jacobian", n, nrows, j_s, j_p,
             same_bits(jac_serial, jac_parallel));
    }

    std::vector<int> all_rows(n);
    std::iota(all_rows.begin(), all_rows.end(), 0);
    std::vector<double> f_serial(n), f_parallel(n);
    const double b_s = best_of(reps, [&] {
      rgfbk::kernels::serial::broyden_residual(x.data(), n, all_rows.data(), n,
                                               f_serial.data());
    });
    const double b_p = best_of(reps, [&] {
      rgfbk::kernels::broyden_residual(x.data(), n, all_rows.data(), n,
                                       f_parallel.data());
    });
    report("broyden residual", n, n, b_s, b_p, same_bits(f_serial, f_parallel));
  }
  return 0;
}
