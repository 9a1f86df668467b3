#include <doctest.h>

#include <numeric>
#include <vector>

#include "rgfbk/kernels.hpp"
#include "rgfbk/rng.hpp"

namespace kernels = rgfbk::kernels;

namespace {

struct Inputs {
  int n;
  std::vector<double> mu, x, scale;
  std::vector<int> rows;
  double coef;
};

Inputs random_inputs(int n, int nrows, std::uint64_t seed) {
  rgfbk::Rng rng(seed);
  Inputs in;
  in.n = n;
  in.coef = 0.9 / (2.0 * n);
  in.mu.resize(n);
  in.x.resize(n);
  for (int i = 0; i < n; ++i) {
    in.mu[i] = (i + 0.5) / n;
    in.x[i] = rng.uniform01();
  }
  in.rows.resize(nrows);
  for (int t = 0; t < nrows; ++t) in.rows[t] = rng.uniform_index(n);
  in.scale.resize(nrows);
  for (int t = 0; t < nrows; ++t) in.scale[t] = rng.uniform01() + 0.5;
  return in;
}

}  // namespace

// The parallel kernels must match the serial reference bit for bit; solver
// histories would otherwise depend on the thread count.
TEST_CASE("parallel kernels are bit-identical to the serial reference") {
  for (std::uint64_t seed : {1ULL, 2ULL, 3ULL}) {
    const Inputs in = random_inputs(257, 61, seed);

    std::vector<double> g_a(61), g_b(61);
    kernels::serial::h_denominators(in.mu.data(), in.n, in.x.data(), in.coef,
                                    in.rows.data(), 61, g_a.data());
    kernels::h_denominators(in.mu.data(), in.n, in.x.data(), in.coef,
                            in.rows.data(), 61, g_b.data());
    CHECK(g_a == g_b);

    std::vector<double> jac_a(61 * 257), jac_b(61 * 257);
    kernels::serial::h_jacobian(in.mu.data(), in.n, in.rows.data(), 61,
                                in.scale.data(), jac_a.data(), 61);
    kernels::h_jacobian(in.mu.data(), in.n, in.rows.data(), 61,
                        in.scale.data(), jac_b.data(), 61);
    CHECK(jac_a == jac_b);

    std::vector<double> f_a(61), f_b(61);
    kernels::serial::broyden_residual(in.x.data(), in.n, in.rows.data(), 61,
                                      f_a.data());
    kernels::broyden_residual(in.x.data(), in.n, in.rows.data(), 61,
                              f_b.data());
    CHECK(f_a == f_b);

    std::vector<double> bj_a(61 * 257, -1.0), bj_b(61 * 257, -2.0);
    kernels::serial::broyden_jacobian(in.x.data(), in.n, in.rows.data(), 61,
                                      bj_a.data(), 61);
    kernels::broyden_jacobian(in.x.data(), in.n, in.rows.data(), 61,
                              bj_b.data(), 61);
    CHECK(bj_a == bj_b);
  }
}

TEST_CASE("broyden jacobian rows carry the tridiagonal stencil") {
  const int m = 6;
  std::vector<double> x(m, -1.0);
  std::vector<int> rows(m);
  std::iota(rows.begin(), rows.end(), 0);
  std::vector<double> jac(m * m, 99.0);
  kernels::broyden_jacobian(x.data(), m, rows.data(), m, jac.data(), m);
  for (int t = 0; t < m; ++t) {
    for (int k = 0; k < m; ++k) {
      const double value = jac[t + k * m];
      if (k == t - 1) {
        CHECK(value == 1.0);
      } else if (k == t) {
        CHECK(value == -4.0);  // x_k - 3 at x_k = -1
      } else if (k == t + 1) {
        CHECK(value == 2.0);
      } else {
        CHECK(value == 0.0);
      }
    }
  }
}
