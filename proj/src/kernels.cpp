#include "rgfbk/kernels.hpp"

namespace rgfbk::kernels {

namespace serial {

void h_denominators(const double* mu, int n, const double* x, double coef,
                    const int* rows, int nrows, double* g) {
  for (int t = 0; t < nrows; ++t) {
    const double mu_r = mu[rows[t]];
    double sum = 0.0;
    for (int j = 0; j < n; ++j) {
      sum += x[j] / (mu_r + mu[j]);
    }
    g[t] = 1.0 - coef * mu_r * sum;
  }
}

void h_jacobian(const double* mu, int n, const int* rows, int nrows,
                const double* scale, double* jac, int ld) {
  for (int k = 0; k < n; ++k) {
    const double mu_k = mu[k];
    double* col = jac + static_cast<long>(k) * ld;
    for (int t = 0; t < nrows; ++t) {
      const int r = rows[t];
      col[t] = (r == k ? 1.0 : 0.0) - scale[t] / (mu[r] + mu_k);
    }
  }
}

void broyden_residual(const double* x, int m, const int* rows, int nrows,
                      double* f) {
  for (int t = 0; t < nrows; ++t) {
    const int k = rows[t];
    double v = x[k] * (0.5 * x[k] - 3.0) - 1.0;
    if (k > 0) v += x[k - 1];
    if (k < m - 1) v += 2.0 * x[k + 1];
    f[t] = v;
  }
}

void broyden_jacobian(const double* x, int m, const int* rows, int nrows,
                      double* jac, int ld) {
  for (int k = 0; k < m; ++k) {
    double* col = jac + static_cast<long>(k) * ld;
    for (int t = 0; t < nrows; ++t) col[t] = 0.0;
  }
  for (int t = 0; t < nrows; ++t) {
    const int k = rows[t];
    if (k > 0) jac[t + static_cast<long>(k - 1) * ld] = 1.0;
    jac[t + static_cast<long>(k) * ld] = x[k] - 3.0;
    if (k < m - 1) jac[t + static_cast<long>(k + 1) * ld] = 2.0;
  }
}

}  // namespace serial

// Parallel versions. Each output element is written by exactly one thread
// and its inner summation order matches the serial kernel, so outputs are
// bit-identical to serial:: for any thread count.

void h_denominators(const double* mu, int n, const double* x, double coef,
                    const int* rows, int nrows, double* g) {
#pragma omp parallel for schedule(static)
  for (int t = 0; t < nrows; ++t) {
    const double mu_r = mu[rows[t]];
    double sum = 0.0;
    for (int j = 0; j < n; ++j) {
      sum += x[j] / (mu_r + mu[j]);
    }
    g[t] = 1.0 - coef * mu_r * sum;
  }
}

void h_jacobian(const double* mu, int n, const int* rows, int nrows,
                const double* scale, double* jac, int ld) {
#pragma omp parallel for schedule(static)
  for (int k = 0; k < n; ++k) {
    const double mu_k = mu[k];
    double* col = jac + static_cast<long>(k) * ld;
    for (int t = 0; t < nrows; ++t) {
      const int r = rows[t];
      col[t] = (r == k ? 1.0 : 0.0) - scale[t] / (mu[r] + mu_k);
    }
  }
}

void broyden_residual(const double* x, int m, const int* rows, int nrows,
                      double* f) {
#pragma omp parallel for schedule(static)
  for (int t = 0; t < nrows; ++t) {
    const int k = rows[t];
    double v = x[k] * (0.5 * x[k] - 3.0) - 1.0;
    if (k > 0) v += x[k - 1];
    if (k < m - 1) v += 2.0 * x[k + 1];
    f[t] = v;
  }
}

void broyden_jacobian(const double* x, int m, const int* rows, int nrows,
                      double* jac, int ld) {
#pragma omp parallel for schedule(static)
  for (int k = 0; k < m; ++k) {
    double* col = jac + static_cast<long>(k) * ld;
    for (int t = 0; t < nrows; ++t) col[t] = 0.0;
  }
  for (int t = 0; t < nrows; ++t) {
    const int k = rows[t];
    if (k > 0) jac[t + static_cast<long>(k - 1) * ld] = 1.0;
    jac[t + static_cast<long>(k) * ld] = x[k] - 3.0;
    if (k < m - 1) jac[t + static_cast<long>(k + 1) * ld] = 2.0;
  }
}

}  // namespace rgfbk::kernels
