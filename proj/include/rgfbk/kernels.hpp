#pragma once

// Row-level evaluation kernels for the built-in problems.
//
// Each kernel exists twice: the default version parallelizes with OpenMP,
// and kernels::serial holds the plain reference implementation kept for
// testing and benchmarking. Both versions compute every output element with
// the same operation order, so their results are bit-identical and solver
// histories do not depend on the thread count.
//
// Jacobian buffers are column-major: entry (t, k) lives at jac[t + k * ld].

namespace rgfbk::kernels {

namespace serial {

// Chandrasekhar denominators g[t] = 1 - coef * mu[r] * sum_j x[j] / (mu[r] + mu[j])
// for r = rows[t], with coef = c / (2N) and mu, x of length n.
void h_denominators(const double* mu, int n, const double* x, double coef,
                    const int* rows, int nrows, double* g);

// Chandrasekhar Jacobian rows: jac(t, k) = [rows[t] == k] - scale[t] / (mu[rows[t]] + mu[k]),
// where the caller passes scale[t] = coef * mu[rows[t]] / g[t]^2.
void h_jacobian(const double* mu, int n, const int* rows, int nrows,
                const double* scale, double* jac, int ld);

// Broyden tridiagonal residual components for the selected rows.
void broyden_residual(const double* x, int m, const int* rows, int nrows,
                      double* f);

// Broyden Jacobian rows (dense output; at most three nonzeros per row).
void broyden_jacobian(const double* x, int m, const int* rows, int nrows,
                      double* jac, int ld);

}  // namespace serial

void h_denominators(const double* mu, int n, const double* x, double coef,
                    const int* rows, int nrows, double* g);

void h_jacobian(const double* mu, int n, const int* rows, int nrows,
                const double* scale, double* jac, int ld);

void broyden_residual(const double* x, int m, const int* rows, int nrows,
                      double* f);

void broyden_jacobian(const double* x, int m, const int* rows, int nrows,
                      double* jac, int ld);

}  // namespace rgfbk::kernels
