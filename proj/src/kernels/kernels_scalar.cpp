#include "dta/kernels.hpp"

#include <cmath>

// Reference kernels. Plain loops, one accumulation order; the SIMD variants
// are checked against these in the equivalence tests.

namespace dta::kernels::scalar {

double dot(const double* x, const double* y, std::size_t n) {
  double s = 0.0;
  for (std::size_t i = 0; i < n; ++i) s += x[i] * y[i];
  return s;
}

void axpy(double a, const double* x, double* y, std::size_t n) {
  for (std::size_t i = 0; i < n; ++i) y[i] += a * x[i];
}

void matvec(const double* a, std::size_t rows, std::size_t cols,
            const double* x, double* y) {
  for (std::size_t r = 0; r < rows; ++r) {
    const double* row = a + r * cols;
    double s = 0.0;
    for (std::size_t c = 0; c < cols; ++c) s += row[c] * x[c];
    y[r] = s;
  }
}

void matvec_t_accum(const double* a, std::size_t rows, std::size_t cols,
                    const double* g, double* y) {
  for (std::size_t r = 0; r < rows; ++r) {
    const double gr = g[r];
    const double* row = a + r * cols;
    for (std::size_t c = 0; c < cols; ++c) y[c] += gr * row[c];
  }
}

void relu(const double* x, double* y, std::size_t n) {
  for (std::size_t i = 0; i < n; ++i) y[i] = x[i] > 0.0 ? x[i] : 0.0;
}

void relu_backward_accum(const double* x, const double* gout, double* gin,
                         std::size_t n) {
  for (std::size_t i = 0; i < n; ++i)
    if (x[i] > 0.0) gin[i] += gout[i];
}

void mul(const double* x, const double* m, double* y, std::size_t n) {
  for (std::size_t i = 0; i < n; ++i) y[i] = x[i] * m[i];
}

void mul_accum(const double* x, const double* m, double* y, std::size_t n) {
  for (std::size_t i = 0; i < n; ++i) y[i] += x[i] * m[i];
}

double sq_diff_sum(const double* x, const double* y, std::size_t n) {
  double s = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    const double d = x[i] - y[i];
    s += d * d;
  }
  return s;
}

void adam_update(double* p, const double* g, double* m, double* v,
                 std::size_t n, double lr, double c1, double c2, double beta1,
                 double beta2, double eps) {
  for (std::size_t i = 0; i < n; ++i) {
    m[i] = beta1 * m[i] + (1.0 - beta1) * g[i];
    v[i] = beta2 * v[i] + (1.0 - beta2) * (g[i] * g[i]);
    p[i] -= lr * (m[i] * c1) / (std::sqrt(v[i] * c2) + eps);
  }
}

const Kernels kTable = {
    dot,  axpy,      matvec,      matvec_t_accum, relu,
    relu_backward_accum, mul, mul_accum, sq_diff_sum, adam_update,
};

}  // namespace dta::kernels::scalar
