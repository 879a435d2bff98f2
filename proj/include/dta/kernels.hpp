#pragma once

#include <cstddef>
#include <span>
#include <string_view>

namespace dta::kernels {

enum class Backend { Scalar, Avx2 };

/// Function table for one kernel backend. All routines work on contiguous
/// 64-bit float buffers. Output buffers must not alias inputs unless the
/// signature says "in place".
struct Kernels {
  // sum_i x[i] * y[i]
  double (*dot)(const double* x, const double* y, std::size_t n);
  // y[i] += a * x[i]
  void (*axpy)(double a, const double* x, double* y, std::size_t n);
  // y = A x, A row-major [rows x cols], y has length rows (overwritten)
  void (*matvec)(const double* a, std::size_t rows, std::size_t cols,
                 const double* x, double* y);
  // y += A^T g, g has length rows, y has length cols
  void (*matvec_t_accum)(const double* a, std::size_t rows, std::size_t cols,
                         const double* g, double* y);
  // y[i] = max(0, x[i])
  void (*relu)(const double* x, double* y, std::size_t n);
  // gin[i] += gout[i] where x[i] > 0 (strict; nothing flows at x == 0)
  void (*relu_backward_accum)(const double* x, const double* gout, double* gin,
                              std::size_t n);
  // y[i] = x[i] * m[i]
  void (*mul)(const double* x, const double* m, double* y, std::size_t n);
  // y[i] += x[i] * m[i]
  void (*mul_accum)(const double* x, const double* m, double* y, std::size_t n);
  // sum_i (x[i] - y[i])^2
  double (*sq_diff_sum)(const double* x, const double* y, std::size_t n);
  // Fused Adam update, in place:
  //   m = beta1*m + (1-beta1)*g,  v = beta2*v + (1-beta2)*g^2
  //   p -= lr * (m*c1) / (sqrt(v*c2) + eps)
  // where c1, c2 are the caller-supplied bias-correction reciprocals.
  void (*adam_update)(double* p, const double* g, double* m, double* v,
                      std::size_t n, double lr, double c1, double c2,
                      double beta1, double beta2, double eps);
};

const Kernels& impl(Backend b);
bool supported(Backend b);
std::string_view name(Backend b);

/// Active backend: best supported one at startup, overridable via the
/// DTA_KERNELS environment variable ("scalar" or "avx2") or set_active().
Backend active();
void set_active(Backend b);

inline double dot(std::span<const double> x, std::span<const double> y) {
  return impl(active()).dot(x.data(), y.data(), x.size());
}
inline void axpy(double a, std::span<const double> x, std::span<double> y) {
  impl(active()).axpy(a, x.data(), y.data(), x.size());
}
inline void matvec(const double* a, std::size_t rows, std::size_t cols,
                   const double* x, double* y) {
  impl(active()).matvec(a, rows, cols, x, y);
}
inline void matvec_t_accum(const double* a, std::size_t rows, std::size_t cols,
                           const double* g, double* y) {
  impl(active()).matvec_t_accum(a, rows, cols, g, y);
}
inline void relu(std::span<const double> x, std::span<double> y) {
  impl(active()).relu(x.data(), y.data(), x.size());
}
inline void relu_backward_accum(std::span<const double> x,
                                std::span<const double> gout,
                                std::span<double> gin) {
  impl(active()).relu_backward_accum(x.data(), gout.data(), gin.data(), x.size());
}
inline void mul(std::span<const double> x, std::span<const double> m,
                std::span<double> y) {
  impl(active()).mul(x.data(), m.data(), y.data(), x.size());
}
inline void mul_accum(std::span<const double> x, std::span<const double> m,
                      std::span<double> y) {
  impl(active()).mul_accum(x.data(), m.data(), y.data(), x.size());
}
inline double sq_diff_sum(std::span<const double> x, std::span<const double> y) {
  return impl(active()).sq_diff_sum(x.data(), y.data(), x.size());
}
inline void adam_update(std::span<double> p, std::span<const double> g,
                        std::span<double> m, std::span<double> v, double lr,
                        double c1, double c2, double beta1, double beta2,
                        double eps) {
  impl(active()).adam_update(p.data(), g.data(), m.data(), v.data(), p.size(),
                             lr, c1, c2, beta1, beta2, eps);
}

}  // namespace dta::kernels
