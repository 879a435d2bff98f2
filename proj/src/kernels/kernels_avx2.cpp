#include <immintrin.h>

#include <cmath>

#include "tables.hpp"

// AVX2+FMA kernels. This translation unit is the only one compiled with
// -mavx2 -mfma; callers reach it through the dispatch table after the CPU
// check in dispatch.cpp.

namespace dta::kernels::avx2 {

namespace {

inline double hsum(__m256d v) {
  __m128d lo = _mm256_castpd256_pd128(v);
  __m128d hi = _mm256_extractf128_pd(v, 1);
  lo = _mm_add_pd(lo, hi);
  __m128d shuf = _mm_unpackhi_pd(lo, lo);
  return _mm_cvtsd_f64(_mm_add_sd(lo, shuf));
}

}  // namespace

double dot(const double* x, const double* y, std::size_t n) {
  __m256d s0 = _mm256_setzero_pd();
  __m256d s1 = _mm256_setzero_pd();
  std::size_t i = 0;
  for (; i + 8 <= n; i += 8) {
    s0 = _mm256_fmadd_pd(_mm256_loadu_pd(x + i), _mm256_loadu_pd(y + i), s0);
    s1 = _mm256_fmadd_pd(_mm256_loadu_pd(x + i + 4), _mm256_loadu_pd(y + i + 4), s1);
  }
  for (; i + 4 <= n; i += 4)
    s0 = _mm256_fmadd_pd(_mm256_loadu_pd(x + i), _mm256_loadu_pd(y + i), s0);
  double s = hsum(_mm256_add_pd(s0, s1));
  for (; i < n; ++i) s += x[i] * y[i];
  return s;
}

void axpy(double a, const double* x, double* y, std::size_t n) {
  const __m256d av = _mm256_set1_pd(a);
  std::size_t i = 0;
  for (; i + 4 <= n; i += 4) {
    __m256d yv = _mm256_loadu_pd(y + i);
    yv = _mm256_fmadd_pd(av, _mm256_loadu_pd(x + i), yv);
    _mm256_storeu_pd(y + i, yv);
  }
  for (; i < n; ++i) y[i] += a * x[i];
}

void matvec(const double* a, std::size_t rows, std::size_t cols,
            const double* x, double* y) {
  std::size_t r = 0;
  // Four rows share each load of x.
  for (; r + 4 <= rows; r += 4) {
    const double* a0 = a + r * cols;
    const double* a1 = a0 + cols;
    const double* a2 = a1 + cols;
    const double* a3 = a2 + cols;
    __m256d s0 = _mm256_setzero_pd(), s1 = _mm256_setzero_pd();
    __m256d s2 = _mm256_setzero_pd(), s3 = _mm256_setzero_pd();
    std::size_t c = 0;
    for (; c + 4 <= cols; c += 4) {
      const __m256d xv = _mm256_loadu_pd(x + c);
      s0 = _mm256_fmadd_pd(_mm256_loadu_pd(a0 + c), xv, s0);
      s1 = _mm256_fmadd_pd(_mm256_loadu_pd(a1 + c), xv, s1);
      s2 = _mm256_fmadd_pd(_mm256_loadu_pd(a2 + c), xv, s2);
      s3 = _mm256_fmadd_pd(_mm256_loadu_pd(a3 + c), xv, s3);
    }
    double t0 = hsum(s0), t1 = hsum(s1), t2 = hsum(s2), t3 = hsum(s3);
    for (; c < cols; ++c) {
      t0 += a0[c] * x[c];
      t1 += a1[c] * x[c];
      t2 += a2[c] * x[c];
      t3 += a3[c] * x[c];
    }
    y[r] = t0;
    y[r + 1] = t1;
    y[r + 2] = t2;
    y[r + 3] = t3;
  }
  for (; r < rows; ++r) y[r] = dot(a + r * cols, x, cols);
}

void matvec_t_accum(const double* a, std::size_t rows, std::size_t cols,
                    const double* g, double* y) {
  for (std::size_t r = 0; r < rows; ++r) axpy(g[r], a + r * cols, y, cols);
}

void relu(const double* x, double* y, std::size_t n) {
  const __m256d zero = _mm256_setzero_pd();
  std::size_t i = 0;
  for (; i + 4 <= n; i += 4)
    _mm256_storeu_pd(y + i, _mm256_max_pd(_mm256_loadu_pd(x + i), zero));
  for (; i < n; ++i) y[i] = x[i] > 0.0 ? x[i] : 0.0;
}

void relu_backward_accum(const double* x, const double* gout, double* gin,
                         std::size_t n) {
  const __m256d zero = _mm256_setzero_pd();
  std::size_t i = 0;
  for (; i + 4 <= n; i += 4) {
    const __m256d mask = _mm256_cmp_pd(_mm256_loadu_pd(x + i), zero, _CMP_GT_OQ);
    const __m256d pass = _mm256_and_pd(_mm256_loadu_pd(gout + i), mask);
    _mm256_storeu_pd(gin + i, _mm256_add_pd(_mm256_loadu_pd(gin + i), pass));
  }
  for (; i < n; ++i)
    if (x[i] > 0.0) gin[i] += gout[i];
}

void mul(const double* x, const double* m, double* y, std::size_t n) {
  std::size_t i = 0;
  for (; i + 4 <= n; i += 4)
    _mm256_storeu_pd(y + i, _mm256_mul_pd(_mm256_loadu_pd(x + i), _mm256_loadu_pd(m + i)));
  for (; i < n; ++i) y[i] = x[i] * m[i];
}

void mul_accum(const double* x, const double* m, double* y, std::size_t n) {
  std::size_t i = 0;
  for (; i + 4 <= n; i += 4) {
    __m256d yv = _mm256_loadu_pd(y + i);
    yv = _mm256_fmadd_pd(_mm256_loadu_pd(x + i), _mm256_loadu_pd(m + i), yv);
    _mm256_storeu_pd(y + i, yv);
  }
  for (; i < n; ++i) y[i] += x[i] * m[i];
}

double sq_diff_sum(const double* x, const double* y, std::size_t n) {
  __m256d s0 = _mm256_setzero_pd();
  __m256d s1 = _mm256_setzero_pd();
  std::size_t i = 0;
  for (; i + 8 <= n; i += 8) {
    const __m256d d0 = _mm256_sub_pd(_mm256_loadu_pd(x + i), _mm256_loadu_pd(y + i));
    const __m256d d1 = _mm256_sub_pd(_mm256_loadu_pd(x + i + 4), _mm256_loadu_pd(y + i + 4));
    s0 = _mm256_fmadd_pd(d0, d0, s0);
    s1 = _mm256_fmadd_pd(d1, d1, s1);
  }
  for (; i + 4 <= n; i += 4) {
    const __m256d d = _mm256_sub_pd(_mm256_loadu_pd(x + i), _mm256_loadu_pd(y + i));
    s0 = _mm256_fmadd_pd(d, d, s0);
  }
  double s = hsum(_mm256_add_pd(s0, s1));
  for (; i < n; ++i) {
    const double d = x[i] - y[i];
    s += d * d;
  }
  return s;
}

void adam_update(double* p, const double* g, double* m, double* v,
                 std::size_t n, double lr, double c1, double c2, double beta1,
                 double beta2, double eps) {
  const __m256d b1 = _mm256_set1_pd(beta1);
  const __m256d nb1 = _mm256_set1_pd(1.0 - beta1);
  const __m256d b2 = _mm256_set1_pd(beta2);
  const __m256d nb2 = _mm256_set1_pd(1.0 - beta2);
  const __m256d lrv = _mm256_set1_pd(lr);
  const __m256d c1v = _mm256_set1_pd(c1);
  const __m256d c2v = _mm256_set1_pd(c2);
  const __m256d epsv = _mm256_set1_pd(eps);
  std::size_t i = 0;
  for (; i + 4 <= n; i += 4) {
    const __m256d gv = _mm256_loadu_pd(g + i);
    __m256d mv = _mm256_loadu_pd(m + i);
    __m256d vv = _mm256_loadu_pd(v + i);
    mv = _mm256_fmadd_pd(nb1, gv, _mm256_mul_pd(b1, mv));
    vv = _mm256_fmadd_pd(nb2, _mm256_mul_pd(gv, gv), _mm256_mul_pd(b2, vv));
    _mm256_storeu_pd(m + i, mv);
    _mm256_storeu_pd(v + i, vv);
    const __m256d num = _mm256_mul_pd(_mm256_mul_pd(mv, c1v), lrv);
    const __m256d den = _mm256_add_pd(_mm256_sqrt_pd(_mm256_mul_pd(vv, c2v)), epsv);
    __m256d pv = _mm256_loadu_pd(p + i);
    pv = _mm256_sub_pd(pv, _mm256_div_pd(num, den));
    _mm256_storeu_pd(p + i, pv);
  }
  for (; i < n; ++i) {
    m[i] = beta1 * m[i] + (1.0 - beta1) * g[i];
    v[i] = beta2 * v[i] + (1.0 - beta2) * (g[i] * g[i]);
    p[i] -= lr * (m[i] * c1) / (std::sqrt(v[i] * c2) + eps);
  }
}

const Kernels kTable = {
    dot,  axpy,      matvec,      matvec_t_accum, relu,
    relu_backward_accum, mul, mul_accum, sq_diff_sum, adam_update,
};

}  // namespace dta::kernels::avx2
