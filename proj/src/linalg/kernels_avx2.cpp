// Copyright 2026 The sal Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include <immintrin.h>

#include "sal/kernels.hpp"

// Two complex doubles per __m256d: [re0, im0, re1, im1].

namespace sal::kernels {
namespace {

inline __m256d swap_pairs(__m256d v) { return _mm256_permute_pd(v, 0b0101); }

inline double hsum(__m256d v) {
  __m128d lo = _mm256_castpd256_pd128(v);
  __m128d hi = _mm256_extractf128_pd(v, 1);
  lo = _mm_add_pd(lo, hi);
  return _mm_cvtsd_f64(_mm_add_sd(lo, _mm_unpackhi_pd(lo, lo)));
}

// Even lanes minus odd lanes.
inline double hsub_pairs(__m256d v) {
  __m128d lo = _mm256_castpd256_pd128(v);
  __m128d hi = _mm256_extractf128_pd(v, 1);
  lo = _mm_add_pd(lo, hi);
  return _mm_cvtsd_f64(_mm_sub_sd(lo, _mm_unpackhi_pd(lo, lo)));
}

void zaxpy_avx2(std::size_t n, Complex alpha, const Complex* x, Complex* y) {
  const double* xd = reinterpret_cast<const double*>(x);
  double* yd = reinterpret_cast<double*>(y);
  const __m256d ar = _mm256_set1_pd(alpha.real());
  const __m256d ai = _mm256_set1_pd(alpha.imag());
  std::size_t i = 0;
  for (; i + 2 <= n; i += 2) {
    __m256d xv = _mm256_loadu_pd(xd + 2 * i);
    __m256d yv = _mm256_loadu_pd(yd + 2 * i);
    // [ar*xr - ai*xi, ar*xi + ai*xr]
    __m256d prod = _mm256_fmaddsub_pd(ar, xv, _mm256_mul_pd(ai, swap_pairs(xv)));
    _mm256_storeu_pd(yd + 2 * i, _mm256_add_pd(yv, prod));
  }
  for (; i < n; ++i) y[i] += alpha * x[i];
}

Complex zdotc_avx2(std::size_t n, const Complex* x, const Complex* y) {
  const double* xd = reinterpret_cast<const double*>(x);
  const double* yd = reinterpret_cast<const double*>(y);
  __m256d direct = _mm256_setzero_pd();   // [xr*yr, xi*yi]
  __m256d crossed = _mm256_setzero_pd();  // [xr*yi, xi*yr]
  std::size_t i = 0;
  for (; i + 2 <= n; i += 2) {
    __m256d xv = _mm256_loadu_pd(xd + 2 * i);
    __m256d yv = _mm256_loadu_pd(yd + 2 * i);
    direct = _mm256_fmadd_pd(xv, yv, direct);
    crossed = _mm256_fmadd_pd(xv, swap_pairs(yv), crossed);
  }
  double re = hsum(direct);
  double im = hsub_pairs(crossed);
  for (; i < n; ++i) {
    re += x[i].real() * y[i].real() + x[i].imag() * y[i].imag();
    im += x[i].real() * y[i].imag() - x[i].imag() * y[i].real();
  }
  return {re, im};
}

double dznrm2sq_avx2(std::size_t n, const Complex* x) {
  const double* xd = reinterpret_cast<const double*>(x);
  __m256d acc0 = _mm256_setzero_pd();
  __m256d acc1 = _mm256_setzero_pd();
  std::size_t i = 0;
  for (; i + 4 <= n; i += 4) {
    __m256d a = _mm256_loadu_pd(xd + 2 * i);
    __m256d b = _mm256_loadu_pd(xd + 2 * i + 4);
    acc0 = _mm256_fmadd_pd(a, a, acc0);
    acc1 = _mm256_fmadd_pd(b, b, acc1);
  }
  double acc = hsum(_mm256_add_pd(acc0, acc1));
  for (; i < n; ++i) acc += std::norm(x[i]);
  return acc;
}

void zgemv_avx2(std::size_t rows, std::size_t cols, const Complex* a,
                const Complex* x, Complex* y) {
  const double* xd = reinterpret_cast<const double*>(x);
  for (std::size_t r = 0; r < rows; ++r) {
    const double* ad = reinterpret_cast<const double*>(a + r * cols);
    __m256d direct = _mm256_setzero_pd();   // [ar*xr, ai*xi]
    __m256d crossed = _mm256_setzero_pd();  // [ar*xi, ai*xr]
    std::size_t c = 0;
    for (; c + 2 <= cols; c += 2) {
      __m256d av = _mm256_loadu_pd(ad + 2 * c);
      __m256d xv = _mm256_loadu_pd(xd + 2 * c);
      direct = _mm256_fmadd_pd(av, xv, direct);
      crossed = _mm256_fmadd_pd(av, swap_pairs(xv), crossed);
    }
    double re = hsub_pairs(direct);
    double im = hsum(crossed);
    for (; c < cols; ++c) {
      const Complex av = a[r * cols + c];
      re += av.real() * x[c].real() - av.imag() * x[c].imag();
      im += av.real() * x[c].imag() + av.imag() * x[c].real();
    }
    y[r] = {re, im};
  }
}

void zgemm_avx2(std::size_t n, std::size_t k, std::size_t m, const Complex* a,
                const Complex* b, Complex* c) {
  for (std::size_t i = 0; i < n; ++i) {
    Complex* crow = c + i * m;
    for (std::size_t j = 0; j < m; ++j) crow[j] = 0.0;
    for (std::size_t p = 0; p < k; ++p) {
      const Complex aip = a[i * k + p];
      if (aip == Complex{}) continue;
      zaxpy_avx2(m, aip, b + p * m, crow);
    }
  }
}

}  // namespace

const Table& avx2_table() {
  static const Table table{"avx2", zaxpy_avx2, zdotc_avx2, dznrm2sq_avx2,
                           zgemv_avx2, zgemm_avx2};
  return table;
}

}  // namespace sal::kernels
