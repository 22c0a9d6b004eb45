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

#include "sal/kernels.hpp"

namespace sal::kernels {
namespace {

void zaxpy_ref(std::size_t n, Complex alpha, const Complex* x, Complex* y) {
  for (std::size_t i = 0; i < n; ++i) y[i] += alpha * x[i];
}

Complex zdotc_ref(std::size_t n, const Complex* x, const Complex* y) {
  double re = 0.0, im = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    re += x[i].real() * y[i].real() + x[i].imag() * y[i].imag();
    im += x[i].real() * y[i].imag() - x[i].imag() * y[i].real();
  }
  return {re, im};
}

double dznrm2sq_ref(std::size_t n, const Complex* x) {
  double acc = 0.0;
  for (std::size_t i = 0; i < n; ++i) acc += std::norm(x[i]);
  return acc;
}

void zgemv_ref(std::size_t rows, std::size_t cols, const Complex* a,
               const Complex* x, Complex* y) {
  for (std::size_t r = 0; r < rows; ++r) {
    const Complex* row = a + r * cols;
    double re = 0.0, im = 0.0;
    for (std::size_t c = 0; c < cols; ++c) {
      re += row[c].real() * x[c].real() - row[c].imag() * x[c].imag();
      im += row[c].real() * x[c].imag() + row[c].imag() * x[c].real();
    }
    y[r] = {re, im};
  }
}

void zgemm_ref(std::size_t n, std::size_t k, std::size_t m, const Complex* a,
               const Complex* b, Complex* c) {
  for (std::size_t i = 0; i < n; ++i) {
    Complex* crow = c + i * m;
    for (std::size_t j = 0; j < m; ++j) crow[j] = 0.0;
    for (std::size_t p = 0; p < k; ++p) {
      const Complex aip = a[i * k + p];
      if (aip == Complex{}) continue;
      zaxpy_ref(m, aip, b + p * m, crow);
    }
  }
}

}  // namespace

const Table& scalar() {
  static const Table table{"scalar", zaxpy_ref, zdotc_ref, dznrm2sq_ref,
                           zgemv_ref, zgemm_ref};
  return table;
}

}  // namespace sal::kernels
