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

#pragma once

#include <complex>
#include <cstddef>

// Dense complex kernels behind Operator/QState arithmetic. Each routine has a
// scalar reference and, on x86-64, an AVX2+FMA variant picked at startup.
// All matrices are row-major and tightly packed.

namespace sal::kernels {

using Complex = std::complex<double>;

struct Table {
  const char* name;
  // y += alpha * x
  void (*zaxpy)(std::size_t n, Complex alpha, const Complex* x, Complex* y);
  // sum conj(x_i) * y_i
  Complex (*zdotc)(std::size_t n, const Complex* x, const Complex* y);
  // sum |x_i|^2
  double (*dznrm2sq)(std::size_t n, const Complex* x);
  // y = A x, A is rows x cols
  void (*zgemv)(std::size_t rows, std::size_t cols, const Complex* a,
                const Complex* x, Complex* y);
  // c = A B, A is n x k, B is k x m; c must not alias a or b
  void (*zgemm)(std::size_t n, std::size_t k, std::size_t m, const Complex* a,
                const Complex* b, Complex* c);
};

const Table& scalar();

// nullptr when the variant was not compiled in or the CPU lacks AVX2/FMA.
const Table* avx2();

// Table used by the library. AVX2 when available unless SAL_SIMD=scalar.
const Table& active();

}  // namespace sal::kernels
