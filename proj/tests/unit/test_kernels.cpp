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

#include <doctest.h>

#include <cstdlib>
#include <random>
#include <vector>

#include "sal/kernels.hpp"

using sal::kernels::Complex;
using sal::kernels::Table;

namespace {

std::vector<Complex> random_vec(std::size_t n, unsigned seed) {
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  std::vector<Complex> v(n);
  for (Complex& x : v) x = {u(rng), u(rng)};
  return v;
}

double max_diff(const std::vector<Complex>& a, const std::vector<Complex>& b) {
  double m = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) m = std::max(m, std::abs(a[i] - b[i]));
  return m;
}

// Sizes straddling the vector width and its remainders.
const std::size_t kSizes[] = {0, 1, 2, 3, 4, 5, 7, 8, 9, 16, 31, 64, 257};

}  // namespace

TEST_CASE("scalar kernels against hand-computed values") {
  const Table& k = sal::kernels::scalar();
  std::vector<Complex> x{{1, 2}, {3, -1}};
  std::vector<Complex> y{{0, 1}, {2, 2}};
  CHECK(k.zdotc(2, x.data(), y.data()) == Complex(2, 1) + Complex(4, 8));
  CHECK(k.dznrm2sq(2, x.data()) == doctest::Approx(15.0));
  k.zaxpy(2, Complex(0, 1), x.data(), y.data());
  CHECK(y[0] == Complex(-2, 2));
  CHECK(y[1] == Complex(3, 5));
  // [[1, i], [0, 2]] (1, 1) = (1 + i, 2)
  std::vector<Complex> a{{1, 0}, {0, 1}, {0, 0}, {2, 0}};
  std::vector<Complex> v{{1, 0}, {1, 0}}, out(2);
  k.zgemv(2, 2, a.data(), v.data(), out.data());
  CHECK(out[0] == Complex(1, 1));
  CHECK(out[1] == Complex(2, 0));
  std::vector<Complex> c(4);
  k.zgemm(2, 2, 2, a.data(), a.data(), c.data());
  CHECK(c[0] == Complex(1, 0));
  CHECK(c[1] == Complex(0, 3));
  CHECK(c[3] == Complex(4, 0));
}

TEST_CASE("active table honours SAL_SIMD") {
  const Table& a = sal::kernels::active();
  const char* env = std::getenv("SAL_SIMD");
  if (env && std::string(env) == "scalar") CHECK(&a == &sal::kernels::scalar());
  else if (sal::kernels::avx2()) CHECK(&a == sal::kernels::avx2());
  else CHECK(&a == &sal::kernels::scalar());
}

TEST_CASE("avx2 kernels match the scalar reference") {
  const Table* v = sal::kernels::avx2();
  if (!v) {
    MESSAGE("AVX2 variant unavailable on this host; equivalence not exercised");
    return;
  }
  const Table& s = sal::kernels::scalar();
  for (std::size_t n : kSizes) {
    CAPTURE(n);
    const auto x = random_vec(n, 11 + n);
    const auto y0 = random_vec(n, 97 + n);
    auto ys = y0, yv = y0;
    s.zaxpy(n, Complex(0.3, -1.2), x.data(), ys.data());
    v->zaxpy(n, Complex(0.3, -1.2), x.data(), yv.data());
    CHECK(max_diff(ys, yv) <= 1e-14);
    CHECK(std::abs(s.zdotc(n, x.data(), y0.data()) - v->zdotc(n, x.data(), y0.data())) <=
          1e-12 * (1.0 + double(n)));
    CHECK(s.dznrm2sq(n, x.data()) ==
          doctest::Approx(v->dznrm2sq(n, x.data())).epsilon(1e-13));
  }
  for (std::size_t rows : {1, 3, 8, 13})
    for (std::size_t cols : {1, 2, 5, 8, 17}) {
      CAPTURE(rows);
      CAPTURE(cols);
      const auto a = random_vec(rows * cols, 5 * rows + cols);
      const auto x = random_vec(cols, 3 * cols);
      std::vector<Complex> ys(rows), yv(rows);
      s.zgemv(rows, cols, a.data(), x.data(), ys.data());
      v->zgemv(rows, cols, a.data(), x.data(), yv.data());
      CHECK(max_diff(ys, yv) <= 1e-13);
      const auto b = random_vec(cols * rows, 7 * cols + rows);
      std::vector<Complex> cs(rows * rows), cv(rows * rows);
      s.zgemm(rows, cols, rows, a.data(), b.data(), cs.data());
      v->zgemm(rows, cols, rows, a.data(), b.data(), cv.data());
      CHECK(max_diff(cs, cv) <= 1e-13);
    }
}
