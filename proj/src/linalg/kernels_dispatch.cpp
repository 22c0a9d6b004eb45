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

#include <cstdlib>
#include <cstring>

#include "sal/kernels.hpp"

namespace sal::kernels {

#ifdef SAL_HAVE_AVX2
const Table& avx2_table();
#endif

const Table* avx2() {
#ifdef SAL_HAVE_AVX2
  static const bool supported =
      __builtin_cpu_supports("avx2") && __builtin_cpu_supports("fma");
  return supported ? &avx2_table() : nullptr;
#else
  return nullptr;
#endif
}

const Table& active() {
  static const Table& chosen = [] () -> const Table& {
    const char* env = std::getenv("SAL_SIMD");
    if (env != nullptr && std::strcmp(env, "scalar") == 0) return scalar();
    const Table* fast = avx2();
    return fast != nullptr ? *fast : scalar();
  }();
  return chosen;
}

}  // namespace sal::kernels
