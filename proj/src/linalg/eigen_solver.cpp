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

#include <Eigen/Eigenvalues>

#include "sal/linalg.hpp"

namespace sal {

EigenSystem eigh(const Operator& h) {
  if (!h.hermitian()) throw NotHermitian("eigh: operator is not tagged Hermitian");
  const Eigen::Index d = static_cast<Eigen::Index>(h.dim());
  using RowMajor =
      Eigen::Matrix<Complex, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor>;
  Eigen::Map<const RowMajor> m(h.data().data(), d, d);
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> solver(m);
  if (solver.info() != Eigen::Success) throw NonConvergence("eigh did not converge");
  EigenSystem out;
  out.values.resize(h.dim());
  out.vectors = Operator(h.dim());
  for (Eigen::Index k = 0; k < d; ++k) {
    out.values[k] = solver.eigenvalues()(k);
    for (Eigen::Index r = 0; r < d; ++r) out.vectors(r, k) = solver.eigenvectors()(r, k);
  }
  return out;
}

}  // namespace sal
