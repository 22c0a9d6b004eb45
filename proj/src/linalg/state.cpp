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

#include <cmath>
#include <string>

#include "sal/kernels.hpp"
#include "sal/linalg.hpp"

namespace sal {

QState::QState(std::size_t num_qubits, CVector amps)
    : num_qubits_(num_qubits), amps_(std::move(amps)) {
  if (amps_.size() != (std::size_t{1} << num_qubits)) {
    throw DimensionMismatch("state of " + std::to_string(num_qubits) +
                            " qubits needs " +
                            std::to_string(std::size_t{1} << num_qubits) +
                            " amplitudes");
  }
  const double n = norm(amps_);
  if (std::abs(n - 1.0) > 1e-10) {
    throw NotNormalized("state norm " + std::to_string(n));
  }
}

QState QState::normalized(std::size_t num_qubits, CVector amps) {
  const double n = norm(amps);
  if (!(n > 0.0) || !std::isfinite(n)) throw NotNormalized("zero or non-finite state");
  for (Complex& a : amps) a /= n;
  return QState(num_qubits, std::move(amps));
}

QState QState::basis(std::size_t num_qubits, std::size_t index) {
  CVector amps(std::size_t{1} << num_qubits);
  if (index >= amps.size()) throw InvalidArgument("basis index out of range");
  amps[index] = 1.0;
  return QState(num_qubits, std::move(amps));
}

QState kron(const QState& a, const QState& b) {
  CVector out(a.dim() * b.dim());
  for (std::size_t i = 0; i < a.dim(); ++i)
    for (std::size_t j = 0; j < b.dim(); ++j) out[i * b.dim() + j] = a[i] * b[j];
  return QState::normalized(a.num_qubits() + b.num_qubits(), std::move(out));
}

Complex inner(std::span<const Complex> a, std::span<const Complex> b) {
  if (a.size() != b.size()) throw DimensionMismatch("inner: sizes differ");
  return kernels::active().zdotc(a.size(), a.data(), b.data());
}

Complex inner(const QState& a, const QState& b) { return inner(a.amps(), b.amps()); }

double norm(std::span<const Complex> a) {
  return std::sqrt(kernels::active().dznrm2sq(a.size(), a.data()));
}

double fidelity(const QState& a, const QState& b) { return std::norm(inner(a, b)); }

QState compose(std::size_t num_qubits, std::span<const Placement> placements) {
  const std::size_t dim = std::size_t{1} << num_qubits;
  std::size_t covered = 0;
  for (const Placement& p : placements) {
    if (p.state == nullptr || p.state->num_qubits() != p.qubits.size())
      throw DimensionMismatch("compose: factor size does not match its qubits");
    for (std::size_t q : p.qubits) {
      if (q >= num_qubits) throw InvalidArgument("compose: qubit out of range");
      std::size_t bit = std::size_t{1} << (num_qubits - 1 - q);
      if (covered & bit) throw InvalidArgument("compose: qubit placed twice");
      covered |= bit;
    }
  }
  if (covered != dim - 1) throw InvalidArgument("compose: qubits not covered");
  CVector out(dim);
  for (std::size_t i = 0; i < dim; ++i) {
    Complex amp = 1.0;
    for (const Placement& p : placements) {
      std::size_t local = 0;
      for (std::size_t q : p.qubits)
        local = (local << 1) | ((i >> (num_qubits - 1 - q)) & 1u);
      amp *= (*p.state)[local];
    }
    out[i] = amp;
  }
  return QState::normalized(num_qubits, std::move(out));
}

}  // namespace sal
