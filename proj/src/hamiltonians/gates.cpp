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
#include <numbers>

#include "sal/hamiltonians.hpp"

namespace sal {
namespace gates {

Operator X() { return std::move(Operator(2, {0.0, 1.0, 1.0, 0.0}).tag_hermitian()); }
Operator Y() { return std::move(Operator(2, {0.0, -kI, kI, 0.0}).tag_hermitian()); }
Operator Z() { return std::move(Operator(2, {1.0, 0.0, 0.0, -1.0}).tag_hermitian()); }

Operator H() {
  const double r = std::numbers::sqrt2 / 2.0;
  return std::move(Operator(2, {r, r, r, -r}).tag_hermitian());
}

Operator T() {
  return Operator(2, {1.0, 0.0, 0.0, std::polar(1.0, std::numbers::pi / 4.0)});
}

Operator CNOT() {
  Operator u(4);
  u(0, 0) = u(1, 1) = u(2, 3) = u(3, 2) = 1.0;
  return std::move(u.tag_hermitian());
}

Operator Toffoli() {
  Operator u = Operator::identity(8);
  u(6, 6) = u(7, 7) = 0.0;
  u(6, 7) = u(7, 6) = 1.0;
  return std::move(u.tag_hermitian());
}

Operator identity(std::size_t num_qubits) {
  return Operator::identity(std::size_t{1} << num_qubits);
}

std::optional<Operator> by_name(std::string_view name) {
  if (name == "X") return X();
  if (name == "Y") return Y();
  if (name == "Z") return Z();
  if (name == "H") return H();
  if (name == "T") return T();
  if (name == "CNOT") return CNOT();
  if (name == "Toffoli") return Toffoli();
  if (name == "I") return identity(1);
  return std::nullopt;
}

}  // namespace gates

QState bell_state(int n, int m) {
  if ((n != 0 && n != 1) || (m != 0 && m != 1)) {
    throw InvalidArgument("bell_state: indices must be bits");
  }
  CVector amps(4);
  const double r = std::numbers::sqrt2 / 2.0;
  amps[n] = r;                          // |0 n>
  amps[2 + (1 - n)] = m == 0 ? r : -r;  // |1 nbar>
  return QState(2, std::move(amps));
}

}  // namespace sal
