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

#include <cmath>
#include <numbers>
#include <vector>

#include "sal/hamiltonians.hpp"
#include "sal/linalg.hpp"

using namespace sal;

namespace {
const double r2 = std::numbers::sqrt2 / 2.0;
}

TEST_CASE("hermitian tag is validated and propagated") {
  Operator a(2, {1.0, Complex(0, 1), Complex(0, -1), 2.0});
  a.tag_hermitian();
  CHECK(a.hermitian());
  CHECK((a + a).hermitian());
  CHECK((2.5 * a).hermitian());
  CHECK(a.adjoint().hermitian());
  CHECK_FALSE((Complex(0, 1) * a).hermitian());
  CHECK_FALSE((a * a).hermitian());
  Operator b(2, {1.0, 1.0, 0.0, 1.0});
  CHECK_THROWS_AS(b.tag_hermitian(), NotHermitian);
  CHECK_THROWS_AS(eigh(b), NotHermitian);
  CHECK_THROWS_AS(Operator(2, {1.0, 2.0, 3.0}), DimensionMismatch);
}

TEST_CASE("kron and embed follow the most-significant-first ordering") {
  const Operator x = gates::X(), z = gates::Z();
  const Operator xz = kron(x, z);
  // X (x) Z |00> = |10>
  CHECK(xz(2, 0) == Complex(1.0));
  // Z on qubit 1 of 2 equals 1 (x) Z; reversed qubit order swaps factors.
  CHECK(max_abs_diff(embed(z, std::vector<std::size_t>{1}, 2), kron(Operator::identity(2), z)) == 0.0);
  const std::vector<std::size_t> rev{1, 0};
  CHECK(max_abs_diff(embed(xz, rev, 2), kron(z, x)) == 0.0);
  const std::vector<std::size_t> q02{0, 2};
  CHECK(max_abs_diff(embed(xz, q02, 3), kron({x, Operator::identity(2), z})) == 0.0);
  Operator acc(8);
  acc.tag_hermitian();
  Operator tagged = xz;
  tagged.tag_hermitian();
  accumulate_embedded(acc, tagged, q02, 3, 2.0);
  CHECK(max_abs_diff(acc, 2.0 * kron({x, Operator::identity(2), z})) == 0.0);
  CHECK(acc.hermitian());
  CHECK_THROWS_AS(embed(xz, std::vector<std::size_t>{0, 0}, 3), InvalidArgument);
}

TEST_CASE("apply_local agrees with the embedded dense product") {
  const Operator cnot = gates::CNOT();
  QState psi = QState::normalized(3, {1, Complex(0, 2), 3, 4, 5, 6, 7, Complex(8, -1)});
  const std::vector<std::size_t> q{2, 0};
  CVector dense = matvec(embed(cnot, q, 3), psi.amps());
  CVector local(psi.amps().begin(), psi.amps().end());
  apply_local(cnot, q, 3, local);
  for (std::size_t i = 0; i < 8; ++i) CHECK(std::abs(dense[i] - local[i]) < 1e-15);
}

TEST_CASE("states, inner products and fidelity") {
  CHECK_THROWS_AS(QState(1, {1.0, 1.0}), NotNormalized);
  const QState plus = QState::normalized(1, {1.0, 1.0});
  const QState zero = QState::basis(1, 0);
  CHECK(fidelity(plus, zero) == doctest::Approx(0.5));
  const QState b = bell_state(0, 0);
  CHECK(b[0] == Complex(r2));
  CHECK(b[3] == Complex(r2));
  // |psi> on qubit 1, Bell pair on (0, 2)
  const QState one = QState::basis(1, 1);
  const std::vector<Placement> places{{&b, {0, 2}}, {&one, {1}}};
  const QState c = compose(3, places);
  CHECK(std::abs(c[0b010] - Complex(r2)) < 1e-15);
  CHECK(std::abs(c[0b111] - Complex(r2)) < 1e-15);
  CHECK(norm(c.amps()) == doctest::Approx(1.0));
}

TEST_CASE("eigh, exponentials and norms") {
  Operator h(2, {0.0, 1.0, 1.0, 0.0});
  h.tag_hermitian();
  const EigenSystem es = eigh(h);
  CHECK(es.values[0] == doctest::Approx(-1.0));
  CHECK(es.values[1] == doctest::Approx(1.0));
  CHECK(spectral_norm(h) == doctest::Approx(1.0));
  // exp(-i X pi/2) = -i X
  const Operator u = expm_hermitian(h, std::numbers::pi / 2.0);
  CHECK(std::abs(u(0, 1) - Complex(0, -1)) < 1e-14);
  CHECK(is_unitary(u));
  CHECK_THROWS_AS(require_unitary(h + h, "2X"), NotUnitary);
  CHECK(h.hs_norm() == doctest::Approx(std::sqrt(2.0)));
  CHECK(commutator(gates::X(), gates::Z()).max_abs() == doctest::Approx(2.0));
  CHECK(anticommutator(gates::X(), gates::Z()).max_abs() == doctest::Approx(0.0));
  CHECK(log2_exact(8) == 3);
  CHECK_THROWS_AS(log2_exact(6), DimensionMismatch);
}

TEST_CASE("conjugation keeps Hermiticity and spectrum") {
  Operator h = kron(gates::Z(), gates::X()) + kron(gates::X(), gates::Y());
  h.tag_hermitian();
  const Operator g = kron(gates::H(), gates::T());
  const Operator r = conjugate(g, h);
  CHECK(r.hermitian());
  const auto a = eigh(h).values, b = eigh(r).values;
  for (std::size_t i = 0; i < a.size(); ++i) CHECK(a[i] == doctest::Approx(b[i]).epsilon(1e-13));
}
