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

using namespace sal;

namespace {

const ScheduleFamily kFamilies[] = {ScheduleFamily::kLinear, ScheduleFamily::kTrig,
                                    ScheduleFamily::kExp};

// Closed-form sector levels: {-2,-2,0,0,0,0,2,2} chi omega.
std::vector<double> sector_levels(double chi, double omega) {
  return {-2 * chi * omega, -2 * chi * omega, 0, 0, 0, 0, 2 * chi * omega, 2 * chi * omega};
}

}  // namespace

TEST_CASE("gates are unitary and match their definitions") {
  for (const char* name : {"X", "Y", "Z", "H", "T", "CNOT", "Toffoli", "I"}) {
    CAPTURE(name);
    const auto g = gates::by_name(name);
    REQUIRE(g.has_value());
    CHECK(is_unitary(*g));
  }
  CHECK_FALSE(gates::by_name("SWAP").has_value());
  CHECK(std::abs(gates::T()(1, 1) - std::polar(1.0, std::numbers::pi / 4)) < 1e-15);
  CHECK(gates::Toffoli()(7, 6) == Complex(1.0));
  CHECK(gates::Toffoli()(5, 5) == Complex(1.0));
  CHECK(gates::CNOT()(3, 2) == Complex(1.0));
  CHECK_THROWS_AS(bell_state(2, 0), InvalidArgument);
}

TEST_CASE("teleport endpoints are the initial and final couplings") {
  TeleportSpec spec;
  const TimeDepHamiltonian h = teleport_hamiltonian(spec);
  CHECK(h.num_qubits() == 3);
  CHECK(max_abs_diff(h(0.0), teleport_initial()) < 1e-15);
  CHECK(max_abs_diff(h(1.0), teleport_final()) < 1e-15);
  // -omega 1 (x) (ZZ + XX)
  const Operator zz = kron(gates::Z(), gates::Z()), xx = kron(gates::X(), gates::X());
  CHECK(max_abs_diff(teleport_initial(2.0),
                     -2.0 * kron(Operator::identity(2), zz + xx)) < 1e-15);
  CHECK(max_abs_diff(teleport_final(), -1.0 * kron(zz + xx, Operator::identity(2))) < 1e-15);
}

TEST_CASE("teleport spectrum and gap match the closed form on a 101-point grid") {
  for (auto fam : kFamilies) {
    const Schedule sch(fam);
    CAPTURE(sch.name());
    for (std::size_t n : {1u, 2u}) {
      TeleportSpec spec{n, sch, std::nullopt, 1.3};
      const TimeDepHamiltonian h = teleport_hamiltonian(spec);
      double worst = 0.0;
      for (int i = 0; i <= 100; ++i) {
        const double s = i / 100.0;
        const auto ev = eigh(h(s)).values;
        const auto closed = h.spectrum(s);
        REQUIRE(closed.has_value());
        for (std::size_t k = 0; k < ev.size(); ++k)
          worst = std::max(worst, std::abs(ev[k] - (*closed)[k]));
        if (n == 1) {
          const auto lv = sector_levels(sch.chi(s), 1.3);
          for (std::size_t k = 0; k < 8; ++k) worst = std::max(worst, std::abs(ev[k] - lv[k]));
          worst = std::max(worst, std::abs((ev[2] - ev[0]) - 2 * 1.3 * sch.chi(s)));
        }
      }
      CHECK(worst <= 1e-9);
    }
  }
}

TEST_CASE("teleport Hamiltonian commutes with the sector parities") {
  for (std::size_t n : {1u, 2u}) {
    const ParityOperators par = parity_operators(n);
    const TimeDepHamiltonian h = teleport_hamiltonian({n, Schedule(ScheduleFamily::kTrig), {}, 1.0});
    for (double s : {0.0, 0.25, 0.5, 0.9, 1.0}) {
      const Operator hs = h(s);
      CHECK(commutator(hs, par.pi_z).max_abs() <= 1e-9);
      CHECK(commutator(hs, par.pi_x).max_abs() <= 1e-9);
      for (std::size_t k = 0; k < n; ++k) {
        CHECK(commutator(hs, par.sector_z[k]).max_abs() <= 1e-9);
        CHECK(commutator(hs, par.sector_x[k]).max_abs() <= 1e-9);
      }
    }
  }
}

TEST_CASE("parity block reproduces the sector Hamiltonian") {
  const Schedule sch(ScheduleFamily::kExp);
  const TimeDepHamiltonian h = teleport_hamiltonian({1, sch, {}, 0.7});
  for (double s : {0.1, 0.6}) {
    const auto v = sch(s);
    const Operator hs = h(s);
    const Operator bp = teleport_block(v.eta_i, v.eta_f, 0.7);
    double diff = 0.0;
    for (std::size_t r = 0; r < 4; ++r)
      for (std::size_t c = 0; c < 4; ++c) {
        diff = std::max(diff, std::abs(hs(kParityPlus[r], kParityPlus[c]) - bp(r, c)));
        diff = std::max(diff, std::abs(hs(kParityPlus[r], kParityMinus[c])));
      }
    CHECK(diff < 1e-14);
  }
}

TEST_CASE("gate rotation on Bob leaves the spectrum unchanged") {
  TeleportSpec plain{2, Schedule(), std::nullopt, 1.0};
  TeleportSpec rot{2, Schedule(), gates::CNOT(), 1.0};
  const TimeDepHamiltonian a = teleport_hamiltonian(plain), b = teleport_hamiltonian(rot);
  REQUIRE(b.rotation().has_value());
  for (double s : {0.0, 0.3, 1.0}) {
    const auto ea = eigh(a(s)).values, eb = eigh(b(s)).values;
    for (std::size_t k = 0; k < ea.size(); ++k) CHECK(std::abs(ea[k] - eb[k]) <= 1e-10);
  }
  TeleportSpec bad{2, Schedule(), gates::H(), 1.0};
  CHECK_THROWS_AS(teleport_hamiltonian(bad), DimensionMismatch);
  CHECK(bob_qubits(2) == std::vector<std::size_t>{2, 5});
  CHECK(data_qubits(2) == std::vector<std::size_t>{0, 3});
}

TEST_CASE("analytic derivative agrees with finite differences") {
  const TimeDepHamiltonian h = teleport_hamiltonian({1, Schedule(ScheduleFamily::kTrig), {}, 1.0});
  REQUIRE(h.has_derivative());
  const double e = 1e-6;
  const Operator fd = (1.0 / (2 * e)) * (h(0.4 + e) - h(0.4 - e));
  CHECK(max_abs_diff(h.derivative(0.4), fd) < 1e-8);
}

TEST_CASE("controlled gate and Hamiltonian") {
  ControlledSpec spec;
  spec.axis = {1.0, 0.0, 0.0};
  spec.phi = std::numbers::pi;
  spec.theta0 = std::numbers::pi;
  // 1 - 2|-><-| = X
  CHECK(max_abs_diff(controlled_gate(spec), gates::X()) < 1e-15);
  spec.n_controls = 2;
  // Toffoli-type: X on the target when both controls are set.
  CHECK(max_abs_diff(controlled_gate(spec), gates::Toffoli()) < 1e-15);
  spec.activation = 0;
  CHECK(std::abs(controlled_gate(spec)(1, 0) - Complex(1.0)) < 1e-15);
  spec.activation = 4;
  CHECK_THROWS_AS(validate(spec), InvalidArgument);
  spec.activation.reset();

  const TimeDepHamiltonian h = controlled_hamiltonian(spec);
  CHECK(h.num_qubits() == 4);
  // s = 0: -omega 1 (x) Z on the ancilla
  CHECK(max_abs_diff(h(0.0), -1.0 * kron(Operator::identity(8), gates::Z())) < 1e-14);
  // Spectrum stays {-omega, omega}, each half degenerate.
  const auto ev = eigh(h(0.37)).values;
  CHECK(ev.front() == doctest::Approx(-1.0));
  CHECK(ev.back() == doctest::Approx(1.0));
  CHECK(adiabatic_time_estimate(h) > 0.0);

  spec.theta0 = 0.0;
  CHECK_THROWS_AS(validate(spec), InvalidArgument);
  spec.theta0 = 1.0;
  spec.axis = {0.0, 0.0, 0.0};
  CHECK_THROWS_AS(validate(spec), InvalidArgument);
}

TEST_CASE("axis states are the eigenvectors of n.sigma") {
  const auto st = axis_states({0.0, 1.0, 0.0});
  // |y+> = (1, i)/sqrt2
  CHECK(fidelity(st[0], QState::normalized(1, {1.0, Complex(0, 1)})) == doctest::Approx(1.0));
  CHECK(fidelity(st[1], QState::normalized(1, {1.0, Complex(0, -1)})) == doctest::Approx(1.0));
}
