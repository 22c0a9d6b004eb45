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

#include <array>
#include <functional>
#include <optional>
#include <span>
#include <string_view>
#include <vector>

#include "sal/linalg.hpp"
#include "sal/schedules.hpp"

namespace sal {

namespace gates {
Operator X();
Operator Y();
Operator Z();
Operator H();
Operator T();  // pi/8 gate, diag(1, e^{i pi/4})
Operator CNOT();
Operator Toffoli();
Operator identity(std::size_t num_qubits);
// "X", "Y", "Z", "H", "T", "CNOT", "Toffoli", "I".
std::optional<Operator> by_name(std::string_view name);
}  // namespace gates

// (|0 n> + (-1)^m |1 nbar>) / sqrt(2).
QState bell_state(int n, int m);

// One additive piece of a Hamiltonian, acting on a subset of qubits.
struct LocalTerm {
  std::vector<std::size_t> qubits;        // most significant first
  std::function<Operator(double)> value;  // Hermitian-tagged local operator
  std::function<Operator(double)> ds;     // may be empty
};

// H(s) = G [sum_k terms_k(s)] G^dagger on num_qubits qubits, s in [0, 1].
// G is an optional time-independent unitary. Keeping the terms local lets the
// propagator factor over disjoint qubit clusters.
class TimeDepHamiltonian {
 public:
  TimeDepHamiltonian() = default;
  TimeDepHamiltonian(std::size_t num_qubits, std::vector<LocalTerm> terms);

  static TimeDepHamiltonian constant(const Operator& h);

  std::size_t num_qubits() const noexcept { return num_qubits_; }
  std::size_t dim() const noexcept { return std::size_t{1} << num_qubits_; }
  const std::vector<LocalTerm>& terms() const noexcept { return terms_; }
  const std::optional<Operator>& rotation() const noexcept { return rotation_; }

  // Dense H(s), Hermitian-tagged.
  Operator operator()(double s) const;
  // Sum of the terms without G.
  Operator unrotated(double s) const;

  bool has_derivative() const noexcept;
  // Analytic dH/ds; throws InvalidArgument if some term has none.
  Operator derivative(double s) const;

  // H(s) x without forming the dense matrix.
  CVector apply(double s, std::span<const Complex> x) const;

  // Closed-form eigenvalues (ascending) when the builder knows them.
  void set_spectrum(std::function<std::vector<double>(double)> spectrum);
  std::optional<std::vector<double>> spectrum(double s) const;

  // G' H G'^dagger. Throws NotUnitary / DimensionMismatch.
  TimeDepHamiltonian rotated(const Operator& g) const;

  // Same Hamiltonian on a larger register: local qubit j goes to map[j].
  TimeDepHamiltonian embedded(std::span<const std::size_t> map,
                              std::size_t num_qubits) const;

  friend TimeDepHamiltonian operator+(const TimeDepHamiltonian& a,
                                      const TimeDepHamiltonian& b);

 private:
  std::size_t num_qubits_ = 0;
  std::vector<LocalTerm> terms_;
  std::optional<Operator> rotation_;
  std::function<std::vector<double>(double)> spectrum_;
};

struct TeleportSpec {
  std::size_t n_sectors = 1;
  Schedule schedule{};
  std::optional<Operator> gate;  // acts on the n Bob qubits
  double omega = 1.0;
};

// Sector k occupies qubits (3k, 3k+1, 3k+2) = (data, Alice channel, Bob channel).
std::array<std::size_t, 3> sector_qubits(std::size_t k);
std::vector<std::size_t> data_qubits(std::size_t n_sectors);
std::vector<std::size_t> bob_qubits(std::size_t n_sectors);

// Single-sector pieces on (data, A, B): -omega 1(x)(ZZ+XX) and -omega (ZZ+XX)(x)1.
Operator teleport_initial(double omega = 1.0);
Operator teleport_final(double omega = 1.0);

// Parity-block basis of one sector: the + block spans {000,011,101,110} and
// the - block is its bitwise complement, listed in matching order.
inline constexpr std::array<std::size_t, 4> kParityPlus{0, 3, 5, 6};
inline constexpr std::array<std::size_t, 4> kParityMinus{7, 4, 2, 1};

// The 4x4 block shared by both parity sectors, for eta_i = a, eta_f = b:
// -omega [[a+b, a, 0, b], [a, a-b, b, 0], [0, b, -a-b, a], [b, 0, a, b-a]].
Operator teleport_block(double eta_i, double eta_f, double omega = 1.0);

// Closed-form single-sector levels {-2chi,-2chi,0,0,0,0,2chi,2chi} * omega.
std::vector<double> teleport_sector_levels(const Schedule& schedule, double s,
                                           double omega = 1.0);

TimeDepHamiltonian teleport_hamiltonian(const TeleportSpec& spec);

// U on the Bob qubits of an n-sector register.
Operator bob_rotation(const Operator& u, std::size_t n_sectors);

struct ParityOperators {
  Operator pi_z;  // product of ZZZ over sectors
  Operator pi_x;
  std::vector<Operator> sector_z;
  std::vector<Operator> sector_x;
};
ParityOperators parity_operators(std::size_t n_sectors);

struct ControlledSpec {
  std::size_t n_controls = 0;
  std::array<double, 3> axis{1.0, 0.0, 0.0};
  double phi = 0.0;
  double theta0 = 0.0;
  double tau = 1.0;
  std::optional<std::size_t> activation;  // default: all controls set
  double omega = 1.0;
};

// Throws InvalidArgument on a bad axis, theta0 or activation index.
void validate(const ControlledSpec& spec);
std::size_t activation_index(const ControlledSpec& spec);

// |n+> and |n->, eigenvectors of n.sigma for +1 and -1.
std::array<QState, 2> axis_states(const std::array<double, 3>& axis);

// P = |l><l| (x) |n-><n-| on the controls + target register.
Operator controlled_projector(const ControlledSpec& spec);

// 1 - P + e^{i phi} P: the map applied to the register on success.
Operator controlled_gate(const ControlledSpec& spec);

// -omega [cos(theta) Z + sin(theta)(cos(xi) X + sin(xi) Y)].
Operator ancilla_hamiltonian(double theta, double xi, double omega = 1.0);

// Controls, then target, then ancilla (last qubit).
TimeDepHamiltonian controlled_hamiltonian(const ControlledSpec& spec);

// max over the grid of ||P_k dH/ds P_0|| / gap_k0^2, P_0 the ground cluster.
// Throws VanishingGap if the ground cluster touches another level.
double adiabatic_time_estimate(const TimeDepHamiltonian& h, std::size_t grid = 201);

}  // namespace sal
