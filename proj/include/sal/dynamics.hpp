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

#include <cstdint>
#include <functional>
#include <optional>
#include <span>
#include <vector>

#include "sal/counterdiabatic.hpp"
#include "sal/hamiltonians.hpp"

// Integrates i d|psi>/dt = H(t/tau)|psi> on t in [0, tau] with midpoint
// exponential steps. Terms acting on disjoint qubit sets are propagated as
// independent local unitaries, which is exact because they commute.

namespace sal {

// Unitary of a completed (or partial) evolution, kept in factored form.
class Propagator {
 public:
  struct Factor {
    std::vector<std::size_t> qubits;
    Operator unitary;
  };

  Propagator() = default;
  Propagator(std::size_t num_qubits, std::vector<Factor> factors,
             std::optional<Operator> rotation);

  std::size_t num_qubits() const noexcept { return num_qubits_; }
  const std::vector<Factor>& factors() const noexcept { return factors_; }
  std::vector<Factor>& factors() noexcept { return factors_; }

  QState apply(const QState& psi) const;
  CVector apply(std::span<const Complex> psi) const;
  Operator dense() const;

 private:
  std::size_t num_qubits_ = 0;
  std::vector<Factor> factors_;
  std::optional<Operator> rotation_;
  std::optional<Operator> rotation_adj_;
};

// Called at every step node with the current state.
using StepObserver = std::function<void(double s, std::span<const Complex> psi)>;

struct EvolveOptions {
  std::size_t steps = 0;       // 0: max(2000, ceil(2000 ||H||_max tau))
  std::size_t samples = 101;   // trajectory points including both ends
  StepObserver observer;
  // Hamiltonian whose ground cluster the trajectory is compared against;
  // defaults to the evolved one (the base part for H_SA).
  const TimeDepHamiltonian* tracking = nullptr;
};

struct TrajectorySample {
  double s;
  double ground_fidelity;  // weight on the instantaneous ground cluster
  double norm;
};

struct EvolutionResult {
  QState final_state;
  std::vector<TrajectorySample> trajectory;
  std::vector<QState> states;  // state at each trajectory sample
  double tau = 0.0;
  std::size_t steps = 0;
};

// Spectral-norm bound used for automatic step counts.
double max_norm_estimate(const TimeDepHamiltonian& h, std::size_t samples = 101);
std::size_t auto_steps(const TimeDepHamiltonian& h, double tau);

// Throws DimensionMismatch, InvalidArgument (tau <= 0 or 0 < steps < 100).
EvolutionResult evolve(const TimeDepHamiltonian& h, const QState& psi0, double tau,
                       const EvolveOptions& options = {});
EvolutionResult evolve(const SuperadiabaticHamiltonian& h, const QState& psi0,
                       const EvolveOptions& options = {});

Propagator evolve_propagator(const TimeDepHamiltonian& h, double tau, std::size_t steps = 0);

// Weight of psi on the lowest eigenvalue cluster of h.
double ground_weight(const Operator& h, std::span<const Complex> psi);

struct MeasurementOutcome {
  int branch;                       // ancilla value
  double probability;
  std::optional<QState> post_state;  // empty when probability is ~0
};

// Projective measurement of the last qubit.
std::vector<MeasurementOutcome> measure_ancilla(const QState& joint);

// Initial states and analytic targets.
// Teleport: psi on the data qubits, Bell pairs on (A_k, B_k), gate on Bob.
QState teleport_initial_state(const QState& psi, const std::optional<Operator>& gate = {});
// Bell pairs on (data_k, A_k) and U psi on the Bob qubits.
QState teleport_target(const QState& psi, const std::optional<Operator>& gate = {});
// psi (x) |0> on the controlled register plus ancilla.
QState controlled_initial_state(const QState& psi);
// cos(theta0/2) psi|0> + sin(theta0/2) (1 - P + e^{i phi} P) psi |1>.
QState controlled_target(const ControlledSpec& spec, const QState& psi);

enum class Protocol { kTeleportState, kTeleportGate, kCae, kSce };

struct TargetInputs {
  QState psi;
  std::optional<Operator> gate;         // teleport_gate
  std::optional<ControlledSpec> spec;   // cae / sce
};

QState target_state(Protocol protocol, const TargetInputs& inputs);

// Haar-random n-qubit state from a seeded generator.
QState random_state(std::size_t num_qubits, std::uint64_t seed);

}  // namespace sal
