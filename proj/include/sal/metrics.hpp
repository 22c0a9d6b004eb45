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

#include <functional>
#include <span>
#include <vector>

#include "sal/counterdiabatic.hpp"
#include "sal/dynamics.hpp"

// Energy costs, the closed-system speed limit, and the probabilistic-gate
// cost optimiser. Energies in units of omega (hbar = 1).

namespace sal {

// Composite Simpson on a uniform grid over [0, 1]; needs an odd count >= 3.
double simpson(std::span<const double> values);

// integral_0^1 ||H(s)||_HS ds.
double energy_cost(const std::function<Operator(double)>& h, std::size_t grid = kDefaultGrid);

struct CostReport {
  double sigma_ad = 0.0;
  double sigma_sa = 0.0;
  double tau = 0.0;
  std::vector<double> s;
  std::vector<double> integrand_ad;
  std::vector<double> integrand_sa;
};

// integral sqrt(sum_m E_m^2 + mu_m / tau^2) with
// mu_m = <dE_m|dE_m> - |<E_m|dE_m>|^2, from the frame alone.
CostReport superadiabatic_cost(const SpectralFrame& frame, double tau);

// Closed forms.
// Single controlled-evolution gate: 2 omega sqrt(1 + (theta0 / (2 omega tau))^2).
double cost_single_gate(double theta0, double tau, double omega = 1.0);
// n control qubits: sqrt(2^n) times the single-gate cost.
double cost_controlled_gate(std::size_t n_controls, double theta0, double tau,
                            double omega = 1.0);
// Adiabatic limit of the same: sqrt(2^n) * 2 omega.
double cost_controlled_adiabatic(std::size_t n_controls, double omega = 1.0);
// One teleport sector from the 4x4 parity block: sqrt(2) Sigma_+.
double cost_teleport_single(double sigma_block);
// n sectors: sqrt(2^{3(n-1)} n) times the single-sector cost.
double cost_teleport(std::size_t n_sectors, double sigma_single);
// Sigma_+ by quadrature of the 4x4 block H_+ + H_CD^+ (tau <= 0: no CD).
double teleport_block_cost(const Schedule& schedule, double tau, double omega = 1.0,
                           std::size_t grid = kDefaultGrid);

struct QslReport {
  double tau = 0.0;
  double bures_angle = 0.0;
  double e_tau = 0.0;
  double bound = 0.0;
  bool satisfied = false;
  // Sub-bound along the parallel-transported trajectory:
  // chi = eta_2 + eta_3 >= |cos L - 1|.
  double chi = 0.0;
  double chi_bound = 0.0;
  bool chi_satisfied = false;
};

// Accumulates the speed-limit quantities step by step; usable as the
// evolve() observer so E_tau sees every propagation node.
class QslAccumulator {
 public:
  QslAccumulator(TimeDepHamiltonian h, QState psi0, double tau);
  void observe(double s, std::span<const Complex> psi);
  StepObserver observer();
  QslReport report() const;

 private:
  TimeDepHamiltonian h_;
  QState psi0_;
  double tau_;
  bool started_ = false;
  double prev_s_ = 0.0;
  double prev_integrand_ = 0.0;
  double e_integral_ = 0.0;
  CVector prev_phi_;
  Complex prev_c_ = 0.0;
  double eta2_ = 0.0;
  double eta3_ = 0.0;
  Complex last_c_ = 1.0;
};

// From stored samples (s ascending, states from evolve).
QslReport qsl_check(const TimeDepHamiltonian& h_sa, std::span<const double> s,
                    std::span<const QState> states, double tau);
QslReport qsl_check(const TimeDepHamiltonian& h_sa, const EvolutionResult& result);

enum class CostMode { kAdiabatic, kSuperadiabatic };

// Mean cost with repeat-until-success: csc^2(theta0/2) * Sigma(theta0[, tau]).
// Throws InvalidArgument for theta0 outside (0, pi] or tau <= 0.
double probabilistic_cost(double theta0, double tau, CostMode mode, double omega = 1.0);

// d/dtheta0 of the superadiabatic mean cost, closed form.
double probabilistic_cost_derivative(double theta0, double omega_tau);

// theta - (4 w^2 + theta^2) cot(theta / 2); zero at the optimum.
double stationarity_residual(double theta0, double omega_tau);

// Root of tan(theta/2) = theta on (0, pi): below it no critical point exists.
double feasibility_onset();

// Minimiser of the mean cost over (0, pi]. Adiabatic mode: exactly pi.
double theta_opt(double omega_tau, CostMode mode = CostMode::kSuperadiabatic);

}  // namespace sal
