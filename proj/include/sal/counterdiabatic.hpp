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
#include <memory>
#include <optional>
#include <span>
#include <utility>
#include <vector>

#include "sal/hamiltonians.hpp"

// Counter-diabatic terms. Every construction returns H_CD(s) = G(s) / tau with
// G(s) = i sum_n (|dE_n><E_n| - <E_n|dE_n> |E_n><E_n|) built from a smooth
// orthonormal eigenframe; derivatives are with respect to s = t / tau.

namespace sal {

inline constexpr std::size_t kDefaultGrid = 2001;

// Eigenframe sampled on a uniform s grid. Columns of vectors[j] are the
// eigenvectors at s[j]; derivatives[j] holds their s-derivatives.
// A composite frame (tensor sum of independent blocks) stores only factors.
struct SpectralFrame {
  std::size_t dim = 0;
  std::vector<double> s;
  std::vector<std::vector<double>> energies;
  std::vector<Operator> vectors;
  std::vector<Operator> derivatives;
  // Column ranges [first, second) of the blocks the frame was built from.
  std::vector<std::pair<std::size_t, std::size_t>> blocks;
  std::vector<std::shared_ptr<const SpectralFrame>> factors;

  bool composite() const noexcept { return !factors.empty(); }

  struct LevelSums {
    double sum_e2;  // sum_m E_m^2
    double sum_mu;  // sum_m <dE|dE> - |<E|dE>|^2
    double trace;   // sum_m E_m
  };
  LevelSums level_sums(std::size_t j) const;

  // G(s_j), Hermitian. Not available for composite frames.
  Operator generator(std::size_t j) const;
};

// Splits the problem into independent blocks: block b is spanned by the
// columns blocks[b] of `basis` (identity when absent).
struct BlockHint {
  std::optional<Operator> basis;
  std::vector<std::vector<std::size_t>> blocks;
};

// Parity blocks of one teleport sector.
BlockHint teleport_block_hint();
// 2x2 blocks |k, n_mu> (x) ancilla of the controlled Hamiltonian.
BlockHint controlled_block_hint(const ControlledSpec& spec);

// Numeric frame: eigh per grid point (per block), cluster-wise polar
// alignment to the previous point, central-difference derivatives.
// Throws DegenerateSpectrum (degenerate and no hint), GaugeFixFailure.
SpectralFrame build_frame(const TimeDepHamiltonian& h, std::size_t grid = kDefaultGrid,
                          const std::optional<BlockHint>& hint = std::nullopt);

struct SuperadiabaticHamiltonian {
  TimeDepHamiltonian base;
  TimeDepHamiltonian cd;
  double tau = 1.0;
  // 0 for constructions exact at every s, else the grid the CD was built on.
  std::size_t grid = 0;
  // Builds the eigenframe used for cost integrals.
  std::function<std::shared_ptr<const SpectralFrame>(std::size_t)> frame_builder;

  TimeDepHamiltonian total() const { return base + cd; }
  Operator operator()(double s) const { return base(s) + cd(s); }
  // Throws InvalidArgument when no frame is available.
  std::shared_ptr<const SpectralFrame> frame(std::size_t grid = kDefaultGrid) const;
};

SuperadiabaticHamiltonian cd_generic(const TimeDepHamiltonian& h, double tau,
                                     std::size_t grid = kDefaultGrid,
                                     const std::optional<BlockHint>& hint = std::nullopt);

// Analytic eigenframe of one teleport sector on (data, A, B), parity-block
// ordered: columns 0..3 live on the + block, 4..7 on the - block, each block
// ordered (-2 chi, 0, 0, 2 chi) omega. Exact derivatives.
struct TeleportFrameSample {
  std::array<double, 4> energies;
  Operator vectors;      // 8x8
  Operator derivatives;  // 8x8
};
TeleportFrameSample teleport_frame_sample(const Schedule& schedule, double s,
                                          double omega = 1.0);

// G(s) of one sector (8x8) built from that frame; H_CD = G / tau.
Operator teleport_cd_generator(const Schedule& schedule, double s);

// Single sector H + H_CD with the CD built from the analytic frame.
// Throws SingularSchedule if the schedule leaves the positive quadrant.
SuperadiabaticHamiltonian cd_teleport_block(const Schedule& schedule, double tau,
                                            double omega = 1.0);

// G H_SA G^dagger.
SuperadiabaticHamiltonian cd_rotate(const SuperadiabaticHamiltonian& hsa,
                                    const Operator& g);

// Blocks placed on consecutive qubit ranges in the given order.
SuperadiabaticHamiltonian cd_tensor_sum(std::span<const SuperadiabaticHamiltonian> blocks);

// theta0/(2 tau) [(1-P) (x) Y + P (x) (cos(phi) Y - sin(phi) X)].
Operator controlled_cd(const ControlledSpec& spec);
SuperadiabaticHamiltonian cd_controlled(const ControlledSpec& spec);

enum class CdMethod { kAnalytic, kGeneric };

// n-sector teleport H_SA: per-sector blocks, tensor sum, then the optional
// gate rotation on the Bob qubits.
SuperadiabaticHamiltonian teleport_superadiabatic(const TeleportSpec& spec, double tau,
                                                  CdMethod method = CdMethod::kAnalytic,
                                                  std::size_t grid = kDefaultGrid);

}  // namespace sal
