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

#include <algorithm>
#include <cmath>

#include "sal/counterdiabatic.hpp"

namespace sal {

namespace {

std::vector<std::size_t> all_qubits(std::size_t n) {
  std::vector<std::size_t> q(n);
  for (std::size_t i = 0; i < n; ++i) q[i] = i;
  return q;
}

}  // namespace

SuperadiabaticHamiltonian cd_generic(const TimeDepHamiltonian& h, double tau,
                                     std::size_t grid, const std::optional<BlockHint>& hint) {
  if (!(tau > 0.0)) throw InvalidArgument("tau must be positive");
  auto frame = std::make_shared<const SpectralFrame>(build_frame(h, grid, hint));
  auto gens = std::make_shared<std::vector<Operator>>();
  gens->reserve(grid);
  for (std::size_t j = 0; j < grid; ++j) gens->push_back(frame->generator(j));

  // Piecewise-linear in s between grid operators.
  auto value = [gens, tau, grid](double s) {
    const double x = std::clamp(s, 0.0, 1.0) * static_cast<double>(grid - 1);
    const std::size_t j = std::min(static_cast<std::size_t>(x), grid - 2);
    const double w = x - static_cast<double>(j);
    Operator g = (1.0 - w) * (*gens)[j];
    g.axpy(w, (*gens)[j + 1]);
    g *= 1.0 / tau;
    return g;
  };
  auto slope = [gens, tau, grid](double s) {
    const double x = std::clamp(s, 0.0, 1.0) * static_cast<double>(grid - 1);
    const std::size_t j = std::min(static_cast<std::size_t>(x), grid - 2);
    Operator g = (*gens)[j + 1] - (*gens)[j];
    g *= static_cast<double>(grid - 1) / tau;
    return g;
  };

  SuperadiabaticHamiltonian out;
  out.base = h;
  out.cd = TimeDepHamiltonian(h.num_qubits(), {LocalTerm{all_qubits(h.num_qubits()), value, slope}});
  out.tau = tau;
  out.grid = grid;
  out.frame_builder = [frame](std::size_t g) {
    if (g != frame->s.size()) throw GridMismatch("frame was built on a different grid");
    return frame;
  };
  return out;
}

SuperadiabaticHamiltonian cd_rotate(const SuperadiabaticHamiltonian& hsa, const Operator& g) {
  if (g.dim() != hsa.base.dim()) throw DimensionMismatch("cd_rotate: dimension");
  require_unitary(g, "cd_rotate");
  SuperadiabaticHamiltonian out = hsa;
  out.base = hsa.base.rotated(g);
  out.cd = hsa.cd.rotated(g);
  // Level data (energies, mu_m) are invariant under a constant unitary, so
  // the frame of the unrotated problem still serves cost integrals.
  return out;
}

SuperadiabaticHamiltonian cd_tensor_sum(std::span<const SuperadiabaticHamiltonian> blocks) {
  if (blocks.empty()) throw InvalidArgument("cd_tensor_sum: no blocks");
  const double tau = blocks.front().tau;
  std::size_t grid = 0;
  std::size_t total = 0;
  for (const auto& b : blocks) {
    if (std::abs(b.tau - tau) > 1e-12 * tau) throw GridMismatch("blocks disagree on tau");
    if (b.grid != 0) {
      if (grid != 0 && grid != b.grid) throw GridMismatch("blocks disagree on s-grid");
      grid = b.grid;
    }
    total += b.base.num_qubits();
  }
  if (blocks.size() == 1) return blocks.front();

  SuperadiabaticHamiltonian out;
  out.tau = tau;
  out.grid = grid;
  std::size_t offset = 0;
  bool first = true;
  std::vector<std::function<std::shared_ptr<const SpectralFrame>(std::size_t)>> builders;
  for (const auto& b : blocks) {
    std::vector<std::size_t> map(b.base.num_qubits());
    for (std::size_t q = 0; q < map.size(); ++q) map[q] = offset + q;
    offset += map.size();
    TimeDepHamiltonian base = b.base.embedded(map, total);
    TimeDepHamiltonian cd = b.cd.embedded(map, total);
    out.base = first ? base : out.base + base;
    out.cd = first ? cd : out.cd + cd;
    first = false;
    builders.push_back(b.frame_builder);
  }
  const bool have_frames = std::all_of(builders.begin(), builders.end(),
                                       [](const auto& f) { return static_cast<bool>(f); });
  if (have_frames) {
    out.frame_builder = [builders](std::size_t g) {
      auto composite = std::make_shared<SpectralFrame>();
      for (const auto& f : builders) {
        auto part = f(g);
        composite->dim = composite->dim == 0 ? part->dim : composite->dim * part->dim;
        if (!composite->s.empty() && composite->s.size() != part->s.size())
          throw GridMismatch("factor frames disagree on s-grid");
        if (composite->s.empty()) composite->s = part->s;
        composite->factors.push_back(std::move(part));
      }
      return std::shared_ptr<const SpectralFrame>(std::move(composite));
    };
  }
  return out;
}

Operator controlled_cd(const ControlledSpec& spec) {
  validate(spec);
  const Operator p = controlled_projector(spec);
  const Operator rest = Operator::identity(p.dim()) - p;
  Operator cd = kron(rest, gates::Y()) +
                kron(p, std::cos(spec.phi) * gates::Y() - std::sin(spec.phi) * gates::X());
  cd *= spec.theta0 / (2.0 * spec.tau);
  return cd;
}

namespace {

// Analytic eigenframe of the controlled Hamiltonian in the |k, n_mu> (x)
// ancilla basis; columns ordered block by block, (-omega, +omega) each.
std::shared_ptr<const SpectralFrame> controlled_frame(const ControlledSpec& spec,
                                                      std::size_t grid) {
  if (grid < 3) throw InvalidArgument("controlled frame: grid too small");
  const std::size_t nc = spec.n_controls;
  const std::size_t dim = std::size_t{1} << (nc + 2);
  const std::size_t ell = activation_index(spec);
  auto pm = axis_states(spec.axis);
  auto frame = std::make_shared<SpectralFrame>();
  frame->dim = dim;
  const double t0 = spec.theta0, w = spec.omega;
  for (std::size_t j = 0; j < grid; ++j) {
    const double s = static_cast<double>(j) / static_cast<double>(grid - 1);
    const double c = std::cos(0.5 * t0 * s), sn = std::sin(0.5 * t0 * s);
    Operator v(dim), d(dim);
    std::vector<double> e(dim);
    std::size_t col = 0;
    for (std::size_t k = 0; k < (std::size_t{1} << nc); ++k) {
      for (std::size_t mu = 0; mu < 2; ++mu) {
        const double xi = (k == ell && mu == 1) ? spec.phi : 0.0;
        const Complex ph = std::polar(1.0, xi);
        // Ground and excited ancilla states and their s-derivatives.
        const Complex g[2] = {c, ph * sn};
        const Complex dg[2] = {-0.5 * t0 * sn, 0.5 * t0 * ph * c};
        const Complex x[2] = {std::conj(ph) * sn, -c};
        const Complex dx[2] = {0.5 * t0 * std::conj(ph) * c, 0.5 * t0 * sn};
        for (std::size_t t = 0; t < 2; ++t)
          for (std::size_t a = 0; a < 2; ++a) {
            const std::size_t row = (k << 2) | (t << 1) | a;
            v(row, col) = pm[mu][t] * g[a];
            d(row, col) = pm[mu][t] * dg[a];
            v(row, col + 1) = pm[mu][t] * x[a];
            d(row, col + 1) = pm[mu][t] * dx[a];
          }
        e[col] = -w;
        e[col + 1] = w;
        col += 2;
      }
    }
    frame->s.push_back(s);
    frame->energies.push_back(std::move(e));
    frame->vectors.push_back(std::move(v));
    frame->derivatives.push_back(std::move(d));
  }
  for (std::size_t c = 0; c < dim; c += 2) frame->blocks.emplace_back(c, c + 2);
  return frame;
}

}  // namespace

SuperadiabaticHamiltonian cd_controlled(const ControlledSpec& spec) {
  validate(spec);
  SuperadiabaticHamiltonian out;
  out.base = controlled_hamiltonian(spec);
  out.cd = TimeDepHamiltonian::constant(controlled_cd(spec));
  out.tau = spec.tau;
  out.frame_builder = [spec](std::size_t g) { return controlled_frame(spec, g); };
  return out;
}

}  // namespace sal
