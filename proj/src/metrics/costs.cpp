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

#include "sal/metrics.hpp"

namespace sal {

double simpson(std::span<const double> values) {
  const std::size_t n = values.size();
  if (n < 3 || n % 2 == 0) throw InvalidArgument("simpson needs an odd number (>= 3) of nodes");
  const double h = 1.0 / static_cast<double>(n - 1);
  double acc = values.front() + values.back();
  for (std::size_t i = 1; i + 1 < n; ++i) acc += (i % 2 == 1 ? 4.0 : 2.0) * values[i];
  return acc * h / 3.0;
}

double energy_cost(const std::function<Operator(double)>& h, std::size_t grid) {
  if (grid < 101) throw InvalidArgument("energy_cost: grid must have at least 101 nodes");
  std::vector<double> f(grid);
  for (std::size_t j = 0; j < grid; ++j)
    f[j] = h(static_cast<double>(j) / static_cast<double>(grid - 1)).hs_norm();
  return simpson(f);
}

CostReport superadiabatic_cost(const SpectralFrame& frame, double tau) {
  if (!(tau > 0.0)) throw InvalidArgument("superadiabatic_cost: tau must be positive");
  CostReport r;
  r.tau = tau;
  r.s = frame.s;
  for (std::size_t j = 0; j < frame.s.size(); ++j) {
    const SpectralFrame::LevelSums ls = frame.level_sums(j);
    r.integrand_ad.push_back(std::sqrt(ls.sum_e2));
    r.integrand_sa.push_back(std::sqrt(ls.sum_e2 + ls.sum_mu / (tau * tau)));
  }
  r.sigma_ad = simpson(r.integrand_ad);
  r.sigma_sa = simpson(r.integrand_sa);
  return r;
}

double cost_single_gate(double theta0, double tau, double omega) {
  if (!(tau > 0.0)) throw InvalidArgument("tau must be positive");
  const double x = theta0 / (2.0 * omega * tau);
  return 2.0 * omega * std::sqrt(1.0 + x * x);
}

double cost_controlled_gate(std::size_t n_controls, double theta0, double tau, double omega) {
  return std::sqrt(std::ldexp(1.0, static_cast<int>(n_controls))) *
         cost_single_gate(theta0, tau, omega);
}

double cost_controlled_adiabatic(std::size_t n_controls, double omega) {
  return std::sqrt(std::ldexp(1.0, static_cast<int>(n_controls))) * 2.0 * omega;
}

double cost_teleport_single(double sigma_block) { return std::sqrt(2.0) * sigma_block; }

double cost_teleport(std::size_t n_sectors, double sigma_single) {
  if (n_sectors == 0) throw InvalidArgument("cost_teleport: no sectors");
  const double n = static_cast<double>(n_sectors);
  return std::sqrt(std::ldexp(1.0, 3 * static_cast<int>(n_sectors - 1)) * n) * sigma_single;
}

double teleport_block_cost(const Schedule& schedule, double tau, double omega,
                           std::size_t grid) {
  return energy_cost(
      [&](double s) {
        const ScheduleValue v = schedule(s);
        Operator block = teleport_block(v.eta_i, v.eta_f, omega);
        if (tau > 0.0) {
          const Operator g = teleport_cd_generator(schedule, s);
          for (std::size_t r = 0; r < 4; ++r)
            for (std::size_t c = 0; c < 4; ++c)
              block(r, c) += g(kParityPlus[r], kParityPlus[c]) / tau;
        }
        return block;
      },
      grid);
}

}  // namespace sal
