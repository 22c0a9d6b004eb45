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

#include "sal/metrics.hpp"

namespace sal {

using std::numbers::pi;

namespace {

void check_theta(double theta0) {
  if (!(theta0 > 0.0 && theta0 <= pi)) {
    throw InvalidArgument("theta0 must lie in (0, pi]; theta0 = 0 never succeeds");
  }
}

double csc2_half(double theta0) {
  const double sn = std::sin(0.5 * theta0);
  return 1.0 / (sn * sn);
}

}  // namespace

double probabilistic_cost(double theta0, double tau, CostMode mode, double omega) {
  check_theta(theta0);
  if (mode == CostMode::kAdiabatic) return csc2_half(theta0) * 2.0 * omega;
  if (!(tau > 0.0)) throw InvalidArgument("tau must be positive");
  return csc2_half(theta0) * cost_single_gate(theta0, tau, omega);
}

double stationarity_residual(double theta0, double omega_tau) {
  const double w2 = omega_tau * omega_tau;
  return theta0 - (4.0 * w2 + theta0 * theta0) / std::tan(0.5 * theta0);
}

double probabilistic_cost_derivative(double theta0, double omega_tau) {
  check_theta(theta0);
  const double w = omega_tau;
  const double root = std::sqrt(1.0 + theta0 * theta0 / (4.0 * w * w));
  return csc2_half(theta0) / (2.0 * w * w * root) * stationarity_residual(theta0, w);
}

double feasibility_onset() {
  // tan(x/2) - x changes sign once on (0, pi); scan then bisect.
  auto f = [](double x) { return std::tan(0.5 * x) - x; };
  double lo = 1e-4;
  double hi = lo;
  while (hi < pi && f(hi) < 0.0) {
    lo = hi;
    hi += 1e-4;
  }
  for (int it = 0; it < 200 && hi - lo > 0.0; ++it) {
    const double mid = 0.5 * (lo + hi);
    if (mid <= lo || mid >= hi) break;
    (f(mid) < 0.0 ? lo : hi) = mid;
  }
  return hi;
}

double theta_opt(double omega_tau, CostMode mode) {
  if (!(omega_tau > 0.0)) throw InvalidArgument("omega_tau must be positive");
  if (mode == CostMode::kAdiabatic) return pi;
  // residual(onset) = -4 w^2 / onset < 0 and residual(pi) = pi > 0.
  double lo = feasibility_onset();
  double hi = pi;
  for (int it = 0; it < 200; ++it) {
    const double mid = 0.5 * (lo + hi);
    if (mid <= lo || mid >= hi) break;
    (stationarity_residual(mid, omega_tau) < 0.0 ? lo : hi) = mid;
  }
  // Return whichever end of the final bracket has the smaller residual.
  return std::abs(stationarity_residual(lo, omega_tau)) <
                 std::abs(stationarity_residual(hi, omega_tau))
             ? lo
             : hi;
}

}  // namespace sal
