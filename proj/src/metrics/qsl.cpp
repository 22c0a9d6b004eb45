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
#include <limits>

#include "sal/metrics.hpp"

namespace sal {

QslAccumulator::QslAccumulator(TimeDepHamiltonian h, QState psi0, double tau)
    : h_(std::move(h)), psi0_(std::move(psi0)), tau_(tau) {
  if (psi0_.dim() != h_.dim()) throw DimensionMismatch("qsl: state and Hamiltonian differ");
  if (!(tau_ > 0.0)) throw InvalidArgument("qsl: tau must be positive");
}

void QslAccumulator::observe(double s, std::span<const Complex> psi) {
  const double integrand = std::abs(inner(psi0_.amps(), h_.apply(s, psi)));
  CVector phi(psi.begin(), psi.end());
  if (started_) {
    if (s < prev_s_) throw InvalidArgument("qsl: samples must be ordered in s");
    e_integral_ += 0.5 * (s - prev_s_) * (integrand + prev_integrand_);
    // Rephase so consecutive states overlap real-positively.
    const Complex ov = inner(prev_phi_, phi);
    if (std::abs(ov) > 0.0) {
      const Complex ph = std::conj(ov) / std::abs(ov);
      for (Complex& z : phi) z *= ph;
    }
    const Complex c = inner(psi0_.amps(), phi);
    eta2_ += std::abs(c - prev_c_);
    eta3_ += std::abs(std::abs(ov) - 1.0) * std::abs(prev_c_);
    prev_c_ = c;
  } else {
    prev_c_ = inner(psi0_.amps(), phi);
    started_ = true;
  }
  last_c_ = prev_c_;
  prev_s_ = s;
  prev_integrand_ = integrand;
  prev_phi_ = std::move(phi);
}

StepObserver QslAccumulator::observer() {
  return [this](double s, std::span<const Complex> psi) { observe(s, psi); };
}

QslReport QslAccumulator::report() const {
  QslReport r;
  r.tau = tau_;
  const double overlap = std::min(1.0, std::abs(last_c_));
  r.bures_angle = std::acos(overlap);
  r.e_tau = e_integral_;
  const double distance = std::abs(overlap - 1.0);
  if (r.e_tau > 0.0) {
    r.bound = distance / r.e_tau;
  } else {
    r.bound = distance > 0.0 ? std::numeric_limits<double>::infinity() : 0.0;
  }
  r.satisfied = tau_ >= r.bound - 1e-9;
  r.chi = eta2_ + eta3_;
  r.chi_bound = distance;
  r.chi_satisfied = r.chi >= r.chi_bound - 1e-6;
  return r;
}

QslReport qsl_check(const TimeDepHamiltonian& h_sa, std::span<const double> s,
                    std::span<const QState> states, double tau) {
  if (s.size() != states.size() || s.empty()) throw InvalidArgument("qsl: empty or ragged trajectory");
  QslAccumulator acc(h_sa, states.front(), tau);
  for (std::size_t j = 0; j < s.size(); ++j) acc.observe(s[j], states[j].amps());
  return acc.report();
}

QslReport qsl_check(const TimeDepHamiltonian& h_sa, const EvolutionResult& result) {
  std::vector<double> s;
  for (const TrajectorySample& t : result.trajectory) s.push_back(t.s);
  return qsl_check(h_sa, s, result.states, result.tau);
}

}  // namespace sal
