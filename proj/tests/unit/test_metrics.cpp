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

#include "sal/metrics.hpp"

using namespace sal;
using std::numbers::pi;

namespace {

// Reference values from adaptive quadrature / root finding in an
// independent implementation (30-digit arithmetic for the roots).
constexpr double kSigmaAdLinear = 3.2464504802804606;  // 4 int chi ds
constexpr double kSigmaAdExp = 2.80950263766697;
constexpr double kSigmaSaLinearTau1 = 4.573092090774365;
constexpr double kSigmaSaTrigTau1 = 5.086217090823369;
constexpr double kSigmaSaExpTau05 = 7.084726959206657;
constexpr double kOnset = 2.33112237041442261;
constexpr double kThetaOpt01 = 2.33873771420509999;
constexpr double kThetaOpt1 = 2.67069495577813096;
constexpr double kThetaOpt10 = 3.12633412700463815;

std::vector<double> log_taus(double lo, double hi, int count) {
  std::vector<double> out;
  for (int i = 0; i < count; ++i) out.push_back(lo * std::pow(hi / lo, i / double(count - 1)));
  return out;
}

}  // namespace

TEST_CASE("simpson integrates cubics exactly") {
  std::vector<double> v;
  for (int i = 0; i <= 10; ++i) {
    const double s = i / 10.0;
    v.push_back(4 * s * s * s - s + 2);
  }
  CHECK(simpson(v) == doctest::Approx(2.5).epsilon(1e-14));
  CHECK_THROWS_AS(simpson(std::vector<double>{1.0, 2.0}), InvalidArgument);
}

TEST_CASE("teleport costs against reference quadrature") {
  const auto cost_sa = [](ScheduleFamily f, double tau) {
    const SuperadiabaticHamiltonian sa = cd_teleport_block(Schedule(f), tau);
    return energy_cost([&](double s) { return sa(s); });
  };
  const auto cost_ad = [](ScheduleFamily f) {
    const TimeDepHamiltonian h = teleport_hamiltonian({1, Schedule(f), {}, 1.0});
    return energy_cost([&](double s) { return h(s); });
  };
  CHECK(cost_ad(ScheduleFamily::kLinear) == doctest::Approx(kSigmaAdLinear).epsilon(1e-9));
  CHECK(cost_ad(ScheduleFamily::kExp) == doctest::Approx(kSigmaAdExp).epsilon(1e-9));
  CHECK(cost_ad(ScheduleFamily::kTrig) == doctest::Approx(4.0).epsilon(1e-12));
  CHECK(cost_sa(ScheduleFamily::kLinear, 1.0) == doctest::Approx(kSigmaSaLinearTau1).epsilon(1e-7));
  CHECK(cost_sa(ScheduleFamily::kTrig, 1.0) == doctest::Approx(kSigmaSaTrigTau1).epsilon(1e-7));
  CHECK(cost_sa(ScheduleFamily::kExp, 0.5) == doctest::Approx(kSigmaSaExpTau05).epsilon(1e-7));
  // Block route: sqrt(2) Sigma_+.
  CHECK(cost_teleport_single(teleport_block_cost(Schedule(), 1.0)) ==
        doctest::Approx(kSigmaSaLinearTau1).epsilon(1e-7));
  CHECK(cost_teleport_single(teleport_block_cost(Schedule(ScheduleFamily::kExp), 0.0)) ==
        doctest::Approx(kSigmaAdExp).epsilon(1e-9));
}

TEST_CASE("frame-based cost equals the dense quadrature") {
  const SuperadiabaticHamiltonian sa =
      teleport_superadiabatic({2, Schedule(ScheduleFamily::kTrig), std::nullopt, 1.0}, 0.8);
  const CostReport rep = superadiabatic_cost(*sa.frame(), 0.8);
  CHECK(rep.sigma_sa == doctest::Approx(energy_cost([&](double s) { return sa(s); })).epsilon(1e-9));
  CHECK(rep.sigma_ad == doctest::Approx(energy_cost([&](double s) { return sa.base(s); })).epsilon(1e-9));
  CHECK(rep.integrand_sa.size() == rep.s.size());
}

TEST_CASE("single-gate closed form over omega tau in [0.1, 100]") {
  for (double tau : log_taus(0.1, 100.0, 9)) {
    CAPTURE(tau);
    ControlledSpec spec;
    spec.theta0 = pi;
    spec.tau = tau;
    const SuperadiabaticHamiltonian sa = cd_controlled(spec);
    const double num = energy_cost([&](double s) { return sa(s); });
    CHECK(std::abs(num - cost_single_gate(pi, tau)) / cost_single_gate(pi, tau) <= 1e-6);
  }
  CHECK(cost_single_gate(pi, 1.0) == doctest::Approx(2.0 * std::sqrt(1.0 + pi * pi / 4.0)));
}

TEST_CASE("cost scaling with register size") {
  for (std::size_t n = 1; n <= 3; ++n) {
    ControlledSpec spec;
    spec.n_controls = n;
    spec.theta0 = pi / 2;
    spec.tau = 0.5;
    const SuperadiabaticHamiltonian sa = cd_controlled(spec);
    const double num = energy_cost([&](double s) { return sa(s); });
    const double ratio = num / cost_single_gate(pi / 2, 0.5);
    CHECK(ratio == doctest::Approx(std::sqrt(std::pow(2.0, double(n)))).epsilon(1e-6));
    CHECK(cost_controlled_adiabatic(n) == doctest::Approx(std::sqrt(std::pow(2.0, double(n))) * 2.0));
  }
  const double one = 1.7;
  CHECK(cost_teleport(2, one) / cost_teleport(1, one) == doctest::Approx(4.0).epsilon(1e-12));
  CHECK(cost_teleport(3, one) / cost_teleport(1, one) ==
        doctest::Approx(8.0 * std::sqrt(3.0)).epsilon(1e-12));
  // Dense check of the two-sector teleport scaling.
  const SuperadiabaticHamiltonian two =
      teleport_superadiabatic({2, Schedule(), std::nullopt, 1.0}, 1.0);
  const double dense2 = energy_cost([&](double s) { return two(s); });
  CHECK(dense2 / kSigmaSaLinearTau1 == doctest::Approx(4.0).epsilon(1e-6));
}

TEST_CASE("superadiabatic cost exceeds adiabatic and converges to it") {
  for (double tau : log_taus(0.1, 1e3, 6)) {
    CAPTURE(tau);
    for (auto f : {ScheduleFamily::kLinear, ScheduleFamily::kExp}) {
      CHECK(teleport_block_cost(Schedule(f), tau) > teleport_block_cost(Schedule(f), 0.0));
    }
    CHECK(cost_single_gate(pi, tau) > cost_controlled_adiabatic(0));
  }
  const double far = teleport_block_cost(Schedule(), 1e4) / teleport_block_cost(Schedule(), 0.0);
  CHECK(std::abs(far - 1.0) <= 1e-4);
  CHECK(std::abs(cost_single_gate(pi, 1e4) / 2.0 - 1.0) <= 1e-4);
}

TEST_CASE("speed limit holds along superadiabatic runs") {
  for (double tau : {0.1, 1.0, 10.0}) {
    CAPTURE(tau);
    const SuperadiabaticHamiltonian sa =
        teleport_superadiabatic({1, Schedule(ScheduleFamily::kExp), std::nullopt, 1.0}, tau);
    const TimeDepHamiltonian h = sa.total();
    const QState psi0 = teleport_initial_state(random_state(1, 12));
    QslAccumulator acc(h, psi0, tau);
    const EvolutionResult r = evolve(h, psi0, tau, {.observer = acc.observer()});
    const QslReport rep = acc.report();
    CHECK(rep.satisfied);
    CHECK(rep.tau >= rep.bound - 1e-9);
    CHECK(rep.chi_satisfied);
    CHECK(rep.chi >= std::abs(std::cos(rep.bures_angle) - 1.0) - 1e-6);
    CHECK(rep.bures_angle == doctest::Approx(std::acos(std::sqrt(fidelity(psi0, r.final_state)))));
    // Stored-sample variant sees fewer nodes but the same angle.
    const QslReport coarse = qsl_check(h, r);
    CHECK(coarse.bures_angle == doctest::Approx(rep.bures_angle));
  }
}

TEST_CASE("stationarity and optimal theta") {
  CHECK(feasibility_onset() == doctest::Approx(kOnset).epsilon(1e-14));
  CHECK(theta_opt(0.1) == doctest::Approx(kThetaOpt01).epsilon(1e-13));
  CHECK(theta_opt(1.0) == doctest::Approx(kThetaOpt1).epsilon(1e-13));
  CHECK(theta_opt(10.0) == doctest::Approx(kThetaOpt10).epsilon(1e-13));
  double prev = 0.0;
  for (double w : log_taus(0.01, 1000.0, 40)) {
    CAPTURE(w);
    const double t = theta_opt(w);
    CHECK(std::abs(stationarity_residual(t, w)) <= 1e-5);
    CHECK(std::tan(t / 2) >= t);
    CHECK(t > prev);
    CHECK(t < pi);
    prev = t;
    CHECK(theta_opt(w, CostMode::kAdiabatic) == pi);
  }
  CHECK(pi - theta_opt(1000.0) < 1e-5);
}

TEST_CASE("mean cost derivative and minimum") {
  for (double w : {0.3, 2.0}) {
    for (double t : {1.0, 2.5, 3.0}) {
      const double e = 1e-6;
      const double fd = (probabilistic_cost(t + e, w, CostMode::kSuperadiabatic) -
                         probabilistic_cost(t - e, w, CostMode::kSuperadiabatic)) /
                        (2 * e);
      CHECK(probabilistic_cost_derivative(t, w) == doctest::Approx(fd).epsilon(1e-6));
    }
    const double t = theta_opt(w);
    const double c = probabilistic_cost(t, w, CostMode::kSuperadiabatic);
    for (double d : {-0.05, 0.05})
      if (t + d <= pi) CHECK(probabilistic_cost(t + d, w, CostMode::kSuperadiabatic) > c);
  }
  for (double t : {0.5, 2.0, 3.0})
    CHECK(probabilistic_cost(t, 1.0, CostMode::kAdiabatic) >
          probabilistic_cost(pi, 1.0, CostMode::kAdiabatic));
  CHECK_THROWS_AS(probabilistic_cost(0.0, 1.0, CostMode::kSuperadiabatic), InvalidArgument);
  CHECK_THROWS_AS(theta_opt(0.0), InvalidArgument);
}
