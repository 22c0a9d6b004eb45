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

#include "sal/counterdiabatic.hpp"

using namespace sal;

namespace {

const ScheduleFamily kFamilies[] = {ScheduleFamily::kLinear, ScheduleFamily::kTrig,
                                    ScheduleFamily::kExp};

// Independent reference: (i/2) sum_n [dP_n, P_n] over eigenvalue clusters,
// with dP_n from central differences of the projectors.
std::vector<Operator> cluster_projectors(const Operator& h) {
  const EigenSystem es = eigh(h);
  std::vector<Operator> out;
  const std::size_t d = h.dim();
  for (std::size_t i = 0; i < d;) {
    std::size_t j = i;
    while (j < d && std::abs(es.values[j] - es.values[i]) < 1e-8) ++j;
    Operator p(d);
    for (std::size_t k = i; k < j; ++k)
      for (std::size_t r = 0; r < d; ++r)
        for (std::size_t c = 0; c < d; ++c)
          p(r, c) += es.vectors(r, k) * std::conj(es.vectors(c, k));
    out.push_back(p);
    i = j;
  }
  return out;
}

Operator projector_generator(const TimeDepHamiltonian& h, double s) {
  const double e = 1e-5;
  const auto p = cluster_projectors(h(s)), pp = cluster_projectors(h(s + e)),
             pm = cluster_projectors(h(s - e));
  Operator g(h.dim());
  for (std::size_t n = 0; n < p.size(); ++n) {
    const Operator dp = (1.0 / (2 * e)) * (pp[n] - pm[n]);
    g.axpy(Complex(0, 0.5), commutator(dp, p[n]));
  }
  return g;
}

double diagonal_nullity(const SpectralFrame& f, std::size_t j, const Operator& cd) {
  double worst = 0.0;
  for (std::size_t n = 0; n < f.dim; ++n) {
    Complex v = 0.0;
    for (std::size_t r = 0; r < f.dim; ++r)
      for (std::size_t c = 0; c < f.dim; ++c)
        v += std::conj(f.vectors[j](r, n)) * cd(r, c) * f.vectors[j](c, n);
    worst = std::max(worst, std::abs(v));
  }
  return worst;
}

}  // namespace

TEST_CASE("analytic teleport CD matches the projector generator") {
  for (auto fam : kFamilies) {
    const Schedule sch(fam);
    CAPTURE(sch.name());
    const TimeDepHamiltonian h = teleport_hamiltonian({1, sch, {}, 1.0});
    for (double s : {0.05, 0.3, 0.5, 0.77, 0.95})
      CHECK(max_abs_diff(teleport_cd_generator(sch, s), projector_generator(h, s)) < 1e-6);
  }
}

TEST_CASE("analytic frame is orthonormal and diagonalises H") {
  const Schedule sch(ScheduleFamily::kExp);
  for (double s : {0.0, 0.4, 1.0}) {
    const TeleportFrameSample f = teleport_frame_sample(sch, s, 1.0);
    const Operator v = f.vectors;
    CHECK(is_unitary(v, 1e-12));
    const Operator d = v.adjoint() * teleport_hamiltonian({1, sch, {}, 1.0})(s) * v;
    for (std::size_t r = 0; r < 8; ++r)
      for (std::size_t c = 0; c < 8; ++c)
        if (r != c) CHECK(std::abs(d(r, c)) < 1e-12);
    CHECK(d(0, 0).real() == doctest::Approx(-2 * sch.chi(s)));
  }
}

TEST_CASE("structural identities of H_CD") {
  for (auto fam : kFamilies) {
    const Schedule sch(fam);
    CAPTURE(sch.name());
    const SuperadiabaticHamiltonian sa = cd_teleport_block(sch, 0.5);
    const auto frame = sa.frame(201);
    const ParityOperators par = parity_operators(1);
    for (std::size_t j : {std::size_t{0}, std::size_t{57}, std::size_t{100}, std::size_t{200}}) {
      const double s = frame->s[j];
      const Operator cd = sa.cd(s), h = sa.base(s);
      CHECK(diagonal_nullity(*frame, j, cd) <= 1e-8);
      CHECK(std::abs(anticommutator(h, cd).trace()) <= 1e-8);
      CHECK(commutator(cd, par.pi_z).max_abs() <= 1e-9);
      CHECK(commutator(cd, par.pi_x).max_abs() <= 1e-9);
    }
  }
}

TEST_CASE("generic CD agrees with the analytic teleport CD") {
  for (auto fam : kFamilies) {
    const Schedule sch(fam);
    CAPTURE(sch.name());
    const TimeDepHamiltonian h = teleport_hamiltonian({1, sch, {}, 1.0});
    const SuperadiabaticHamiltonian gen = cd_generic(h, 0.5, kDefaultGrid, teleport_block_hint());
    const SuperadiabaticHamiltonian ana = cd_teleport_block(sch, 0.5);
    double worst = 0.0;
    for (int i = 0; i <= 40; ++i) {
      const double s = i / 40.0;
      worst = std::max(worst, max_abs_diff(gen.cd(s), ana.cd(s)));
    }
    CHECK(worst <= 1e-6);
  }
}

TEST_CASE("generic and closed-form CD agree for the controlled Hamiltonian") {
  for (std::size_t nc : {0u, 1u}) {
    ControlledSpec spec;
    spec.n_controls = nc;
    const double len = std::sqrt(0.98);
    spec.axis = {0.3 / len, -0.5 / len, 0.8 / len};
    spec.phi = 1.1;
    spec.theta0 = 2.0;
    spec.tau = 0.7;
    const TimeDepHamiltonian h = controlled_hamiltonian(spec);
    const SuperadiabaticHamiltonian gen =
        cd_generic(h, spec.tau, kDefaultGrid, controlled_block_hint(spec));
    const SuperadiabaticHamiltonian cf = cd_controlled(spec);
    double worst = 0.0;
    for (double s : {0.0, 0.2, 0.5, 0.81, 1.0}) {
      worst = std::max(worst, max_abs_diff(gen.cd(s), controlled_cd(spec)));
      worst = std::max(worst, max_abs_diff(cf.cd(s), controlled_cd(spec)));
    }
    CHECK(worst <= 1e-6);
  }
}

TEST_CASE("single-qubit rotation: generic CD is theta0/(2 tau) Y") {
  const double theta0 = 1.3, tau = 2.0;
  LocalTerm t{{0},
              [=](double s) {
                Operator h = -std::cos(theta0 * s) * gates::Z() - std::sin(theta0 * s) * gates::X();
                h.tag_hermitian();
                return h;
              },
              {}};
  const TimeDepHamiltonian h(1, {t});
  const SuperadiabaticHamiltonian sa = cd_generic(h, tau);
  for (double s : {0.0, 0.5, 1.0})
    CHECK(max_abs_diff(sa.cd(s), (theta0 / (2 * tau)) * gates::Y()) < 1e-6);
}

TEST_CASE("rotated and unrotated H_SA share a spectrum") {
  for (const char* g : {"X", "Z", "H", "T"}) {
    CAPTURE(g);
    const SuperadiabaticHamiltonian a =
        teleport_superadiabatic({1, Schedule(), std::nullopt, 1.0}, 0.5);
    const SuperadiabaticHamiltonian b =
        teleport_superadiabatic({1, Schedule(), gates::by_name(g), 1.0}, 0.5);
    for (double s : {0.0, 0.33, 0.5, 1.0}) {
      const auto ea = eigh(a(s)).values, eb = eigh(b(s)).values;
      for (std::size_t k = 0; k < ea.size(); ++k) CHECK(std::abs(ea[k] - eb[k]) <= 1e-10);
    }
  }
  const SuperadiabaticHamiltonian a = teleport_superadiabatic({2, Schedule(), std::nullopt, 1.0}, 0.5);
  const SuperadiabaticHamiltonian b = teleport_superadiabatic({2, Schedule(), gates::CNOT(), 1.0}, 0.5);
  const auto ea = eigh(a(0.4)).values, eb = eigh(b(0.4)).values;
  for (std::size_t k = 0; k < ea.size(); ++k) CHECK(std::abs(ea[k] - eb[k]) <= 1e-10);
}

TEST_CASE("tensor sum places blocks on consecutive qubits") {
  const SuperadiabaticHamiltonian one = cd_teleport_block(Schedule(), 1.0);
  const std::vector<SuperadiabaticHamiltonian> parts{one, one};
  const SuperadiabaticHamiltonian two = cd_tensor_sum(parts);
  CHECK(two.base.num_qubits() == 6);
  const Operator id = Operator::identity(8);
  const Operator expect = kron(one.cd(0.3), id) + kron(id, one.cd(0.3));
  CHECK(max_abs_diff(two.cd(0.3), expect) < 1e-14);
}

TEST_CASE("frame construction error paths") {
  const TimeDepHamiltonian h = teleport_hamiltonian({1, Schedule(), {}, 1.0});
  CHECK_THROWS_AS(build_frame(h, 201), DegenerateSpectrum);
  CHECK_THROWS_AS(build_frame(h, 2, teleport_block_hint()), InvalidArgument);
  CHECK_THROWS_AS(cd_teleport_block(Schedule(), 0.0), InvalidArgument);
  const SuperadiabaticHamiltonian bare{h, h, 1.0, 0, {}};
  CHECK_THROWS_AS(bare.frame(), InvalidArgument);
}
