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

#include "sal/hamiltonians.hpp"

namespace sal {

std::array<std::size_t, 3> sector_qubits(std::size_t k) {
  return {3 * k, 3 * k + 1, 3 * k + 2};
}

std::vector<std::size_t> data_qubits(std::size_t n_sectors) {
  std::vector<std::size_t> out;
  for (std::size_t k = 0; k < n_sectors; ++k) out.push_back(3 * k);
  return out;
}

std::vector<std::size_t> bob_qubits(std::size_t n_sectors) {
  std::vector<std::size_t> out;
  for (std::size_t k = 0; k < n_sectors; ++k) out.push_back(3 * k + 2);
  return out;
}

namespace {

Operator zz_plus_xx() {
  return kron(gates::Z(), gates::Z()) + kron(gates::X(), gates::X());
}

}  // namespace

Operator teleport_initial(double omega) {
  return -omega * kron(gates::identity(1), zz_plus_xx());
}

Operator teleport_final(double omega) {
  return -omega * kron(zz_plus_xx(), gates::identity(1));
}

Operator teleport_block(double a, double b, double omega) {
  Operator m(4, {a + b, a, 0.0, b,
                 a, a - b, b, 0.0,
                 0.0, b, -a - b, a,
                 b, 0.0, a, b - a});
  m *= -omega;
  m.tag_hermitian();
  return m;
}

std::vector<double> teleport_sector_levels(const Schedule& schedule, double s,
                                           double omega) {
  const double g = 2.0 * omega * schedule.chi(s);
  return {-g, -g, 0.0, 0.0, 0.0, 0.0, g, g};
}

TimeDepHamiltonian teleport_hamiltonian(const TeleportSpec& spec) {
  if (spec.n_sectors == 0) throw InvalidArgument("teleport needs at least one sector");
  const Operator h_ini = teleport_initial(spec.omega);
  const Operator h_fin = teleport_final(spec.omega);
  const Schedule sched = spec.schedule;
  std::vector<LocalTerm> terms;
  for (std::size_t k = 0; k < spec.n_sectors; ++k) {
    auto q = sector_qubits(k);
    terms.push_back(LocalTerm{
        {q.begin(), q.end()},
        [=](double s) {
          ScheduleValue v = sched(s);
          return v.eta_i * h_ini + v.eta_f * h_fin;
        },
        [=](double s) {
          ScheduleValue v = sched(s);
          return v.d_eta_i * h_ini + v.d_eta_f * h_fin;
        }});
  }
  TimeDepHamiltonian h(3 * spec.n_sectors, std::move(terms));
  const std::size_t n = spec.n_sectors;
  const double omega = spec.omega;
  h.set_spectrum([sched, n, omega](double s) {
    const std::vector<double> one = teleport_sector_levels(sched, s, omega);
    std::vector<double> all{0.0};
    for (std::size_t k = 0; k < n; ++k) {
      std::vector<double> next;
      next.reserve(all.size() * one.size());
      for (double x : all)
        for (double y : one) next.push_back(x + y);
      all = std::move(next);
    }
    std::sort(all.begin(), all.end());
    return all;
  });
  if (spec.gate) return h.rotated(bob_rotation(*spec.gate, spec.n_sectors));
  return h;
}

Operator bob_rotation(const Operator& u, std::size_t n_sectors) {
  if (u.dim() != (std::size_t{1} << n_sectors)) {
    throw DimensionMismatch("gate must act on " + std::to_string(n_sectors) +
                            " qubit(s)");
  }
  require_unitary(u, "gate");
  return embed(u, bob_qubits(n_sectors), 3 * n_sectors);
}

ParityOperators parity_operators(std::size_t n_sectors) {
  if (n_sectors == 0) throw InvalidArgument("parity_operators: no sectors");
  const std::size_t nq = 3 * n_sectors;
  const Operator zzz = kron({gates::Z(), gates::Z(), gates::Z()});
  const Operator xxx = kron({gates::X(), gates::X(), gates::X()});
  ParityOperators out{Operator::identity(std::size_t{1} << nq),
                      Operator::identity(std::size_t{1} << nq), {}, {}};
  for (std::size_t k = 0; k < n_sectors; ++k) {
    auto q = sector_qubits(k);
    out.sector_z.push_back(embed(zzz, q, nq));
    out.sector_x.push_back(embed(xxx, q, nq));
    out.pi_z = out.pi_z * out.sector_z.back();
    out.pi_x = out.pi_x * out.sector_x.back();
  }
  out.pi_z.tag_hermitian();
  out.pi_x.tag_hermitian();
  return out;
}

}  // namespace sal
