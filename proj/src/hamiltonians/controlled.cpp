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
#include <string>

#include "sal/hamiltonians.hpp"

namespace sal {

void validate(const ControlledSpec& spec) {
  const auto& a = spec.axis;
  const double len = std::sqrt(a[0] * a[0] + a[1] * a[1] + a[2] * a[2]);
  if (!(std::abs(len - 1.0) <= 1e-9)) {
    throw InvalidArgument("axis must be a unit vector, norm is " + std::to_string(len));
  }
  if (!(spec.theta0 > 0.0 && spec.theta0 <= std::numbers::pi)) {
    throw InvalidArgument("theta0 must lie in (0, pi]");
  }
  if (!(spec.tau > 0.0)) throw InvalidArgument("tau must be positive");
  if (spec.n_controls > 16) throw InvalidArgument("too many controls");
  if (spec.activation && *spec.activation >= (std::size_t{1} << spec.n_controls)) {
    throw InvalidArgument("activation index " + std::to_string(*spec.activation) +
                          " outside the control register");
  }
}

std::size_t activation_index(const ControlledSpec& spec) {
  return spec.activation.value_or((std::size_t{1} << spec.n_controls) - 1);
}

namespace {

Operator n_dot_sigma(const std::array<double, 3>& n) {
  return n[0] * gates::X() + n[1] * gates::Y() + n[2] * gates::Z();
}

}  // namespace

std::array<QState, 2> axis_states(const std::array<double, 3>& axis) {
  EigenSystem es = eigh(n_dot_sigma(axis));
  auto column = [&](std::size_t c) {
    CVector v{es.vectors(0, c), es.vectors(1, c)};
    // Fix the phase so the first nonzero amplitude is real positive.
    const Complex lead = std::abs(v[0]) > 1e-12 ? v[0] : v[1];
    const Complex ph = std::conj(lead) / std::abs(lead);
    for (Complex& z : v) z *= ph;
    return QState::normalized(1, std::move(v));
  };
  return {column(1), column(0)};
}

Operator controlled_projector(const ControlledSpec& spec) {
  validate(spec);
  const std::size_t nc = spec.n_controls;
  Operator minus = 0.5 * (Operator::identity(2) - n_dot_sigma(spec.axis));
  Operator sel(std::size_t{1} << nc);
  sel(activation_index(spec), activation_index(spec)) = 1.0;
  sel.tag_hermitian();
  return kron(sel, minus);
}

Operator controlled_gate(const ControlledSpec& spec) {
  Operator p = controlled_projector(spec);
  Operator out = Operator::identity(p.dim()) - p;
  out.axpy(std::polar(1.0, spec.phi), p);
  return out;
}

Operator ancilla_hamiltonian(double theta, double xi, double omega) {
  Operator h = std::cos(theta) * gates::Z() +
               std::sin(theta) * (std::cos(xi) * gates::X() + std::sin(xi) * gates::Y());
  return -omega * h;
}

TimeDepHamiltonian controlled_hamiltonian(const ControlledSpec& spec) {
  validate(spec);
  const std::size_t nq = spec.n_controls + 2;
  const Operator p = controlled_projector(spec);
  const Operator rest = Operator::identity(p.dim()) - p;
  const double w = spec.omega;
  // H(s) = cos(theta) A + sin(theta) B.
  const Operator a = -w * kron(Operator::identity(p.dim()), gates::Z());
  const Operator b =
      -w * (kron(rest, gates::X()) +
            kron(p, std::cos(spec.phi) * gates::X() + std::sin(spec.phi) * gates::Y()));
  const double t0 = spec.theta0;
  std::vector<std::size_t> all(nq);
  for (std::size_t q = 0; q < nq; ++q) all[q] = q;
  TimeDepHamiltonian h(
      nq, {LocalTerm{all,
                     [=](double s) {
                       return std::cos(t0 * s) * a + std::sin(t0 * s) * b;
                     },
                     [=](double s) {
                       return (-t0 * std::sin(t0 * s)) * a + (t0 * std::cos(t0 * s)) * b;
                     }}});
  const std::size_t half = std::size_t{1} << (nq - 1);
  h.set_spectrum([half, w](double) {
    std::vector<double> v(2 * half, w);
    for (std::size_t i = 0; i < half; ++i) v[i] = -w;
    return v;
  });
  return h;
}

}  // namespace sal
