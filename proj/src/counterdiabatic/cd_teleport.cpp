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
#include <string>

#include "sal/counterdiabatic.hpp"

namespace sal {

namespace {

// Forward-mode dual number: value and s-derivative.
struct Dual {
  double v;
  double d;
};

Dual operator+(Dual a, Dual b) { return {a.v + b.v, a.d + b.d}; }
Dual operator-(Dual a, Dual b) { return {a.v - b.v, a.d - b.d}; }
Dual operator-(Dual a) { return {-a.v, -a.d}; }
Dual operator*(Dual a, Dual b) { return {a.v * b.v, a.d * b.v + a.v * b.d}; }
Dual operator*(double k, Dual a) { return {k * a.v, k * a.d}; }
Dual operator/(Dual a, Dual b) {
  return {a.v / b.v, (a.d * b.v - a.v * b.d) / (b.v * b.v)};
}
Dual sqrt(Dual a) {
  const double r = std::sqrt(a.v);
  return {r, 0.5 * a.d / r};
}

using Vec4 = std::array<Dual, 4>;

Dual dot(const Vec4& x, const Vec4& y) {
  Dual acc{0.0, 0.0};
  for (int i = 0; i < 4; ++i) acc = acc + x[i] * y[i];
  return acc;
}

Vec4 normalize(const Vec4& x) {
  const Dual n = sqrt(dot(x, x));
  return {x[0] / n, x[1] / n, x[2] / n, x[3] / n};
}

Dual checked(Dual den, double s) {
  if (!(den.v > 1e-14)) {
    throw SingularSchedule("eigenvector family singular at s = " + std::to_string(s));
  }
  return den;
}

// Orthonormal block eigenvectors ordered (-2chi, 0, 0, +2chi), the textbook
// family rescaled to stay finite at eta_i = 0 or eta_f = 0. The zero pair is
// the constant (-1,1,1,1)/2 and its complement inside the E1, E2 span.
std::array<Vec4, 4> block_frame(Dual a, Dual b, double s) {
  const Dual c = sqrt(a * a + b * b);
  const Dual cb = checked(c + b, s);
  const Dual ca = checked(a + c, s);
  const Dual abc = checked(a + b + c, s);
  checked(c, s);
  const Vec4 ground{a + c, a * (c + a) / cb, a * b / cb, b};
  const Vec4 top{-(a * b / ca), (c + b - a) * (c + b) / abc, -(b + c), a};
  const Dual half{0.5, 0.0};
  const Vec4 flat{-half, half, half, half};
  const Dual two_c = 2.0 * c;
  const Vec4 slope{(a - b) / two_c, -(a + b) / two_c, (a - b) / two_c, (a + b) / two_c};
  return {normalize(ground), flat, normalize(slope), normalize(top)};
}

}  // namespace

TeleportFrameSample teleport_frame_sample(const Schedule& schedule, double s, double omega) {
  const ScheduleValue sv = schedule(s);
  const std::array<Vec4, 4> f = block_frame({sv.eta_i, sv.d_eta_i}, {sv.eta_f, sv.d_eta_f}, s);
  const double g = 2.0 * omega * std::hypot(sv.eta_i, sv.eta_f);
  TeleportFrameSample out{{-g, 0.0, 0.0, g}, Operator(8), Operator(8)};
  for (std::size_t n = 0; n < 4; ++n)
    for (std::size_t r = 0; r < 4; ++r) {
      out.vectors(kParityPlus[r], n) = f[n][r].v;
      out.derivatives(kParityPlus[r], n) = f[n][r].d;
      out.vectors(kParityMinus[r], 4 + n) = f[n][r].v;
      out.derivatives(kParityMinus[r], 4 + n) = f[n][r].d;
    }
  return out;
}

Operator teleport_cd_generator(const Schedule& schedule, double s) {
  TeleportFrameSample f = teleport_frame_sample(schedule, s);
  // Real orthonormal frame: <E|dE> = 0, so G = i dV V^T.
  Operator g = f.derivatives * f.vectors.adjoint();
  g *= kI;
  return hermitian_part(g);
}

namespace {

std::shared_ptr<const SpectralFrame> teleport_frame(const Schedule& schedule, double omega,
                                                    std::size_t grid) {
  if (grid < 3) throw InvalidArgument("teleport frame: grid too small");
  auto frame = std::make_shared<SpectralFrame>();
  frame->dim = 8;
  frame->blocks = {{0, 4}, {4, 8}};
  for (std::size_t j = 0; j < grid; ++j) {
    const double s = static_cast<double>(j) / static_cast<double>(grid - 1);
    TeleportFrameSample f = teleport_frame_sample(schedule, s, omega);
    frame->s.push_back(s);
    std::vector<double> e(8);
    for (std::size_t n = 0; n < 4; ++n) e[n] = e[4 + n] = f.energies[n];
    frame->energies.push_back(std::move(e));
    frame->vectors.push_back(std::move(f.vectors));
    frame->derivatives.push_back(std::move(f.derivatives));
  }
  return frame;
}

}  // namespace

SuperadiabaticHamiltonian cd_teleport_block(const Schedule& schedule, double tau,
                                            double omega) {
  if (!(tau > 0.0)) throw InvalidArgument("tau must be positive");
  // Probe the family once over a fine grid so singular schedules fail early.
  for (int j = 0; j <= 100; ++j) teleport_frame_sample(schedule, j / 100.0, omega);
  SuperadiabaticHamiltonian out;
  out.base = teleport_hamiltonian(TeleportSpec{1, schedule, std::nullopt, omega});
  out.cd = TimeDepHamiltonian(
      3, {LocalTerm{{0, 1, 2},
                    [schedule, tau](double s) { return (1.0 / tau) * teleport_cd_generator(schedule, s); },
                    {}}});
  out.tau = tau;
  out.frame_builder = [schedule, omega](std::size_t g) { return teleport_frame(schedule, omega, g); };
  return out;
}

SuperadiabaticHamiltonian teleport_superadiabatic(const TeleportSpec& spec, double tau,
                                                  CdMethod method, std::size_t grid) {
  if (spec.n_sectors == 0) throw InvalidArgument("teleport needs at least one sector");
  SuperadiabaticHamiltonian one =
      method == CdMethod::kAnalytic
          ? cd_teleport_block(spec.schedule, tau, spec.omega)
          : cd_generic(teleport_hamiltonian(TeleportSpec{1, spec.schedule, std::nullopt, spec.omega}),
                       tau, grid, teleport_block_hint());
  std::vector<SuperadiabaticHamiltonian> blocks(spec.n_sectors, one);
  SuperadiabaticHamiltonian out = cd_tensor_sum(blocks);
  if (spec.n_sectors > 1) {
    // Keep the closed-form spectrum available on the joint Hamiltonian.
    TimeDepHamiltonian reference = teleport_hamiltonian(
        TeleportSpec{spec.n_sectors, spec.schedule, std::nullopt, spec.omega});
    out.base.set_spectrum([reference](double s) { return *reference.spectrum(s); });
  }
  if (spec.gate) out = cd_rotate(out, bob_rotation(*spec.gate, spec.n_sectors));
  return out;
}

}  // namespace sal
