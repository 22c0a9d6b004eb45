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

#include "sal/dynamics.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <random>
#include <string>

namespace sal {

Propagator::Propagator(std::size_t num_qubits, std::vector<Factor> factors,
                       std::optional<Operator> rotation)
    : num_qubits_(num_qubits), factors_(std::move(factors)), rotation_(std::move(rotation)) {
  if (rotation_) rotation_adj_ = rotation_->adjoint();
}

CVector Propagator::apply(std::span<const Complex> psi) const {
  if (psi.size() != (std::size_t{1} << num_qubits_)) throw DimensionMismatch("propagator size");
  CVector out = rotation_adj_ ? matvec(*rotation_adj_, psi) : CVector(psi.begin(), psi.end());
  for (const Factor& f : factors_) apply_local(f.unitary, f.qubits, num_qubits_, out);
  if (rotation_) out = matvec(*rotation_, out);
  return out;
}

QState Propagator::apply(const QState& psi) const {
  return QState::normalized(psi.num_qubits(), apply(psi.amps()));
}

Operator Propagator::dense() const {
  Operator u = Operator::identity(std::size_t{1} << num_qubits_);
  for (const Factor& f : factors_) u = embed(f.unitary, f.qubits, num_qubits_) * u;
  if (rotation_) u = *rotation_ * u * *rotation_adj_;
  return u;
}

namespace {

struct ClusterPlan {
  std::vector<std::size_t> qubits;  // ascending
  std::vector<std::size_t> terms;
  std::vector<std::vector<std::size_t>> local_qubits;  // per term, positions in cluster
};

std::vector<ClusterPlan> plan_clusters(const TimeDepHamiltonian& h) {
  const std::size_t n = h.num_qubits();
  std::vector<std::size_t> parent(n);
  std::iota(parent.begin(), parent.end(), 0);
  auto find = [&](std::size_t x) {
    while (parent[x] != x) x = parent[x] = parent[parent[x]];
    return x;
  };
  std::vector<bool> used(n, false);
  for (const LocalTerm& t : h.terms()) {
    for (std::size_t q : t.qubits) used[q] = true;
    for (std::size_t i = 1; i < t.qubits.size(); ++i)
      parent[find(t.qubits[i])] = find(t.qubits[0]);
  }
  std::vector<ClusterPlan> plans;
  std::vector<long> slot(n, -1);
  for (std::size_t q = 0; q < n; ++q) {
    if (!used[q]) continue;
    const std::size_t root = find(q);
    if (slot[root] < 0) {
      slot[root] = static_cast<long>(plans.size());
      plans.emplace_back();
    }
    plans[slot[root]].qubits.push_back(q);
  }
  for (std::size_t k = 0; k < h.terms().size(); ++k) {
    const LocalTerm& t = h.terms()[k];
    if (t.qubits.empty()) continue;
    ClusterPlan& p = plans[slot[find(t.qubits[0])]];
    p.terms.push_back(k);
    std::vector<std::size_t> local;
    for (std::size_t q : t.qubits)
      local.push_back(static_cast<std::size_t>(
          std::find(p.qubits.begin(), p.qubits.end(), q) - p.qubits.begin()));
    p.local_qubits.push_back(std::move(local));
  }
  return plans;
}

Operator cluster_hamiltonian(const TimeDepHamiltonian& h, const ClusterPlan& p, double s) {
  Operator out(std::size_t{1} << p.qubits.size());
  out.tag_hermitian();
  for (std::size_t i = 0; i < p.terms.size(); ++i) {
    Operator local = h.terms()[p.terms[i]].value(s);
    if (!local.hermitian()) throw NotHermitian("LocalTerm returned untagged operator");
    accumulate_embedded(out, local, p.local_qubits[i], p.qubits.size());
  }
  return out;
}

// Advances all cluster unitaries step by step and reports every node.
template <class OnNode>
Propagator run(const TimeDepHamiltonian& h, double tau, std::size_t steps, OnNode on_node) {
  const std::vector<ClusterPlan> plans = plan_clusters(h);
  std::vector<Propagator::Factor> factors;
  for (const ClusterPlan& p : plans)
    factors.push_back({p.qubits, Operator::identity(std::size_t{1} << p.qubits.size())});
  Propagator prop(h.num_qubits(), std::move(factors), h.rotation());
  const double dt = tau / static_cast<double>(steps);
  on_node(std::size_t{0}, prop);
  for (std::size_t j = 0; j < steps; ++j) {
    const double mid = (static_cast<double>(j) + 0.5) / static_cast<double>(steps);
    for (std::size_t c = 0; c < plans.size(); ++c) {
      Operator step = expm_hermitian(cluster_hamiltonian(h, plans[c], mid), dt);
      prop.factors()[c].unitary = step * prop.factors()[c].unitary;
    }
    on_node(j + 1, prop);
  }
  return prop;
}

void check_evolve_args(double tau, std::size_t steps) {
  if (!(tau > 0.0) || !std::isfinite(tau)) throw InvalidArgument("tau must be positive");
  if (steps != 0 && steps < 100) throw InvalidArgument("steps must be at least 100");
}

}  // namespace

double max_norm_estimate(const TimeDepHamiltonian& h, std::size_t samples) {
  if (samples < 2) samples = 2;
  double total = 0.0;
  for (const ClusterPlan& p : plan_clusters(h)) {
    double best = 0.0;
    for (std::size_t j = 0; j < samples; ++j) {
      const double s = static_cast<double>(j) / static_cast<double>(samples - 1);
      best = std::max(best, spectral_norm(cluster_hamiltonian(h, p, s)));
    }
    total += best;
  }
  return total;
}

std::size_t auto_steps(const TimeDepHamiltonian& h, double tau) {
  const double want = std::ceil(2000.0 * max_norm_estimate(h) * tau);
  return std::max<std::size_t>(2000, static_cast<std::size_t>(want));
}

double ground_weight(const Operator& h, std::span<const Complex> psi) {
  EigenSystem es = eigh(h);
  const double scale = std::max(1.0, std::max(std::abs(es.values.front()),
                                              std::abs(es.values.back())));
  double weight = 0.0;
  for (std::size_t k = 0; k < es.values.size(); ++k) {
    if (es.values[k] - es.values[0] > 1e-8 * scale) break;
    Complex amp = 0.0;
    for (std::size_t r = 0; r < psi.size(); ++r) amp += std::conj(es.vectors(r, k)) * psi[r];
    weight += std::norm(amp);
  }
  return weight;
}

EvolutionResult evolve(const TimeDepHamiltonian& h, const QState& psi0, double tau,
                       const EvolveOptions& options) {
  if (psi0.dim() != h.dim()) {
    throw DimensionMismatch("state has dimension " + std::to_string(psi0.dim()) +
                            ", Hamiltonian " + std::to_string(h.dim()));
  }
  check_evolve_args(tau, options.steps);
  const std::size_t steps = options.steps != 0 ? options.steps : auto_steps(h, tau);
  const std::size_t samples = std::clamp<std::size_t>(options.samples, 2, steps + 1);
  const TimeDepHamiltonian& tracking = options.tracking ? *options.tracking : h;

  EvolutionResult result;
  result.tau = tau;
  result.steps = steps;
  std::size_t next_sample = 0;
  auto node_of = [&](std::size_t k) {
    return static_cast<std::size_t>(std::llround(static_cast<double>(k) *
                                                 static_cast<double>(steps) /
                                                 static_cast<double>(samples - 1)));
  };
  run(h, tau, steps, [&](std::size_t j, const Propagator& prop) {
    const bool sample = next_sample < samples && node_of(next_sample) == j;
    if (!sample && !options.observer) return;
    const double s = static_cast<double>(j) / static_cast<double>(steps);
    CVector psi = prop.apply(psi0.amps());
    if (options.observer) options.observer(s, psi);
    if (sample) {
      const double nrm = norm(psi);
      result.trajectory.push_back({s, ground_weight(tracking(s), psi), nrm});
      result.states.push_back(QState::normalized(psi0.num_qubits(), std::move(psi)));
      ++next_sample;
    }
  });
  result.final_state = result.states.back();
  return result;
}

EvolutionResult evolve(const SuperadiabaticHamiltonian& h, const QState& psi0,
                       const EvolveOptions& options) {
  EvolveOptions opts = options;
  if (!opts.tracking) opts.tracking = &h.base;
  return evolve(h.total(), psi0, h.tau, opts);
}

Propagator evolve_propagator(const TimeDepHamiltonian& h, double tau, std::size_t steps) {
  check_evolve_args(tau, steps);
  if (steps == 0) steps = auto_steps(h, tau);
  return run(h, tau, steps, [](std::size_t, const Propagator&) {});
}

std::vector<MeasurementOutcome> measure_ancilla(const QState& joint) {
  if (joint.num_qubits() < 2) throw DimensionMismatch("measure_ancilla needs a register and an ancilla");
  const std::size_t half = joint.dim() / 2;
  std::vector<MeasurementOutcome> out;
  for (int branch = 0; branch < 2; ++branch) {
    CVector post(half);
    double p = 0.0;
    for (std::size_t i = 0; i < half; ++i) {
      post[i] = joint[2 * i + static_cast<std::size_t>(branch)];
      p += std::norm(post[i]);
    }
    MeasurementOutcome m{branch, p, std::nullopt};
    if (p > 1e-14) m.post_state = QState::normalized(joint.num_qubits() - 1, std::move(post));
    out.push_back(std::move(m));
  }
  return out;
}

namespace {

std::vector<Placement> bell_pairs(std::size_t n, std::size_t first_offset, const QState& bell) {
  std::vector<Placement> out;
  for (std::size_t k = 0; k < n; ++k)
    out.push_back({&bell, {3 * k + first_offset, 3 * k + first_offset + 1}});
  return out;
}

}  // namespace

QState teleport_initial_state(const QState& psi, const std::optional<Operator>& gate) {
  const std::size_t n = psi.num_qubits();
  const QState bell = bell_state(0, 0);
  std::vector<Placement> parts = bell_pairs(n, 1, bell);
  parts.push_back({&psi, data_qubits(n)});
  QState joint = compose(3 * n, parts);
  if (!gate) return joint;
  return QState::normalized(3 * n, matvec(bob_rotation(*gate, n), joint.amps()));
}

QState teleport_target(const QState& psi, const std::optional<Operator>& gate) {
  const std::size_t n = psi.num_qubits();
  const QState bell = bell_state(0, 0);
  QState moved = psi;
  if (gate) {
    if (gate->dim() != psi.dim()) throw DimensionMismatch("gate does not match the input state");
    moved = QState::normalized(n, matvec(*gate, psi.amps()));
  }
  std::vector<Placement> parts = bell_pairs(n, 0, bell);
  parts.push_back({&moved, bob_qubits(n)});
  return compose(3 * n, parts);
}

QState controlled_initial_state(const QState& psi) {
  return kron(psi, QState::basis(1, 0));
}

QState controlled_target(const ControlledSpec& spec, const QState& psi) {
  validate(spec);
  if (psi.num_qubits() != spec.n_controls + 1) {
    throw DimensionMismatch("input must cover the controls and the target");
  }
  const CVector rod = matvec(controlled_gate(spec), psi.amps());
  const double c = std::cos(0.5 * spec.theta0), sn = std::sin(0.5 * spec.theta0);
  CVector out(2 * psi.dim());
  for (std::size_t i = 0; i < psi.dim(); ++i) {
    out[2 * i] = c * psi[i];
    out[2 * i + 1] = sn * rod[i];
  }
  return QState::normalized(psi.num_qubits() + 1, std::move(out));
}

QState target_state(Protocol protocol, const TargetInputs& inputs) {
  switch (protocol) {
    case Protocol::kTeleportState:
      return teleport_target(inputs.psi);
    case Protocol::kTeleportGate:
      if (!inputs.gate) throw InvalidArgument("teleport_gate target needs a gate");
      return teleport_target(inputs.psi, inputs.gate);
    case Protocol::kCae:
    case Protocol::kSce:
      if (!inputs.spec) throw InvalidArgument("controlled target needs a ControlledSpec");
      return controlled_target(*inputs.spec, inputs.psi);
  }
  throw InvalidArgument("unknown protocol");
}

QState random_state(std::size_t num_qubits, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> gauss(0.0, 1.0);
  CVector amps(std::size_t{1} << num_qubits);
  for (Complex& a : amps) {
    const double re = gauss(rng);
    a = {re, gauss(rng)};
  }
  return QState::normalized(num_qubits, std::move(amps));
}

}  // namespace sal
