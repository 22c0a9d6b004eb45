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
#include <string>

#include "sal/hamiltonians.hpp"

namespace sal {

TimeDepHamiltonian::TimeDepHamiltonian(std::size_t num_qubits,
                                       std::vector<LocalTerm> terms)
    : num_qubits_(num_qubits), terms_(std::move(terms)) {
  for (const LocalTerm& t : terms_) {
    if (!t.value) throw InvalidArgument("LocalTerm without evaluator");
    for (std::size_t q : t.qubits)
      if (q >= num_qubits_) throw InvalidArgument("LocalTerm qubit out of range");
  }
}

TimeDepHamiltonian TimeDepHamiltonian::constant(const Operator& h) {
  if (!h.hermitian()) throw NotHermitian("constant Hamiltonian must be Hermitian");
  const std::size_t n = log2_exact(h.dim());
  std::vector<std::size_t> all(n);
  for (std::size_t q = 0; q < n; ++q) all[q] = q;
  Operator zero = Operator(h.dim());
  zero.tag_hermitian();
  return TimeDepHamiltonian(
      n, {LocalTerm{all, [h](double) { return h; }, [zero](double) { return zero; }}});
}

Operator TimeDepHamiltonian::unrotated(double s) const {
  Operator out(dim());
  out.tag_hermitian();
  for (const LocalTerm& t : terms_) {
    Operator local = t.value(s);
    if (!local.hermitian()) throw NotHermitian("LocalTerm returned untagged operator");
    accumulate_embedded(out, local, t.qubits, num_qubits_);
  }
  return out;
}

Operator TimeDepHamiltonian::operator()(double s) const {
  Operator h = unrotated(s);
  return rotation_ ? conjugate(*rotation_, h) : h;
}

bool TimeDepHamiltonian::has_derivative() const noexcept {
  return std::all_of(terms_.begin(), terms_.end(),
                     [](const LocalTerm& t) { return static_cast<bool>(t.ds); });
}

Operator TimeDepHamiltonian::derivative(double s) const {
  if (!has_derivative()) throw InvalidArgument("no analytic derivative available");
  Operator out(dim());
  out.tag_hermitian();
  for (const LocalTerm& t : terms_) {
    Operator local = t.ds(s);
    local.tag_hermitian();
    accumulate_embedded(out, local, t.qubits, num_qubits_);
  }
  return rotation_ ? conjugate(*rotation_, out) : out;
}

CVector TimeDepHamiltonian::apply(double s, std::span<const Complex> x) const {
  if (x.size() != dim()) throw DimensionMismatch("apply: vector size");
  CVector in(x.begin(), x.end());
  if (rotation_) in = matvec(rotation_->adjoint(), in);
  CVector out(dim());
  for (const LocalTerm& t : terms_) {
    CVector part = in;
    apply_local(t.value(s), t.qubits, num_qubits_, part);
    for (std::size_t i = 0; i < dim(); ++i) out[i] += part[i];
  }
  if (rotation_) out = matvec(*rotation_, out);
  return out;
}

void TimeDepHamiltonian::set_spectrum(
    std::function<std::vector<double>(double)> spectrum) {
  spectrum_ = std::move(spectrum);
}

std::optional<std::vector<double>> TimeDepHamiltonian::spectrum(double s) const {
  if (!spectrum_) return std::nullopt;
  return spectrum_(s);
}

TimeDepHamiltonian TimeDepHamiltonian::rotated(const Operator& g) const {
  if (g.dim() != dim()) throw DimensionMismatch("rotation dimension");
  require_unitary(g, "rotation");
  TimeDepHamiltonian out = *this;
  out.rotation_ = rotation_ ? g * *rotation_ : g;
  return out;
}

TimeDepHamiltonian TimeDepHamiltonian::embedded(std::span<const std::size_t> map,
                                                std::size_t num_qubits) const {
  if (map.size() != num_qubits_) throw DimensionMismatch("embedding map size");
  TimeDepHamiltonian out;
  out.num_qubits_ = num_qubits;
  for (LocalTerm t : terms_) {
    for (std::size_t& q : t.qubits) q = map[q];
    out.terms_.push_back(std::move(t));
  }
  for (std::size_t q : map)
    if (q >= num_qubits) throw InvalidArgument("embedding target out of range");
  if (rotation_) out.rotation_ = embed(*rotation_, map, num_qubits);
  return out;
}

TimeDepHamiltonian operator+(const TimeDepHamiltonian& a, const TimeDepHamiltonian& b) {
  if (a.num_qubits_ != b.num_qubits_) throw DimensionMismatch("Hamiltonian sum");
  const bool same_frame =
      (!a.rotation_ && !b.rotation_) ||
      (a.rotation_ && b.rotation_ && max_abs_diff(*a.rotation_, *b.rotation_) == 0.0);
  TimeDepHamiltonian out;
  out.num_qubits_ = a.num_qubits_;
  if (same_frame) {
    out.terms_ = a.terms_;
    out.terms_.insert(out.terms_.end(), b.terms_.begin(), b.terms_.end());
    out.rotation_ = a.rotation_;
    return out;
  }
  // Different frames: fall back to one dense term on the whole register.
  std::vector<std::size_t> all(a.num_qubits_);
  for (std::size_t q = 0; q < all.size(); ++q) all[q] = q;
  LocalTerm dense{all, [a, b](double s) { return a(s) + b(s); }, {}};
  if (a.has_derivative() && b.has_derivative())
    dense.ds = [a, b](double s) { return a.derivative(s) + b.derivative(s); };
  out.terms_.push_back(std::move(dense));
  return out;
}

}  // namespace sal

namespace sal {

double adiabatic_time_estimate(const TimeDepHamiltonian& h, std::size_t grid) {
  if (grid < 2) throw InvalidArgument("adiabatic_time_estimate: grid too small");
  double best = 0.0;
  for (std::size_t j = 0; j < grid; ++j) {
    const double s = static_cast<double>(j) / static_cast<double>(grid - 1);
    EigenSystem es = eigh(h(s));
    Operator dh;
    if (h.has_derivative()) {
      dh = h.derivative(s);
    } else {
      const double step = 1e-5;
      const double lo = std::max(0.0, s - step), hi = std::min(1.0, s + step);
      dh = (1.0 / (hi - lo)) * (h(hi) - h(lo));
    }
    const double scale = std::max(1.0, std::max(std::abs(es.values.front()),
                                                std::abs(es.values.back())));
    const double tol = 1e-8 * scale;
    const std::size_t d = es.values.size();
    std::size_t g0 = 1;
    while (g0 < d && es.values[g0] - es.values[0] <= tol) ++g0;
    if (g0 == d) continue;  // fully degenerate: nothing to track against
    // Columns dH |E_0k> for the ground cluster.
    Operator v_adj = es.vectors.adjoint();
    Operator m = v_adj * dh * es.vectors;  // dH in the eigenbasis
    std::size_t k = g0;
    while (k < d) {
      std::size_t end = k + 1;
      while (end < d && es.values[end] - es.values[k] <= tol) ++end;
      const double gap = es.values[k] - es.values[0];
      if (gap <= 1e-9 * scale) throw VanishingGap("gap closes at s = " + std::to_string(s));
      // Spectral norm of the (end-k) x g0 block via its Gram matrix.
      const std::size_t rows = end - k;
      Operator gram(g0);
      for (std::size_t a = 0; a < g0; ++a)
        for (std::size_t b = 0; b < g0; ++b) {
          Complex acc = 0.0;
          for (std::size_t r = 0; r < rows; ++r) acc += std::conj(m(k + r, a)) * m(k + r, b);
          gram(a, b) = acc;
        }
      const double norm2 = spectral_norm(hermitian_part(gram));
      best = std::max(best, std::sqrt(norm2) / (gap * gap));
      k = end;
    }
  }
  return best;
}

}  // namespace sal
