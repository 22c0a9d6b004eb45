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

#include "sal/kernels.hpp"
#include "sal/linalg.hpp"

namespace sal {

Operator::Operator(std::size_t dim) : dim_(dim), data_(dim * dim) {}

Operator::Operator(std::size_t dim, std::initializer_list<Complex> values)
    : dim_(dim), data_(values) {
  if (data_.size() != dim * dim) {
    throw DimensionMismatch("Operator: expected " + std::to_string(dim * dim) +
                            " values, got " + std::to_string(data_.size()));
  }
}

Operator Operator::identity(std::size_t dim) {
  Operator out(dim);
  for (std::size_t i = 0; i < dim; ++i) out(i, i) = 1.0;
  out.hermitian_ = true;
  return out;
}

Operator Operator::diagonal(std::span<const double> values) {
  Operator out(values.size());
  for (std::size_t i = 0; i < values.size(); ++i) out(i, i) = values[i];
  out.hermitian_ = true;
  return out;
}

Operator& Operator::tag_hermitian(double tol) {
  double scale = std::max(1.0, max_abs());
  for (std::size_t r = 0; r < dim_; ++r) {
    for (std::size_t c = r; c < dim_; ++c) {
      if (std::abs((*this)(r, c) - std::conj((*this)(c, r))) > tol * scale) {
        throw NotHermitian("operator is not Hermitian at (" + std::to_string(r) +
                           ", " + std::to_string(c) + ")");
      }
    }
  }
  hermitian_ = true;
  return *this;
}

Operator Operator::adjoint() const {
  Operator out(dim_);
  for (std::size_t r = 0; r < dim_; ++r)
    for (std::size_t c = 0; c < dim_; ++c) out(c, r) = std::conj((*this)(r, c));
  out.hermitian_ = hermitian_;
  return out;
}

Complex Operator::trace() const {
  Complex t = 0.0;
  for (std::size_t i = 0; i < dim_; ++i) t += (*this)(i, i);
  return t;
}

double Operator::hs_norm() const {
  return std::sqrt(kernels::active().dznrm2sq(data_.size(), data_.data()));
}

double Operator::max_abs() const {
  double m = 0.0;
  for (const Complex& z : data_) m = std::max(m, std::abs(z));
  return m;
}

std::vector<double> Operator::column_norms() const {
  std::vector<double> out(dim_, 0.0);
  for (std::size_t r = 0; r < dim_; ++r)
    for (std::size_t c = 0; c < dim_; ++c) out[c] += std::norm((*this)(r, c));
  for (double& v : out) v = std::sqrt(v);
  return out;
}

Operator& Operator::operator+=(const Operator& other) {
  return axpy(1.0, other);
}

Operator& Operator::operator-=(const Operator& other) {
  return axpy(-1.0, other);
}

Operator& Operator::operator*=(double scale) {
  for (Complex& z : data_) z *= scale;
  return *this;
}

Operator& Operator::operator*=(Complex scale) {
  for (Complex& z : data_) z *= scale;
  if (scale.imag() != 0.0) hermitian_ = false;
  return *this;
}

Operator& Operator::axpy(Complex alpha, const Operator& x) {
  if (x.dim_ != dim_) {
    throw DimensionMismatch("operator sum: " + std::to_string(dim_) + " vs " +
                            std::to_string(x.dim_));
  }
  kernels::active().zaxpy(data_.size(), alpha, x.data_.data(), data_.data());
  hermitian_ = hermitian_ && x.hermitian_ && alpha.imag() == 0.0;
  return *this;
}

Operator operator+(Operator a, const Operator& b) { return a += b; }
Operator operator-(Operator a, const Operator& b) { return a -= b; }

Operator operator*(const Operator& a, const Operator& b) {
  if (a.dim() != b.dim()) {
    throw DimensionMismatch("operator product: " + std::to_string(a.dim()) +
                            " vs " + std::to_string(b.dim()));
  }
  Operator out(a.dim());
  kernels::active().zgemm(a.dim(), a.dim(), a.dim(), a.data().data(),
                          b.data().data(), out.data().data());
  return out;
}

Operator operator*(double s, Operator a) { return a *= s; }
Operator operator*(Complex s, Operator a) { return a *= s; }

Operator commutator(const Operator& a, const Operator& b) {
  return a * b - b * a;
}

Operator anticommutator(const Operator& a, const Operator& b) {
  return a * b + b * a;
}

Operator hermitian_part(const Operator& a) {
  Operator out(a.dim());
  for (std::size_t r = 0; r < a.dim(); ++r) {
    for (std::size_t c = r; c < a.dim(); ++c) {
      Complex v = 0.5 * (a(r, c) + std::conj(a(c, r)));
      out(r, c) = v;
      out(c, r) = std::conj(v);
    }
    out(r, r) = out(r, r).real();
  }
  out.tag_hermitian();
  return out;
}

Operator conjugate(const Operator& g, const Operator& a) {
  Operator out = g * a * g.adjoint();
  return a.hermitian() ? hermitian_part(out) : out;
}

double max_abs_diff(const Operator& a, const Operator& b) {
  if (a.dim() != b.dim()) throw DimensionMismatch("max_abs_diff: dimension");
  double m = 0.0;
  for (std::size_t i = 0; i < a.data().size(); ++i)
    m = std::max(m, std::abs(a.data()[i] - b.data()[i]));
  return m;
}

bool is_unitary(const Operator& u, double tol) {
  return max_abs_diff(u.adjoint() * u, Operator::identity(u.dim())) <= tol;
}

void require_unitary(const Operator& u, const char* what) {
  if (!is_unitary(u)) throw NotUnitary(std::string(what) + " is not unitary");
}

Operator kron(const Operator& a, const Operator& b) {
  const std::size_t da = a.dim(), db = b.dim();
  Operator out(da * db);
  for (std::size_t i = 0; i < da; ++i)
    for (std::size_t j = 0; j < da; ++j) {
      const Complex aij = a(i, j);
      if (aij == Complex{}) continue;
      for (std::size_t k = 0; k < db; ++k)
        for (std::size_t l = 0; l < db; ++l)
          out(i * db + k, j * db + l) = aij * b(k, l);
    }
  if (a.hermitian() && b.hermitian()) out.tag_hermitian();
  return out;
}

Operator kron(std::initializer_list<Operator> factors) {
  Operator out = Operator::identity(1);
  for (const Operator& f : factors) out = kron(out, f);
  return out;
}

std::size_t log2_exact(std::size_t dim) {
  std::size_t n = 0;
  while ((std::size_t{1} << n) < dim) ++n;
  if ((std::size_t{1} << n) != dim) {
    throw DimensionMismatch("dimension " + std::to_string(dim) +
                            " is not a power of two");
  }
  return n;
}

namespace {

struct QubitMap {
  std::vector<std::size_t> masks;  // full-register bit of local qubit j
  std::size_t all = 0;
};

QubitMap qubit_map(std::span<const std::size_t> qubits, std::size_t num_qubits,
                   std::size_t local_dim) {
  if ((std::size_t{1} << qubits.size()) != local_dim) {
    throw DimensionMismatch("local operator of dimension " +
                            std::to_string(local_dim) + " on " +
                            std::to_string(qubits.size()) + " qubits");
  }
  QubitMap m;
  for (std::size_t q : qubits) {
    if (q >= num_qubits) throw InvalidArgument("qubit index out of range");
    std::size_t bit = std::size_t{1} << (num_qubits - 1 - q);
    if (m.all & bit) throw InvalidArgument("repeated qubit index");
    m.all |= bit;
    m.masks.push_back(bit);
  }
  return m;
}

// Full-register bits for local index `local`.
std::size_t scatter(const QubitMap& m, std::size_t local) {
  std::size_t out = 0;
  const std::size_t k = m.masks.size();
  for (std::size_t j = 0; j < k; ++j)
    if (local & (std::size_t{1} << (k - 1 - j))) out |= m.masks[j];
  return out;
}

}  // namespace

Operator embed(const Operator& local, std::span<const std::size_t> qubits,
               std::size_t num_qubits) {
  const std::size_t ld = local.dim();
  QubitMap m = qubit_map(qubits, num_qubits, ld);
  const std::size_t dim = std::size_t{1} << num_qubits;
  std::vector<std::size_t> offs(ld);
  for (std::size_t l = 0; l < ld; ++l) offs[l] = scatter(m, l);
  Operator out(dim);
  for (std::size_t rest = 0; rest < dim; ++rest) {
    if (rest & m.all) continue;
    for (std::size_t r = 0; r < ld; ++r)
      for (std::size_t c = 0; c < ld; ++c)
        out(rest | offs[r], rest | offs[c]) = local(r, c);
  }
  if (local.hermitian()) out.tag_hermitian();
  return out;
}

void accumulate_embedded(Operator& target, const Operator& local,
                         std::span<const std::size_t> qubits, std::size_t num_qubits,
                         double scale) {
  const std::size_t ld = local.dim();
  QubitMap m = qubit_map(qubits, num_qubits, ld);
  const std::size_t dim = std::size_t{1} << num_qubits;
  if (target.dim() != dim) throw DimensionMismatch("accumulate_embedded: target size");
  std::vector<std::size_t> offs(ld);
  for (std::size_t l = 0; l < ld; ++l) offs[l] = scatter(m, l);
  const bool keep = target.hermitian() && local.hermitian();
  for (std::size_t rest = 0; rest < dim; ++rest) {
    if (rest & m.all) continue;
    for (std::size_t r = 0; r < ld; ++r)
      for (std::size_t c = 0; c < ld; ++c) {
        const Complex v = local(r, c);
        if (v != Complex{}) target(rest | offs[r], rest | offs[c]) += scale * v;
      }
  }
  if (!keep) target.drop_tag();
}

void apply_local(const Operator& local, std::span<const std::size_t> qubits,
                 std::size_t num_qubits, std::span<Complex> state) {
  const std::size_t ld = local.dim();
  QubitMap m = qubit_map(qubits, num_qubits, ld);
  const std::size_t dim = std::size_t{1} << num_qubits;
  if (state.size() != dim) throw DimensionMismatch("apply_local: state size");
  std::vector<std::size_t> offs(ld);
  for (std::size_t l = 0; l < ld; ++l) offs[l] = scatter(m, l);
  const auto& k = kernels::active();
  CVector in(ld), out(ld);
  for (std::size_t rest = 0; rest < dim; ++rest) {
    if (rest & m.all) continue;
    for (std::size_t l = 0; l < ld; ++l) in[l] = state[rest | offs[l]];
    k.zgemv(ld, ld, local.data().data(), in.data(), out.data());
    for (std::size_t l = 0; l < ld; ++l) state[rest | offs[l]] = out[l];
  }
}

CVector matvec(const Operator& a, std::span<const Complex> x) {
  if (x.size() != a.dim()) throw DimensionMismatch("apply: vector size");
  CVector y(a.dim());
  kernels::active().zgemv(a.dim(), a.dim(), a.data().data(), x.data(), y.data());
  return y;
}

double spectral_norm(const Operator& h) {
  EigenSystem es = eigh(h);
  if (es.values.empty()) return 0.0;
  return std::max(std::abs(es.values.front()), std::abs(es.values.back()));
}

Operator expm_hermitian(const Operator& h, double dt) {
  EigenSystem es = eigh(h);
  const std::size_t d = h.dim();
  Operator scaled = es.vectors;
  for (std::size_t c = 0; c < d; ++c) {
    const Complex ph = std::polar(1.0, -es.values[c] * dt);
    for (std::size_t r = 0; r < d; ++r) scaled(r, c) *= ph;
  }
  return scaled * es.vectors.adjoint();
}

QState propagate_step(const Operator& h_mid, double dt, const QState& psi) {
  if (h_mid.dim() != psi.dim()) throw DimensionMismatch("propagate_step");
  CVector out = matvec(expm_hermitian(h_mid, dt), psi.amps());
  return QState::normalized(psi.num_qubits(), std::move(out));
}

}  // namespace sal
