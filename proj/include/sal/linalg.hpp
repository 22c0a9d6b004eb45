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

#pragma once

#include <complex>
#include <cstddef>
#include <initializer_list>
#include <span>
#include <vector>

#include "sal/errors.hpp"

// Dense operators and state vectors.
//
// Qubit ordering: qubit 0 is the most significant bit of a basis index, so in
// an n-qubit register qubit q lives at bit (n - 1 - q).

namespace sal {

using Complex = std::complex<double>;
using CVector = std::vector<Complex>;

inline constexpr Complex kI{0.0, 1.0};

// Square complex matrix, row-major. Also holds eigenvector frames, one vector
// per column.
class Operator {
 public:
  Operator() = default;
  explicit Operator(std::size_t dim);
  // Row-major values; size must be dim*dim.
  Operator(std::size_t dim, std::initializer_list<Complex> values);

  static Operator identity(std::size_t dim);
  static Operator diagonal(std::span<const double> values);

  std::size_t dim() const noexcept { return dim_; }
  Complex& operator()(std::size_t r, std::size_t c) noexcept {
    return data_[r * dim_ + c];
  }
  const Complex& operator()(std::size_t r, std::size_t c) const noexcept {
    return data_[r * dim_ + c];
  }
  std::span<Complex> data() noexcept { return data_; }
  std::span<const Complex> data() const noexcept { return data_; }

  // The tag is a promise that A == A^dagger; kept by sums, real scaling and
  // adjoint, dropped by anything else.
  bool hermitian() const noexcept { return hermitian_; }
  // Validates max|A - A^dagger| <= tol * max(1, max|A|), throws NotHermitian.
  Operator& tag_hermitian(double tol = 1e-12);
  void drop_tag() noexcept { hermitian_ = false; }

  Operator adjoint() const;
  Complex trace() const;
  double hs_norm() const;    // sqrt(Tr A^dagger A)
  double max_abs() const;    // largest entry modulus
  std::vector<double> column_norms() const;

  Operator& operator+=(const Operator& other);
  Operator& operator-=(const Operator& other);
  Operator& operator*=(double scale);
  Operator& operator*=(Complex scale);
  // this += alpha * x
  Operator& axpy(Complex alpha, const Operator& x);

 private:
  std::size_t dim_ = 0;
  std::vector<Complex> data_;
  bool hermitian_ = false;
};

Operator operator+(Operator a, const Operator& b);
Operator operator-(Operator a, const Operator& b);
Operator operator*(const Operator& a, const Operator& b);
Operator operator*(double s, Operator a);
Operator operator*(Complex s, Operator a);

// A B - B A and A B + B A.
Operator commutator(const Operator& a, const Operator& b);
Operator anticommutator(const Operator& a, const Operator& b);

// (A + A^dagger) / 2, tagged Hermitian.
Operator hermitian_part(const Operator& a);

// G A G^dagger; Hermitian-tagged input yields a symmetrised, tagged result.
Operator conjugate(const Operator& g, const Operator& a);

double max_abs_diff(const Operator& a, const Operator& b);
bool is_unitary(const Operator& u, double tol = 1e-10);
void require_unitary(const Operator& u, const char* what);

Operator kron(const Operator& a, const Operator& b);
Operator kron(std::initializer_list<Operator> factors);

// Places `local` (acting on qubits.size() qubits, listed most significant
// first) on the given qubits of an n-qubit register.
Operator embed(const Operator& local, std::span<const std::size_t> qubits,
               std::size_t num_qubits);

// target += scale * embed(local, qubits, num_qubits) without the temporary.
// The Hermitian tag of target survives only if local is tagged and scale real.
void accumulate_embedded(Operator& target, const Operator& local,
                         std::span<const std::size_t> qubits, std::size_t num_qubits,
                         double scale = 1.0);

// state <- (local on qubits) state, in place.
void apply_local(const Operator& local, std::span<const std::size_t> qubits,
                 std::size_t num_qubits, std::span<Complex> state);

CVector matvec(const Operator& a, std::span<const Complex> x);

// Normalised pure state of num_qubits qubits.
class QState {
 public:
  QState() = default;
  // Throws NotNormalized unless | ||amps|| - 1 | <= 1e-10.
  QState(std::size_t num_qubits, CVector amps);

  static QState normalized(std::size_t num_qubits, CVector amps);
  static QState basis(std::size_t num_qubits, std::size_t index);

  std::size_t num_qubits() const noexcept { return num_qubits_; }
  std::size_t dim() const noexcept { return amps_.size(); }
  std::span<const Complex> amps() const noexcept { return amps_; }
  const Complex& operator[](std::size_t i) const noexcept { return amps_[i]; }

 private:
  std::size_t num_qubits_ = 0;
  CVector amps_;
};

QState kron(const QState& a, const QState& b);

// <a|b>
Complex inner(std::span<const Complex> a, std::span<const Complex> b);
Complex inner(const QState& a, const QState& b);
double norm(std::span<const Complex> a);

// |<a|b>|^2
double fidelity(const QState& a, const QState& b);

// Product state with factor k placed on placements[k].qubits.
struct Placement {
  const QState* state;
  std::vector<std::size_t> qubits;
};
QState compose(std::size_t num_qubits, std::span<const Placement> placements);

struct EigenSystem {
  std::vector<double> values;  // ascending
  Operator vectors;            // column k pairs with values[k]
};

// Hermitian eigendecomposition. Throws NotHermitian for untagged or
// non-Hermitian input, NonConvergence if the solver fails.
EigenSystem eigh(const Operator& h);

// exp(-i h dt) for Hermitian h, built from the eigendecomposition so the
// result is unitary to rounding.
Operator expm_hermitian(const Operator& h, double dt);

// One midpoint step: exp(-i h_mid dt) |psi>.
QState propagate_step(const Operator& h_mid, double dt, const QState& psi);

// Largest |eigenvalue|.
double spectral_norm(const Operator& h);

std::size_t log2_exact(std::size_t dim);

}  // namespace sal
