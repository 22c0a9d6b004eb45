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

#include <Eigen/SVD>
#include <algorithm>
#include <cmath>
#include <string>

#include "sal/counterdiabatic.hpp"

namespace sal {

SpectralFrame::LevelSums SpectralFrame::level_sums(std::size_t j) const {
  if (composite()) {
    double total_dim = 1.0;
    for (const auto& f : factors) total_dim *= static_cast<double>(f->dim);
    LevelSums out{0.0, 0.0, 0.0};
    std::vector<LevelSums> parts;
    for (const auto& f : factors) parts.push_back(f->level_sums(j));
    for (std::size_t k = 0; k < factors.size(); ++k) {
      const double rest = total_dim / static_cast<double>(factors[k]->dim);
      out.sum_e2 += rest * parts[k].sum_e2;
      out.sum_mu += rest * parts[k].sum_mu;
      out.trace += rest * parts[k].trace;
      for (std::size_t l = 0; l < factors.size(); ++l) {
        if (l == k) continue;
        const double rest2 = rest / static_cast<double>(factors[l]->dim);
        out.sum_e2 += rest2 * parts[k].trace * parts[l].trace;
      }
    }
    return out;
  }
  LevelSums out{0.0, 0.0, 0.0};
  const Operator& v = vectors[j];
  const Operator& d = derivatives[j];
  for (std::size_t n = 0; n < dim; ++n) {
    const double e = energies[j][n];
    out.sum_e2 += e * e;
    out.trace += e;
    Complex overlap = 0.0;
    double dd = 0.0;
    for (std::size_t r = 0; r < dim; ++r) {
      overlap += std::conj(v(r, n)) * d(r, n);
      dd += std::norm(d(r, n));
    }
    out.sum_mu += dd - std::norm(overlap);
  }
  return out;
}

Operator SpectralFrame::generator(std::size_t j) const {
  if (composite()) throw InvalidArgument("generator: composite frame");
  const Operator& v = vectors[j];
  Operator d = derivatives[j];
  for (std::size_t n = 0; n < dim; ++n) {
    Complex overlap = 0.0;
    for (std::size_t r = 0; r < dim; ++r) overlap += std::conj(v(r, n)) * d(r, n);
    for (std::size_t r = 0; r < dim; ++r) d(r, n) -= overlap * v(r, n);
  }
  Operator g = d * v.adjoint();
  g *= kI;
  return hermitian_part(g);
}

BlockHint teleport_block_hint() {
  return BlockHint{std::nullopt,
                   {{kParityPlus.begin(), kParityPlus.end()},
                    {kParityMinus.begin(), kParityMinus.end()}}};
}

BlockHint controlled_block_hint(const ControlledSpec& spec) {
  validate(spec);
  const std::size_t nc = spec.n_controls;
  const std::size_t dim = std::size_t{1} << (nc + 2);
  auto pm = axis_states(spec.axis);  // {|n+>, |n->}
  Operator basis(dim);
  BlockHint hint;
  std::size_t col = 0;
  for (std::size_t k = 0; k < (std::size_t{1} << nc); ++k) {
    for (std::size_t mu = 0; mu < 2; ++mu) {
      std::vector<std::size_t> block;
      for (std::size_t anc = 0; anc < 2; ++anc) {
        for (std::size_t t = 0; t < 2; ++t) basis((k << 2) | (t << 1) | anc, col) = pm[mu][t];
        block.push_back(col++);
      }
      hint.blocks.push_back(std::move(block));
    }
  }
  hint.basis = std::move(basis);
  return hint;
}

namespace {

using Cluster = std::pair<std::size_t, std::size_t>;

Eigen::MatrixXcd column_overlap(const Operator& prev, const Operator& cur, Cluster c) {
  const std::size_t m = c.second - c.first;
  Eigen::MatrixXcd out(m, m);
  for (std::size_t a = 0; a < m; ++a)
    for (std::size_t b = 0; b < m; ++b) {
      Complex acc = 0.0;
      for (std::size_t r = 0; r < prev.dim(); ++r)
        acc += std::conj(prev(r, c.first + a)) * cur(r, c.first + b);
      out(a, b) = acc;
    }
  return out;
}

// Rotate the cluster columns of `cur` so prev^dagger cur is positive
// semidefinite Hermitian (discrete parallel transport).
void align_cluster(const Operator& prev, Operator& cur, Cluster c, double s) {
  Eigen::MatrixXcd m = column_overlap(prev, cur, c);
  Eigen::JacobiSVD<Eigen::MatrixXcd> svd(m, Eigen::ComputeFullU | Eigen::ComputeFullV);
  if (svd.singularValues().minCoeff() < 0.5) {
    throw GaugeFixFailure("eigenvector overlap " +
                          std::to_string(svd.singularValues().minCoeff()) +
                          " below threshold near s = " + std::to_string(s));
  }
  const Eigen::MatrixXcd rot = svd.matrixV() * svd.matrixU().adjoint();
  const std::size_t size = c.second - c.first;
  std::vector<Complex> row(size);
  for (std::size_t r = 0; r < cur.dim(); ++r) {
    for (std::size_t b = 0; b < size; ++b) {
      Complex acc = 0.0;
      for (std::size_t a = 0; a < size; ++a) acc += cur(r, c.first + a) * rot(a, b);
      row[b] = acc;
    }
    for (std::size_t b = 0; b < size; ++b) cur(r, c.first + b) = row[b];
  }
}

// Deterministic start: largest-modulus entry of each column real positive.
void fix_initial_phases(Operator& v, std::size_t first, std::size_t last) {
  for (std::size_t n = first; n < last; ++n) {
    std::size_t arg = 0;
    for (std::size_t r = 1; r < v.dim(); ++r)
      if (std::abs(v(r, n)) > std::abs(v(arg, n)) + 1e-12) arg = r;
    const Complex ph = std::conj(v(arg, n)) / std::abs(v(arg, n));
    for (std::size_t r = 0; r < v.dim(); ++r) v(r, n) *= ph;
  }
}

}  // namespace

SpectralFrame build_frame(const TimeDepHamiltonian& h, std::size_t grid,
                          const std::optional<BlockHint>& hint) {
  if (grid < 5) throw InvalidArgument("build_frame: grid must have at least 5 points");
  const std::size_t dim = h.dim();
  BlockHint blocks;
  if (hint) {
    blocks = *hint;
  } else {
    blocks.blocks.emplace_back(dim);
    for (std::size_t i = 0; i < dim; ++i) blocks.blocks[0][i] = i;
  }
  if (blocks.basis) {
    if (blocks.basis->dim() != dim) throw DimensionMismatch("block basis dimension");
    require_unitary(*blocks.basis, "block basis");
  }
  {
    std::vector<int> seen(dim, 0);
    for (const auto& b : blocks.blocks)
      for (std::size_t i : b) {
        if (i >= dim || seen[i]++) throw InvalidArgument("block hint is not a partition");
      }
    if (std::count(seen.begin(), seen.end(), 1) != static_cast<long>(dim))
      throw InvalidArgument("block hint does not cover the space");
  }

  SpectralFrame frame;
  frame.dim = dim;
  std::size_t col = 0;
  for (const auto& b : blocks.blocks) {
    frame.blocks.emplace_back(col, col + b.size());
    col += b.size();
  }

  std::vector<Cluster> clusters;
  for (std::size_t j = 0; j < grid; ++j) {
    const double s = static_cast<double>(j) / static_cast<double>(grid - 1);
    Operator hs = h(s);
    if (blocks.basis) hs = hermitian_part(blocks.basis->adjoint() * hs * *blocks.basis);
    const double scale = std::max(1.0, hs.max_abs());
    std::vector<int> owner(dim);
    for (std::size_t b = 0; b < blocks.blocks.size(); ++b)
      for (std::size_t i : blocks.blocks[b]) owner[i] = static_cast<int>(b);
    for (std::size_t r = 0; r < dim; ++r)
      for (std::size_t c = 0; c < dim; ++c)
        if (owner[r] != owner[c] && std::abs(hs(r, c)) > 1e-9 * scale)
          throw InvalidArgument("block hint does not decouple the Hamiltonian");

    Operator v(dim);
    std::vector<double> e(dim);
    std::vector<Cluster> here;
    for (std::size_t b = 0; b < blocks.blocks.size(); ++b) {
      const auto& idx = blocks.blocks[b];
      const std::size_t m = idx.size();
      Operator sub(m);
      for (std::size_t r = 0; r < m; ++r)
        for (std::size_t c = 0; c < m; ++c) sub(r, c) = hs(idx[r], idx[c]);
      sub.tag_hermitian(1e-9);
      sub = hermitian_part(sub);
      EigenSystem es = eigh(sub);
      const std::size_t off = frame.blocks[b].first;
      for (std::size_t k = 0; k < m; ++k) {
        e[off + k] = es.values[k];
        for (std::size_t r = 0; r < m; ++r) {
          const Complex amp = es.vectors(r, k);
          if (blocks.basis) {
            for (std::size_t full = 0; full < dim; ++full)
              v(full, off + k) += (*blocks.basis)(full, idx[r]) * amp;
          } else {
            v(idx[r], off + k) = amp;
          }
        }
      }
      for (std::size_t k = 0; k < m;) {
        std::size_t end = k + 1;
        while (end < m && es.values[end] - es.values[k] <= 1e-8 * scale) ++end;
        if (end - k > 1 && !hint) {
          throw DegenerateSpectrum("degenerate level at s = " + std::to_string(s) +
                                   "; supply a block hint");
        }
        here.emplace_back(off + k, off + end);
        k = end;
      }
    }
    if (j == 0) {
      clusters = here;
      for (const Cluster& c : clusters)
        if (c.second - c.first == 1) fix_initial_phases(v, c.first, c.second);
    } else {
      if (here != clusters) {
        throw GaugeFixFailure("level structure changes near s = " + std::to_string(s));
      }
      for (const Cluster& c : clusters) align_cluster(frame.vectors.back(), v, c, s);
    }
    frame.s.push_back(s);
    frame.energies.push_back(std::move(e));
    frame.vectors.push_back(std::move(v));
  }

  // Fourth-order differences; one-sided five-point stencils at the ends.
  static constexpr double kCentral[5] = {1.0, -8.0, 0.0, 8.0, -1.0};
  static constexpr double kEdge0[5] = {-25.0, 48.0, -36.0, 16.0, -3.0};
  static constexpr double kEdge1[5] = {-3.0, -10.0, 18.0, -6.0, 1.0};
  const double inv12h = static_cast<double>(grid - 1) / 12.0;
  frame.derivatives.resize(grid, Operator(dim));
  for (std::size_t j = 0; j < grid; ++j) {
    Operator& d = frame.derivatives[j];
    const double* coef = kCentral;
    std::size_t first = j - 2;
    double sign = 1.0;
    if (j < 2) {
      coef = j == 0 ? kEdge0 : kEdge1;
      first = 0;
    } else if (j + 2 >= grid) {
      // Mirror of the left-edge stencils.
      coef = j == grid - 1 ? kEdge0 : kEdge1;
      first = grid - 1;
      sign = -1.0;
    }
    for (std::size_t k = 0; k < 5; ++k) {
      if (coef[k] == 0.0) continue;
      const std::size_t idx = sign > 0 ? first + k : first - k;
      d.axpy(sign * coef[k] * inv12h, frame.vectors[idx]);
    }
  }
  return frame;
}

std::shared_ptr<const SpectralFrame> SuperadiabaticHamiltonian::frame(std::size_t g) const {
  if (!frame_builder) throw InvalidArgument("no spectral frame attached");
  return frame_builder(g);
}

}  // namespace sal
