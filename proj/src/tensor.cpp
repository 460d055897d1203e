// Copyright 2026 The qgames Authors.
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

#include "qgames/tensor.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <string>

namespace qgames {
namespace {

void check_permutation(std::span<const std::size_t> perm, std::size_t n) {
  if (perm.size() != n) {
    throw DimensionError("permutation has " + std::to_string(perm.size()) +
                         " entries, shape has " + std::to_string(n) +
                         " factors");
  }
  std::vector<bool> seen(n, false);
  for (std::size_t p : perm) {
    if (p >= n || seen[p]) throw DimensionError("not a permutation");
    seen[p] = true;
  }
}

// map[new_index] = old_index for the reordering described by perm.
std::vector<std::size_t> index_map(const RegisterShape& shape,
                                   std::span<const std::size_t> perm) {
  const std::size_t k = shape.size();
  check_permutation(perm, k);
  const std::size_t total = shape.total();

  // Old strides (big-endian).
  std::vector<std::size_t> old_stride(k, 1);
  for (std::size_t f = k; f-- > 1;) {
    old_stride[f - 1] = old_stride[f] * shape.dims[f];
  }
  std::vector<std::size_t> new_dims(k);
  for (std::size_t t = 0; t < k; ++t) new_dims[t] = shape.dims[perm[t]];

  std::vector<std::size_t> map(total);
  std::vector<std::size_t> digit(k, 0);
  for (std::size_t idx = 0; idx < total; ++idx) {
    std::size_t old = 0;
    for (std::size_t t = 0; t < k; ++t) old += digit[t] * old_stride[perm[t]];
    map[idx] = old;
    for (std::size_t t = k; t-- > 0;) {
      if (++digit[t] < new_dims[t]) break;
      digit[t] = 0;
    }
  }
  return map;
}

Eigen::MatrixXcd to_col_major(const ComplexMatrix& a) {
  return Eigen::MatrixXcd(a);
}

// Restricts a to its nonzero rows and columns; singular values are unchanged
// up to zeros.
ComplexMatrix compress(const ComplexMatrix& a) {
  std::vector<Eigen::Index> rows, cols;
  for (Eigen::Index i = 0; i < a.rows(); ++i) {
    if (a.row(i).cwiseAbs().maxCoeff() > 0.0) rows.push_back(i);
  }
  for (Eigen::Index j = 0; j < a.cols(); ++j) {
    if (a.col(j).cwiseAbs().maxCoeff() > 0.0) cols.push_back(j);
  }
  ComplexMatrix out(rows.size(), cols.size());
  for (std::size_t i = 0; i < rows.size(); ++i) {
    for (std::size_t j = 0; j < cols.size(); ++j) {
      out(i, j) = a(rows[i], cols[j]);
    }
  }
  return out;
}

RealVector singular_values(const ComplexMatrix& a) {
  if (a.size() == 0) return RealVector();
  if (!is_finite(a)) throw NumericalError("svd: non-finite input");
  Eigen::BDCSVD<Eigen::MatrixXcd> dec(to_col_major(a));
  if (dec.info() != Eigen::Success) throw NumericalError("svd did not converge");
  return dec.singularValues();
}

}  // namespace

std::size_t RegisterShape::total() const {
  return std::accumulate(dims.begin(), dims.end(), std::size_t{1},
                         std::multiplies<>());
}

ComplexMatrix kron(const ComplexMatrix& a, const ComplexMatrix& b) {
  ComplexMatrix out(a.rows() * b.rows(), a.cols() * b.cols());
  for (Eigen::Index i = 0; i < a.rows(); ++i) {
    for (Eigen::Index j = 0; j < a.cols(); ++j) {
      out.block(i * b.rows(), j * b.cols(), b.rows(), b.cols()) = a(i, j) * b;
    }
  }
  return out;
}

ComplexVector kron(const ComplexVector& a, const ComplexVector& b) {
  ComplexVector out(a.size() * b.size());
  for (Eigen::Index i = 0; i < a.size(); ++i) {
    out.segment(i * b.size(), b.size()) = a(i) * b;
  }
  return out;
}

std::vector<std::size_t> inverse_permutation(std::span<const std::size_t> perm) {
  check_permutation(perm, perm.size());
  std::vector<std::size_t> inv(perm.size());
  for (std::size_t k = 0; k < perm.size(); ++k) inv[perm[k]] = k;
  return inv;
}

RegisterShape permuted_shape(const RegisterShape& shape,
                             std::span<const std::size_t> perm) {
  check_permutation(perm, shape.size());
  std::vector<std::size_t> d(perm.size());
  for (std::size_t k = 0; k < perm.size(); ++k) d[k] = shape.dims[perm[k]];
  return RegisterShape(std::move(d));
}

ComplexMatrix permute_registers(const ComplexMatrix& m,
                                const RegisterShape& shape,
                                std::span<const std::size_t> perm) {
  const auto n = static_cast<Eigen::Index>(shape.total());
  if (m.rows() != n || m.cols() != n) {
    throw DimensionError("permute_registers: matrix side " +
                         std::to_string(m.rows()) + "x" +
                         std::to_string(m.cols()) + " does not match shape " +
                         std::to_string(n));
  }
  const auto map = index_map(shape, perm);
  ComplexMatrix out(n, n);
  for (Eigen::Index i = 0; i < n; ++i) {
    for (Eigen::Index j = 0; j < n; ++j) out(i, j) = m(map[i], map[j]);
  }
  return out;
}

ComplexVector permute_registers(const ComplexVector& v,
                                const RegisterShape& shape,
                                std::span<const std::size_t> perm) {
  const auto n = static_cast<Eigen::Index>(shape.total());
  if (v.size() != n) throw DimensionError("permute_registers: vector length");
  const auto map = index_map(shape, perm);
  ComplexVector out(n);
  for (Eigen::Index i = 0; i < n; ++i) out(i) = v(map[i]);
  return out;
}

ComplexMatrix partial_trace(const ComplexMatrix& m, const RegisterShape& shape,
                            std::span<const std::size_t> traced) {
  const std::size_t k = shape.size();
  std::vector<bool> is_traced(k, false);
  for (std::size_t t : traced) {
    if (t >= k) {
      throw DimensionError("partial_trace: factor " + std::to_string(t) +
                           " out of range");
    }
    if (is_traced[t]) throw DimensionError("partial_trace: repeated factor");
    is_traced[t] = true;
  }
  const auto n = static_cast<Eigen::Index>(shape.total());
  if (m.rows() != n || m.cols() != n) {
    throw DimensionError("partial_trace: matrix does not match shape");
  }
  std::vector<std::size_t> perm;
  std::size_t keep_dim = 1, trace_dim = 1;
  for (std::size_t f = 0; f < k; ++f) {
    if (!is_traced[f]) {
      perm.push_back(f);
      keep_dim *= shape.dims[f];
    }
  }
  for (std::size_t f = 0; f < k; ++f) {
    if (is_traced[f]) {
      perm.push_back(f);
      trace_dim *= shape.dims[f];
    }
  }
  const auto map = index_map(shape, perm);
  ComplexMatrix out = ComplexMatrix::Zero(keep_dim, keep_dim);
  for (std::size_t i = 0; i < keep_dim; ++i) {
    for (std::size_t j = 0; j < keep_dim; ++j) {
      Complex acc = 0.0;
      for (std::size_t t = 0; t < trace_dim; ++t) {
        acc += m(map[i * trace_dim + t], map[j * trace_dim + t]);
      }
      out(i, j) = acc;
    }
  }
  return out;
}

ComplexVector apply_on_registers(const ComplexVector& state,
                                 const RegisterShape& shape,
                                 const ComplexMatrix& op,
                                 std::span<const std::size_t> registers) {
  const std::size_t k = shape.size();
  std::vector<bool> used(k, false);
  std::vector<std::size_t> perm;
  std::size_t dim_op = 1;
  for (std::size_t r : registers) {
    if (r >= k || used[r]) throw DimensionError("apply_on_registers: registers");
    used[r] = true;
    perm.push_back(r);
    dim_op *= shape.dims[r];
  }
  for (std::size_t f = 0; f < k; ++f) {
    if (!used[f]) perm.push_back(f);
  }
  if (op.rows() != static_cast<Eigen::Index>(dim_op) ||
      op.cols() != static_cast<Eigen::Index>(dim_op)) {
    throw DimensionError("apply_on_registers: operator side " +
                         std::to_string(op.rows()) + " != " +
                         std::to_string(dim_op));
  }
  if (state.size() != static_cast<Eigen::Index>(shape.total())) {
    throw DimensionError("apply_on_registers: state length");
  }
  const std::size_t rest = shape.total() / dim_op;
  ComplexVector moved = permute_registers(state, shape, perm);
  Eigen::Map<ComplexMatrix> mat(moved.data(), dim_op, rest);
  ComplexMatrix applied = op * mat;
  ComplexVector flat =
      Eigen::Map<const ComplexVector>(applied.data(), applied.size());
  const auto inv = inverse_permutation(perm);
  return permute_registers(flat, permuted_shape(shape, perm), inv);
}

Svd svd(const ComplexMatrix& a) {
  if (!is_finite(a)) throw NumericalError("svd: non-finite input");
  Eigen::BDCSVD<Eigen::MatrixXcd> dec(to_col_major(a),
                                      Eigen::ComputeThinU | Eigen::ComputeThinV);
  if (dec.info() != Eigen::Success) throw NumericalError("svd did not converge");
  Svd out;
  out.u = dec.matrixU();
  out.s = dec.singularValues();
  out.vdag = dec.matrixV().adjoint();
  return out;
}

double trace_norm(const ComplexMatrix& a) {
  ComplexMatrix c = compress(a);
  if (c.size() == 0) return 0.0;
  return singular_values(c).sum();
}

double operator_norm(const ComplexMatrix& a) {
  ComplexMatrix c = compress(a);
  if (c.size() == 0) return 0.0;
  return singular_values(c)(0);
}

double frobenius_norm(const ComplexMatrix& a) { return a.norm(); }

PolarMaximizer polar_maximizer(const ComplexMatrix& y) {
  if (y.rows() != y.cols()) throw DimensionError("polar_maximizer: Y not square");
  Svd d = svd(y);
  // Y = P S Q^dag, U = Q P^dag gives tr(UY) = tr(S).
  PolarMaximizer out;
  out.unitary = d.vdag.adjoint() * d.u.adjoint();
  out.value = d.s.sum();
  return out;
}

namespace {

void check_blocks(std::span<const ComplexMatrix> blocks) {
  if (blocks.empty()) throw DimensionError("block norm: no blocks");
  for (const auto& b : blocks) {
    if (b.rows() != blocks[0].rows() || b.cols() != blocks[0].cols()) {
      throw DimensionError("block norm: blocks differ in shape");
    }
  }
}

}  // namespace

double row_block_norm(std::span<const ComplexMatrix> blocks) {
  check_blocks(blocks);
  ComplexMatrix sum = ComplexMatrix::Zero(blocks[0].rows(), blocks[0].rows());
  for (const auto& b : blocks) sum += b * b.adjoint();
  return std::sqrt(std::max(0.0, lambda_max(sum)));
}

double column_block_norm(std::span<const ComplexMatrix> blocks) {
  check_blocks(blocks);
  ComplexMatrix sum = ComplexMatrix::Zero(blocks[0].cols(), blocks[0].cols());
  for (const auto& b : blocks) sum += b.adjoint() * b;
  return std::sqrt(std::max(0.0, lambda_max(sum)));
}

double cb_norm_C_to_R(const ComplexMatrix& t) {
  if (t.rows() != t.cols()) throw DimensionError("cb_norm_C_to_R: T not square");
  return t.norm();
}

RealVector hermitian_eigenvalues(const ComplexMatrix& hermitian) {
  if (hermitian.rows() != hermitian.cols()) {
    throw DimensionError("eigenvalues: matrix not square");
  }
  if (hermitian.size() == 0) return RealVector();
  Eigen::MatrixXcd h = 0.5 * (hermitian + hermitian.adjoint());
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(h, Eigen::EigenvaluesOnly);
  if (es.info() != Eigen::Success) {
    throw NumericalError("Hermitian eigensolver did not converge");
  }
  return es.eigenvalues();
}

double lambda_max(const ComplexMatrix& hermitian) {
  return hermitian_eigenvalues(hermitian).maxCoeff();
}

double lambda_min(const ComplexMatrix& hermitian) {
  return hermitian_eigenvalues(hermitian).minCoeff();
}

bool is_finite(const ComplexMatrix& m) {
  for (Eigen::Index i = 0; i < m.size(); ++i) {
    const Complex z = m.data()[i];
    if (!std::isfinite(z.real()) || !std::isfinite(z.imag())) return false;
  }
  return true;
}

bool is_unitary(const ComplexMatrix& u, double tol) {
  if (u.rows() != u.cols()) return false;
  return (u.adjoint() * u - ComplexMatrix::Identity(u.rows(), u.cols()))
             .cwiseAbs()
             .maxCoeff() <= tol;
}

ComplexMatrix identity(std::size_t n) { return ComplexMatrix::Identity(n, n); }

ComplexMatrix swap_operator(std::size_t d1, std::size_t d2) {
  ComplexMatrix s = ComplexMatrix::Zero(d1 * d2, d1 * d2);
  for (std::size_t i = 0; i < d1; ++i) {
    for (std::size_t j = 0; j < d2; ++j) s(j * d1 + i, i * d2 + j) = 1.0;
  }
  return s;
}

ComplexMatrix random_gaussian(std::size_t rows, std::size_t cols,
                              std::mt19937_64& rng) {
  std::normal_distribution<double> normal(0.0, std::sqrt(0.5));
  ComplexMatrix g(rows, cols);
  for (Eigen::Index i = 0; i < g.size(); ++i) {
    const double re = normal(rng);
    const double im = normal(rng);
    g.data()[i] = Complex(re, im);
  }
  return g;
}

ComplexMatrix haar_unitary(std::size_t n, std::mt19937_64& rng) {
  Eigen::MatrixXcd g = random_gaussian(n, n, rng);
  Eigen::HouseholderQR<Eigen::MatrixXcd> qr(g);
  Eigen::MatrixXcd q = qr.householderQ();
  const Eigen::MatrixXcd& r = qr.matrixQR();
  for (std::size_t j = 0; j < n; ++j) {
    const Complex d = r(j, j);
    const double a = std::abs(d);
    q.col(j) *= (a > 0.0 ? d / a : Complex(1.0));
  }
  return q;
}

ComplexVector random_unit_vector(std::size_t n, std::mt19937_64& rng) {
  ComplexMatrix g = random_gaussian(n, 1, rng);
  ComplexVector v = Eigen::Map<ComplexVector>(g.data(), n);
  return v / v.norm();
}

}  // namespace qgames
