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

#ifndef QGAMES_TENSOR_HPP_
#define QGAMES_TENSOR_HPP_

#include <complex>
#include <cstddef>
#include <cstdint>
#include <initializer_list>
#include <random>
#include <span>
#include <stdexcept>
#include <vector>

#include <Eigen/Dense>

namespace qgames {

using Complex = std::complex<double>;
using ComplexMatrix =
    Eigen::Matrix<Complex, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor>;
using ComplexVector = Eigen::VectorXcd;
using RealMatrix = Eigen::MatrixXd;
using RealVector = Eigen::VectorXd;

class DimensionError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

class NumericalError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Tensor factorization of a Hilbert space. Factor 0 is the slowest-varying
// index of the composite (big-endian) basis index.
struct RegisterShape {
  std::vector<std::size_t> dims;

  RegisterShape() = default;
  RegisterShape(std::initializer_list<std::size_t> d) : dims(d) {}
  explicit RegisterShape(std::vector<std::size_t> d) : dims(std::move(d)) {}

  std::size_t total() const;
  std::size_t size() const { return dims.size(); }
};

ComplexMatrix kron(const ComplexMatrix& a, const ComplexMatrix& b);
ComplexVector kron(const ComplexVector& a, const ComplexVector& b);

// perm[k] names the old factor that becomes new factor k.
std::vector<std::size_t> inverse_permutation(std::span<const std::size_t> perm);
ComplexMatrix permute_registers(const ComplexMatrix& m,
                                const RegisterShape& shape,
                                std::span<const std::size_t> perm);
ComplexVector permute_registers(const ComplexVector& v,
                                const RegisterShape& shape,
                                std::span<const std::size_t> perm);
RegisterShape permuted_shape(const RegisterShape& shape,
                             std::span<const std::size_t> perm);

ComplexMatrix partial_trace(const ComplexMatrix& m, const RegisterShape& shape,
                            std::span<const std::size_t> traced);

// Applies op to the listed registers (in the listed order) of a state vector.
ComplexVector apply_on_registers(const ComplexVector& state,
                                 const RegisterShape& shape,
                                 const ComplexMatrix& op,
                                 std::span<const std::size_t> registers);

struct Svd {
  ComplexMatrix u;
  RealVector s;  // nonnegative, descending
  ComplexMatrix vdag;
};

Svd svd(const ComplexMatrix& a);
double trace_norm(const ComplexMatrix& a);
double operator_norm(const ComplexMatrix& a);
double frobenius_norm(const ComplexMatrix& a);

struct PolarMaximizer {
  ComplexMatrix unitary;
  double value = 0.0;
};

// argmax over unitaries U of Re tr(U Y).
PolarMaximizer polar_maximizer(const ComplexMatrix& y);

// ||sum_i A_i A_i^*||^{1/2} and ||sum_i A_i^* A_i||^{1/2}.
double row_block_norm(std::span<const ComplexMatrix> blocks);
double column_block_norm(std::span<const ComplexMatrix> blocks);

// ||T : C_N -> R_N||_cb, the Frobenius norm of T.
double cb_norm_C_to_R(const ComplexMatrix& t);

double lambda_max(const ComplexMatrix& hermitian);
double lambda_min(const ComplexMatrix& hermitian);
RealVector hermitian_eigenvalues(const ComplexMatrix& hermitian);

bool is_finite(const ComplexMatrix& m);
bool is_unitary(const ComplexMatrix& u, double tol);
ComplexMatrix identity(std::size_t n);

// SWAP: C^{d1} (x) C^{d2} -> C^{d2} (x) C^{d1}.
ComplexMatrix swap_operator(std::size_t d1, std::size_t d2);

ComplexMatrix random_gaussian(std::size_t rows, std::size_t cols,
                              std::mt19937_64& rng);
ComplexMatrix haar_unitary(std::size_t n, std::mt19937_64& rng);
ComplexVector random_unit_vector(std::size_t n, std::mt19937_64& rng);

}  // namespace qgames

#endif  // QGAMES_TENSOR_HPP_
