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

// Dense semidefinite programs over Hermitian / real-symmetric matrix
// variables, solved by a primal-dual interior-point method.

#ifndef QGAMES_SDP_HPP_
#define QGAMES_SDP_HPP_

#include <cstddef>
#include <span>
#include <string>
#include <vector>

#include "qgames/tensor.hpp"

namespace qgames::sdp {

enum class Domain { kHermitian, kRealSymmetric };
enum class Sense { kMaximize, kMinimize };
enum class Status { kOptimal, kInfeasible, kUnbounded, kMaxIterations };

const char* to_string(Status s);
const char* to_string(Domain d);

struct Variable {
  std::string name;
  std::size_t side = 0;
  Domain domain = Domain::kHermitian;
};

// Contributes Re(coeff * X_var(row, col)).
struct Term {
  std::size_t var = 0;
  std::size_t row = 0;
  std::size_t col = 0;
  Complex coeff = 0.0;
};
using LinearForm = std::vector<Term>;

// Contributes coeff * X_var(row, col) to output entry (out_row, out_col).
// Only the upper triangle out_row <= out_col is given; the rest follows from
// Hermiticity, and diagonal outputs keep their real part.
struct MapTerm {
  std::size_t out_row = 0;
  std::size_t out_col = 0;
  std::size_t var = 0;
  std::size_t row = 0;
  std::size_t col = 0;
  Complex coeff = 0.0;
};

// constant + sum(terms) >= 0.
struct PsdConstraint {
  std::string name;
  std::size_t side = 0;
  Domain domain = Domain::kHermitian;
  ComplexMatrix constant;
  std::vector<MapTerm> terms;

  // True if the constraint reads exactly X_v >= 0 for one variable v.
  bool is_plain(const std::vector<Variable>& vars, std::size_t* var) const;
};

struct EqualityConstraint {
  std::string name;
  LinearForm lhs;
  double rhs = 0.0;
};

struct SdpProblem {
  Sense sense = Sense::kMaximize;
  std::vector<Variable> variables;
  LinearForm objective;
  std::vector<PsdConstraint> psd;
  std::vector<EqualityConstraint> equalities;

  std::size_t add_variable(std::string name, std::size_t side, Domain domain);
  void require_psd(std::size_t var);
  // Throws DimensionError when indices or sides are inconsistent.
  void validate() const;
};

// Re tr(A X) for a dense coefficient matrix A.
LinearForm trace_form(std::size_t var, const ComplexMatrix& a);

struct SdpOptions {
  double gap_tol = 1e-7;
  double feas_tol = 1e-8;
  int max_iters = 200;
  double step_fraction = 0.95;  // fraction of the distance to the cone boundary
};

struct IterationLog {
  int iteration = 0;
  double primal = 0.0;
  double dual = 0.0;
  double primal_infeasibility = 0.0;
  double dual_infeasibility = 0.0;
  double complementarity = 0.0;
};

struct SdpSolution {
  Status status = Status::kMaxIterations;
  double primal_value = 0.0;
  double dual_value = 0.0;
  double gap = 0.0;
  double primal_infeasibility = 0.0;
  double dual_infeasibility = 0.0;
  std::vector<ComplexMatrix> values;  // one per variable
  int iterations = 0;
  std::vector<IterationLog> history;
  std::string message;
};

SdpSolution solve(const SdpProblem& p, const SdpOptions& opts = {});

// Replaces every Hermitian variable and constraint by its real-symmetric
// embedding H -> [[Re H, -Im H], [Im H, Re H]].
SdpProblem embed_complex(const SdpProblem& p);
RealMatrix embed_hermitian(const ComplexMatrix& h);
ComplexMatrix unembed_hermitian(const RealMatrix& y);

double evaluate(const LinearForm& form, std::span<const ComplexMatrix> values);
ComplexMatrix evaluate(const PsdConstraint& c,
                       std::span<const ComplexMatrix> values);

}  // namespace qgames::sdp

#endif  // QGAMES_SDP_HPP_
