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

#include <set>
#include <utility>

#include "qgames/sdp.hpp"

namespace qgames::sdp {

const char* to_string(Status s) {
  switch (s) {
    case Status::kOptimal: return "optimal";
    case Status::kInfeasible: return "infeasible";
    case Status::kUnbounded: return "unbounded";
    case Status::kMaxIterations: return "max-iters";
  }
  return "unknown";
}

const char* to_string(Domain d) {
  return d == Domain::kHermitian ? "hermitian" : "real-symmetric";
}

std::size_t SdpProblem::add_variable(std::string name, std::size_t side,
                                     Domain domain) {
  if (side == 0) throw DimensionError("variable " + name + " has side 0");
  variables.push_back({std::move(name), side, domain});
  return variables.size() - 1;
}

void SdpProblem::require_psd(std::size_t var) {
  const Variable& v = variables.at(var);
  PsdConstraint c;
  c.name = v.name + " >= 0";
  c.side = v.side;
  c.domain = v.domain;
  c.constant = ComplexMatrix::Zero(v.side, v.side);
  for (std::size_t i = 0; i < v.side; ++i) {
    for (std::size_t j = i; j < v.side; ++j) {
      c.terms.push_back({i, j, var, i, j, 1.0});
    }
  }
  psd.push_back(std::move(c));
}

bool PsdConstraint::is_plain(const std::vector<Variable>& vars,
                             std::size_t* var) const {
  if (terms.empty() || terms.size() != side * (side + 1) / 2) return false;
  if (constant.size() != 0 && constant.cwiseAbs().maxCoeff() != 0.0) {
    return false;
  }
  const std::size_t v = terms.front().var;
  if (v >= vars.size() || vars[v].side != side || vars[v].domain != domain) {
    return false;
  }
  std::set<std::pair<std::size_t, std::size_t>> seen;
  for (const MapTerm& t : terms) {
    if (t.var != v || t.coeff != Complex(1.0)) return false;
    if (t.row != t.out_row || t.col != t.out_col) return false;
    if (!seen.insert({t.out_row, t.out_col}).second) return false;
  }
  if (var != nullptr) *var = v;
  return true;
}

namespace {

void check_term(const std::vector<Variable>& vars, std::size_t var,
                std::size_t row, std::size_t col, const std::string& where) {
  if (var >= vars.size()) {
    throw DimensionError(where + ": unknown variable index");
  }
  if (row >= vars[var].side || col >= vars[var].side) {
    throw DimensionError(where + ": entry outside variable " + vars[var].name);
  }
}

}  // namespace

void SdpProblem::validate() const {
  for (const Term& t : objective) check_term(variables, t.var, t.row, t.col, "objective");
  for (const auto& e : equalities) {
    for (const Term& t : e.lhs) check_term(variables, t.var, t.row, t.col, e.name);
  }
  for (const auto& c : psd) {
    if (c.side == 0) throw DimensionError(c.name + ": side 0");
    if (c.constant.size() != 0 &&
        (c.constant.rows() != static_cast<Eigen::Index>(c.side) ||
         c.constant.cols() != static_cast<Eigen::Index>(c.side))) {
      throw DimensionError(c.name + ": constant has wrong shape");
    }
    for (const MapTerm& t : c.terms) {
      check_term(variables, t.var, t.row, t.col, c.name);
      if (t.out_row > t.out_col || t.out_col >= c.side) {
        throw DimensionError(c.name + ": output entry outside upper triangle");
      }
    }
  }
}

LinearForm trace_form(std::size_t var, const ComplexMatrix& a) {
  LinearForm f;
  for (Eigen::Index i = 0; i < a.rows(); ++i) {
    for (Eigen::Index j = 0; j < a.cols(); ++j) {
      if (a(i, j) != Complex(0.0)) {
        f.push_back({var, static_cast<std::size_t>(j),
                     static_cast<std::size_t>(i), a(i, j)});
      }
    }
  }
  return f;
}

double evaluate(const LinearForm& form, std::span<const ComplexMatrix> values) {
  double acc = 0.0;
  for (const Term& t : form) acc += (t.coeff * values[t.var](t.row, t.col)).real();
  return acc;
}

ComplexMatrix evaluate(const PsdConstraint& c,
                       std::span<const ComplexMatrix> values) {
  ComplexMatrix f = c.constant.size() != 0
                        ? ComplexMatrix(c.constant)
                        : ComplexMatrix::Zero(c.side, c.side);
  ComplexMatrix upper = ComplexMatrix::Zero(c.side, c.side);
  for (const MapTerm& t : c.terms) {
    upper(t.out_row, t.out_col) += t.coeff * values[t.var](t.row, t.col);
  }
  for (std::size_t p = 0; p < c.side; ++p) {
    f(p, p) = (f(p, p) + upper(p, p)).real();
    for (std::size_t q = p + 1; q < c.side; ++q) {
      f(p, q) += upper(p, q);
      f(q, p) = std::conj(f(p, q));
    }
  }
  if (c.domain == Domain::kRealSymmetric) f = f.real().cast<Complex>();
  return f;
}

}  // namespace qgames::sdp
