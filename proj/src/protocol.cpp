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

#include "qgames/protocol.hpp"

#include <cmath>
#include <stdexcept>

namespace qgames {
namespace {

void check_unitary(const ComplexMatrix& u, std::size_t side, const char* what) {
  if (u.rows() != static_cast<Eigen::Index>(side) ||
      u.cols() != static_cast<Eigen::Index>(side)) {
    throw DimensionError(std::string(what) + " must be " + std::to_string(side) +
                         "x" + std::to_string(side));
  }
  if (!is_unitary(u, 1e-9)) throw std::invalid_argument(std::string(what) + " is not unitary");
}

// |(<gamma| (x) 1) state|^2 where gamma covers the leading (A, B, C) registers.
double project_on_gamma(const GamePurification& p, const ComplexVector& state) {
  const std::size_t abc = p.dA * p.dB * p.dC;
  const std::size_t rest = static_cast<std::size_t>(state.size()) / abc;
  Eigen::Map<const ComplexMatrix> mat(state.data(), abc, rest);
  const ComplexVector out = mat.transpose() * p.gamma.conjugate();
  return out.squaredNorm();
}

}  // namespace

void EntangledStrategy::validate(std::size_t dA, std::size_t dB) const {
  if (dAp == 0 || dBp == 0) throw DimensionError("ancilla dimensions must be >= 1");
  check_unitary(U, dA * dAp, "U");
  check_unitary(V, dB * dBp, "V");
  if (phi.size() != static_cast<Eigen::Index>(dAp * dBp)) {
    throw DimensionError("phi must have length dAp*dBp");
  }
  if (std::abs(phi.norm() - 1.0) > 1e-10) throw std::invalid_argument("phi is not a unit vector");
}

void OneWayStrategy::validate(std::size_t dA, std::size_t dB) const {
  if (dAp == 0) throw DimensionError("ancilla dimension must be >= 1");
  check_unitary(U, dA * dAp, "U");
  check_unitary(V, dB * dAp, "V");
}

double win_prob_entangled(const GamePurification& p, const EntangledStrategy& s) {
  s.validate(p.dA, p.dB);
  const RegisterShape shape{p.dA, p.dB, p.dC, s.dAp, s.dBp};
  ComplexVector state = kron(p.psi, s.phi);
  const std::size_t on_a[] = {0, 3};
  const std::size_t on_b[] = {1, 4};
  state = apply_on_registers(state, shape, s.U, on_a);
  state = apply_on_registers(state, shape, s.V, on_b);
  return project_on_gamma(p, state);
}

double win_prob_oneway(const GamePurification& p, const OneWayStrategy& s) {
  s.validate(p.dA, p.dB);
  const RegisterShape shape{p.dA, p.dB, p.dC, s.dAp};
  ComplexVector ancilla = ComplexVector::Zero(s.dAp);
  ancilla(0) = 1.0;
  ComplexVector state = kron(p.psi, ancilla);
  const std::size_t on_a[] = {0, 3};
  const std::size_t on_b[] = {1, 3};
  state = apply_on_registers(state, shape, s.U, on_a);
  state = apply_on_registers(state, shape, s.V, on_b);
  return project_on_gamma(p, state);
}

double win_prob(const GamePurification& p, const Strategy& s) {
  return std::visit(
      [&](const auto& x) -> double {
        using T = std::decay_t<decltype(x)>;
        if constexpr (std::is_same_v<T, EntangledStrategy>) {
          return win_prob_entangled(p, x);
        } else {
          return win_prob_oneway(p, x);
        }
      },
      s);
}

const std::vector<std::string>& strategy_names() {
  static const std::vector<std::string> names = {"identity", "gc-oneway-flip",
                                                 "gcr-oneway", "gcr2-swap"};
  return names;
}

Strategy named_strategy(const std::string& name, std::size_t n) {
  if (n == 0) throw std::invalid_argument("named_strategy: n must be >= 1");
  if (name == "identity") {
    EntangledStrategy s;
    s.U = identity(n);
    s.V = identity(n);
    s.phi = ComplexVector::Ones(1);
    return s;
  }
  if (name == "gc-oneway-flip" || name == "gcr-oneway") {
    OneWayStrategy s;
    s.dAp = n;
    s.U = swap_operator(n, n);
    s.V = swap_operator(n, n);
    return s;
  }
  if (name == "gcr2-swap") {
    EntangledStrategy s;
    s.U = swap_operator(n, n);
    s.V = swap_operator(n, n);
    s.phi = ComplexVector::Ones(1);
    return s;
  }
  throw std::invalid_argument("unknown strategy '" + name + "'");
}

}  // namespace qgames
