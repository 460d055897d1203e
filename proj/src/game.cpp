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

#include "qgames/game.hpp"

#include <cmath>
#include <string>
#include <vector>

namespace qgames {
namespace {

std::string dims(std::size_t a, std::size_t b) {
  return std::to_string(a) + "x" + std::to_string(b);
}

// Rows index (a, b), columns index c.
Eigen::Map<const ComplexMatrix> as_matrix(const ComplexVector& v, std::size_t rows,
                                          std::size_t cols) {
  return Eigen::Map<const ComplexMatrix>(v.data(), rows, cols);
}

void require_positive(std::size_t n, const char* what) {
  if (n == 0) throw std::invalid_argument(std::string(what) + ": n must be >= 1");
}

}  // namespace

RankOneGame RankOneGame::make(std::size_t dA, std::size_t dB, ComplexMatrix M,
                              double tol) {
  RankOneGame g{dA, dB, std::move(M)};
  g.validate(tol);
  return g;
}

void RankOneGame::validate(double tol) const {
  if (dA == 0 || dB == 0) throw DimensionError("game dimensions must be positive");
  const auto side = static_cast<Eigen::Index>(dA * dB);
  if (M.rows() != side || M.cols() != side) {
    throw DimensionError("game matrix is " + dims(M.rows(), M.cols()) +
                         ", expected side dA*dB = " + std::to_string(side));
  }
  if (!is_finite(M)) throw std::invalid_argument("game matrix has non-finite entries");
  const double t = trace_norm(M);
  if (t > 1.0 + tol) {
    throw std::invalid_argument("game matrix has trace norm " + std::to_string(t) +
                                " > 1");
  }
}

void GamePurification::validate(double tol) const {
  if (dA == 0 || dB == 0 || dC == 0) {
    throw DimensionError("purification dimensions must be positive");
  }
  const auto n = static_cast<Eigen::Index>(dA * dB * dC);
  if (psi.size() != n || gamma.size() != n) {
    throw DimensionError("purification vectors must have length dA*dB*dC = " +
                         std::to_string(n));
  }
  if (std::abs(psi.norm() - 1.0) > tol || std::abs(gamma.norm() - 1.0) > tol) {
    throw std::invalid_argument("purification vectors must be unit vectors");
  }
}

RankOneGame from_states(const GamePurification& p) {
  const auto n = static_cast<Eigen::Index>(p.dA * p.dB * p.dC);
  if (p.psi.size() != n || p.gamma.size() != n) {
    throw DimensionError("from_states: vector length does not match dA*dB*dC");
  }
  const auto psi = as_matrix(p.psi, p.dA * p.dB, p.dC);
  const auto gamma = as_matrix(p.gamma, p.dA * p.dB, p.dC);
  return RankOneGame{p.dA, p.dB, psi * gamma.adjoint()};
}

GamePurification purify(const RankOneGame& g) {
  g.validate();
  const Svd d = svd(g.M);
  std::size_t r = 0;
  while (r < static_cast<std::size_t>(d.s.size()) && d.s(r) > 0.0) ++r;
  const double used = d.s.head(r).sum();
  // Slack at rounding level would enter the C marginals as sqrt(eps).
  const double slack = 1.0 - used;
  const double pad = slack > 1e-12 ? std::sqrt(slack) : 0.0;

  GamePurification p;
  p.dA = g.dA;
  p.dB = g.dB;
  p.dC = r + 2;
  const std::size_t ab = g.dA * g.dB;
  ComplexMatrix psi = ComplexMatrix::Zero(ab, p.dC);
  ComplexMatrix gamma = ComplexMatrix::Zero(ab, p.dC);
  for (std::size_t i = 0; i < r; ++i) {
    const double w = std::sqrt(d.s(i));
    psi.col(i) = w * d.u.col(i);
    gamma.col(i) = w * d.vdag.row(i).adjoint();
  }
  psi(0, r) = pad;
  gamma(0, r + 1) = pad;
  p.psi = Eigen::Map<const ComplexVector>(psi.data(), psi.size());
  p.gamma = Eigen::Map<const ComplexVector>(gamma.data(), gamma.size());
  return p;
}

GameWithStates game_gc(std::size_t n) {
  require_positive(n, "game_gc");
  GameWithStates out;
  GamePurification& p = out.purification;
  p.dA = p.dB = p.dC = n;
  p.psi = ComplexVector::Zero(n * n * n);
  p.gamma = ComplexVector::Zero(n * n * n);
  const double w = 1.0 / std::sqrt(static_cast<double>(n));
  for (std::size_t i = 0; i < n; ++i) {
    p.psi((i * n + 0) * n + i) = w;
    p.gamma((0 * n + i) * n + i) = w;
  }
  out.game.dA = out.game.dB = n;
  out.game.M = ComplexMatrix::Zero(n * n, n * n);
  for (std::size_t i = 0; i < n; ++i) out.game.M(i * n, i) = 1.0 / n;
  return out;
}

GameWithStates game_gr(std::size_t n) {
  require_positive(n, "game_gr");
  GameWithStates out;
  GamePurification& p = out.purification;
  p.dA = p.dB = p.dC = n;
  p.psi = ComplexVector::Zero(n * n * n);
  p.gamma = ComplexVector::Zero(n * n * n);
  const double w = 1.0 / std::sqrt(static_cast<double>(n));
  for (std::size_t i = 0; i < n; ++i) {
    p.psi((0 * n + i) * n + i) = w;
    p.gamma((i * n + 0) * n + i) = w;
  }
  out.game.dA = out.game.dB = n;
  out.game.M = ComplexMatrix::Zero(n * n, n * n);
  for (std::size_t i = 0; i < n; ++i) out.game.M(i, i * n) = 1.0 / n;
  return out;
}

GameWithStates game_gcr(std::size_t n) {
  require_positive(n, "game_gcr");
  GameWithStates out;
  GamePurification& p = out.purification;
  p.dA = p.dB = n;
  p.dC = 2 * n;
  p.psi = ComplexVector::Zero(n * n * 2 * n);
  p.gamma = ComplexVector::Zero(n * n * 2 * n);
  const double w = 1.0 / std::sqrt(2.0 * static_cast<double>(n));
  const std::size_t dc = 2 * n;
  for (std::size_t i = 0; i < n; ++i) {
    // C basis (i, t) -> 2 i + t.
    p.psi((i * n + 0) * dc + 2 * i) += w;
    p.psi((0 * n + i) * dc + 2 * i + 1) += w;
    p.gamma((0 * n + i) * dc + 2 * i) += w;
    p.gamma((i * n + 0) * dc + 2 * i + 1) += w;
  }
  out.game.dA = out.game.dB = n;
  out.game.M = 0.5 * (game_gc(n).game.M + game_gr(n).game.M);
  return out;
}

GameWithStates schur_game(const SchurMatrix& s) {
  const std::size_t n = s.n;
  if (s.phi.rows() != static_cast<Eigen::Index>(n) ||
      s.phi.cols() != static_cast<Eigen::Index>(n)) {
    throw DimensionError("schur_game: phi must be n x n");
  }
  const Svd d = svd(s.phi);
  const double used = d.s.sum();
  if (used > 1.0 + 1e-9) {
    throw std::invalid_argument("schur_game: trace norm of phi is " +
                                std::to_string(used) + " > 1");
  }
  // Slack at rounding level would enter the C marginals as sqrt(eps).
  const double slack = 1.0 - used;
  const double pad = slack > 1e-12 ? std::sqrt(slack) : 0.0;
  ComplexMatrix alpha = d.u * d.s.cwiseSqrt().asDiagonal();
  ComplexMatrix beta = d.vdag.adjoint() * d.s.cwiseSqrt().asDiagonal();

  GameWithStates out;
  GamePurification& p = out.purification;
  p.dA = p.dB = n;
  p.dC = n + 2;
  p.psi = ComplexVector::Zero(n * n * p.dC);
  p.gamma = ComplexVector::Zero(n * n * p.dC);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t t = 0; t < n; ++t) {
      p.psi((i * n + i) * p.dC + t) = alpha(i, t);
      p.gamma((i * n + i) * p.dC + t) = beta(i, t);
    }
  }
  p.psi(n) = pad;
  p.gamma(n + 1) = pad;

  out.game.dA = out.game.dB = n;
  out.game.M = ComplexMatrix::Zero(n * n, n * n);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) out.game.M(i * n + i, j * n + j) = s.phi(i, j);
  }
  return out;
}

std::optional<SchurMatrix> is_schur(const RankOneGame& g, std::string* diagnostic,
                                    double tol) {
  if (g.dA != g.dB) {
    if (diagnostic) *diagnostic = "dA != dB, a Schur game needs equal dimensions";
    return std::nullopt;
  }
  const std::size_t n = g.dA;
  for (std::size_t r = 0; r < n * n; ++r) {
    for (std::size_t c = 0; c < n * n; ++c) {
      const bool diag_pattern = (r / n == r % n) && (c / n == c % n);
      if (!diag_pattern && std::abs(g.M(r, c)) > tol) {
        if (diagnostic) {
          *diagnostic = "entry (" + std::to_string(r) + ", " + std::to_string(c) +
                        ") lies off the |i><j| (x) |i><j| pattern";
        }
        return std::nullopt;
      }
    }
  }
  SchurMatrix s;
  s.n = n;
  s.phi = ComplexMatrix(n, n);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) s.phi(i, j) = g.M(i * n + i, j * n + j);
  }
  return s;
}

namespace {

ComplexMatrix kron_power(const ComplexMatrix& a, std::size_t k) {
  ComplexMatrix out = ComplexMatrix::Identity(1, 1);
  for (std::size_t i = 0; i < k; ++i) out = kron(out, a);
  return out;
}

}  // namespace

SchurFamilyMember schur_an_game(std::size_t k) {
  require_positive(k, "schur_an_game");
  if (k > 6) throw DimensionError("schur_an_game: k > 6 exceeds the side cap 4096");
  ComplexMatrix a(2, 2);
  a << 1.0, 1.0, 1.0, -1.0;
  SchurMatrix s;
  s.n = std::size_t{1} << k;
  s.phi = std::pow(2.0, -1.5 * static_cast<double>(k)) * kron_power(a, k);
  SchurFamilyMember out;
  out.phi = s;
  const std::size_t n = s.n;
  out.game.dA = out.game.dB = n;
  out.game.M = ComplexMatrix::Zero(n * n, n * n);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) out.game.M(i * n + i, j * n + j) = s.phi(i, j);
  }
  return out;
}

ComplexMatrix schur_an_witness(std::size_t k) {
  require_positive(k, "schur_an_witness");
  return std::pow(2.0, -1.5 * static_cast<double>(k)) *
         kron_power(ComplexMatrix::Ones(2, 2), k);
}

GameWithStates ltw_game() {
  GameWithStates out;
  GamePurification& p = out.purification;
  p.dA = p.dB = 3;
  p.dC = 2;
  p.psi = ComplexVector::Zero(18);
  p.gamma = ComplexVector::Zero(18);
  auto idx = [](std::size_t a, std::size_t b, std::size_t c) {
    return (a * 3 + b) * 2 + c;
  };
  const double r = 1.0 / std::sqrt(2.0);
  p.psi(idx(0, 0, 0)) = r;
  p.psi(idx(1, 1, 1)) = 0.5;
  p.psi(idx(2, 2, 1)) = 0.5;
  p.gamma(idx(0, 0, 0)) = r;
  p.gamma(idx(1, 1, 1)) = r;
  out.game = from_states(p);
  return out;
}

RankOneGame zero_game(std::size_t dA, std::size_t dB) {
  return RankOneGame{dA, dB, ComplexMatrix::Zero(dA * dB, dA * dB)};
}

RankOneGame random_game(std::size_t dA, std::size_t dB, double trace_norm_value,
                        std::mt19937_64& rng) {
  ComplexMatrix m = random_gaussian(dA * dB, dA * dB, rng);
  m *= trace_norm_value / trace_norm(m);
  return RankOneGame{dA, dB, std::move(m)};
}

RankOneGame game_tensor(const RankOneGame& g1, const RankOneGame& g2,
                        std::size_t side_cap) {
  const std::size_t side = g1.dA * g1.dB * g2.dA * g2.dB;
  if (side > side_cap) {
    throw DimensionError("game_tensor: result side " + std::to_string(side) +
                         " exceeds the dimension cap " + std::to_string(side_cap));
  }
  const std::size_t perm[] = {0, 2, 1, 3};
  RankOneGame out;
  out.dA = g1.dA * g2.dA;
  out.dB = g1.dB * g2.dB;
  out.M = permute_registers(kron(g1.M, g2.M), {g1.dA, g1.dB, g2.dA, g2.dB}, perm);
  return out;
}

RankOneGame game_power(const RankOneGame& g, std::size_t k, std::size_t side_cap) {
  require_positive(k, "game_power");
  RankOneGame out = g;
  for (std::size_t i = 1; i < k; ++i) out = game_tensor(out, g, side_cap);
  return out;
}

GamePurification purification_tensor(const GamePurification& p1,
                                     const GamePurification& p2) {
  const std::size_t perm[] = {0, 3, 1, 4, 2, 5};
  const RegisterShape shape{p1.dA, p1.dB, p1.dC, p2.dA, p2.dB, p2.dC};
  GamePurification out;
  out.dA = p1.dA * p2.dA;
  out.dB = p1.dB * p2.dB;
  out.dC = p1.dC * p2.dC;
  out.psi = permute_registers(kron(p1.psi, p2.psi), shape, perm);
  out.gamma = permute_registers(kron(p1.gamma, p2.gamma), shape, perm);
  return out;
}

GamePurification purification_power(const GamePurification& p, std::size_t k) {
  require_positive(k, "purification_power");
  GamePurification out = p;
  for (std::size_t i = 1; i < k; ++i) out = purification_tensor(out, p);
  return out;
}

bool check_maximal_value_one(const GamePurification& p, double tol) {
  const auto psi = as_matrix(p.psi, p.dA * p.dB, p.dC);
  const auto gamma = as_matrix(p.gamma, p.dA * p.dB, p.dC);
  const ComplexMatrix gram_psi = psi.adjoint() * psi;
  const ComplexMatrix gram_gamma = gamma.adjoint() * gamma;
  return (gram_psi - gram_gamma).norm() <= tol;
}

}  // namespace qgames
