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

// Rank-one quantum games. A game is the matrix M = tr_C |psi><gamma| on
// H_A (x) H_B, with register order (A, B) and basis index a * dB + b.

#ifndef QGAMES_GAME_HPP_
#define QGAMES_GAME_HPP_

#include <cstddef>
#include <optional>
#include <random>
#include <string>

#include "qgames/tensor.hpp"

namespace qgames {

inline constexpr std::size_t kDefaultSideCap = 4096;

struct RankOneGame {
  std::size_t dA = 1;
  std::size_t dB = 1;
  ComplexMatrix M;

  // Checks shape, finiteness and trace_norm(M) <= 1 + tol.
  static RankOneGame make(std::size_t dA, std::size_t dB, ComplexMatrix M,
                          double tol = 1e-9);
  void validate(double tol = 1e-9) const;
};

// Register order (A, B, C); index (a * dB + b) * dC + c.
struct GamePurification {
  std::size_t dA = 1;
  std::size_t dB = 1;
  std::size_t dC = 1;
  ComplexVector psi;
  ComplexVector gamma;

  void validate(double tol = 1e-10) const;
};

struct SchurMatrix {
  std::size_t n = 1;
  ComplexMatrix phi;
};

struct GameWithStates {
  RankOneGame game;
  GamePurification purification;
};

RankOneGame from_states(const GamePurification& p);
GamePurification purify(const RankOneGame& g);

// G_C(n) = (1/n) sum_i |i><0| (x) |0><i|.
GameWithStates game_gc(std::size_t n);
// G_R(n) = (1/n) sum_i |0><i| (x) |i><0|.
GameWithStates game_gr(std::size_t n);
// (G_C(n) + G_R(n)) / 2 with a C register of dimension 2n.
GameWithStates game_gcr(std::size_t n);

// M = sum_ij phi_ij |i><j| (x) |i><j|.
GameWithStates schur_game(const SchurMatrix& s);
std::optional<SchurMatrix> is_schur(const RankOneGame& g,
                                    std::string* diagnostic = nullptr,
                                    double tol = 1e-10);

struct SchurFamilyMember {
  SchurMatrix phi;
  RankOneGame game;
};
// phi = 2^{-3k/2} A^{(x)k}, A = [[1, 1], [1, -1]].
SchurFamilyMember schur_an_game(std::size_t k);
// Witness 2^{-3k/2} B^{(x)k} with B the 2x2 all-ones matrix.
ComplexMatrix schur_an_witness(std::size_t k);

// The coherent state exchange game on qutrits with a two-level C register.
GameWithStates ltw_game();

RankOneGame zero_game(std::size_t dA, std::size_t dB);
// Random game with the requested trace norm.
RankOneGame random_game(std::size_t dA, std::size_t dB, double trace_norm_value,
                        std::mt19937_64& rng);

// Tensor product with A registers and B registers regrouped:
// (A1, B1) (x) (A2, B2) -> (A1 A2, B1 B2).
RankOneGame game_tensor(const RankOneGame& g1, const RankOneGame& g2,
                        std::size_t side_cap = kDefaultSideCap);
RankOneGame game_power(const RankOneGame& g, std::size_t k,
                       std::size_t side_cap = kDefaultSideCap);
GamePurification purification_tensor(const GamePurification& p1,
                                     const GamePurification& p2);
GamePurification purification_power(const GamePurification& p, std::size_t k);

// True iff the reduced states of psi and gamma on C agree, i.e. some unitary
// on A B maps psi to gamma (maximal value one).
bool check_maximal_value_one(const GamePurification& p, double tol = 1e-8);

}  // namespace qgames

#endif  // QGAMES_GAME_HPP_
