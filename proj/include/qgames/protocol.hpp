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

// Player strategies for rank-one games and the see-saw lower bound on the
// entangled value.

#ifndef QGAMES_PROTOCOL_HPP_
#define QGAMES_PROTOCOL_HPP_

#include <cstddef>
#include <cstdint>
#include <string>
#include <variant>
#include <vector>

#include "qgames/game.hpp"
#include "qgames/tensor.hpp"

namespace qgames {

// U acts on (A, A'), V on (B, B'), phi lives on (A', B').
struct EntangledStrategy {
  std::size_t dAp = 1;
  std::size_t dBp = 1;
  ComplexMatrix U;
  ComplexMatrix V;
  ComplexVector phi;

  void validate(std::size_t dA, std::size_t dB) const;
};

// A' starts in |0>; Alice applies U on (A, A'), then Bob applies V on (B, A').
struct OneWayStrategy {
  std::size_t dAp = 1;
  ComplexMatrix U;
  ComplexMatrix V;

  void validate(std::size_t dA, std::size_t dB) const;
};

using Strategy = std::variant<EntangledStrategy, OneWayStrategy>;

double win_prob_entangled(const GamePurification& p, const EntangledStrategy& s);
double win_prob_oneway(const GamePurification& p, const OneWayStrategy& s);
double win_prob(const GamePurification& p, const Strategy& s);

// identity        entangled, no ancilla, U = V = I_n            (dA = dB = n)
// gc-oneway-flip  one-way, A' = C^n, U = SWAP(A,A'), V = SWAP(B,A')
// gcr-oneway      same unitaries, played on G_{C+R}(n)
// gcr2-swap       entangled on the square game (dA = dB = n^2): each player
//                 swaps its two copies
const std::vector<std::string>& strategy_names();
Strategy named_strategy(const std::string& name, std::size_t n);

// W = tr_AB[(U (x) V)(M (x) 1)] as a map (A', B') -> (A', B').
ComplexMatrix contracted_operator(const RankOneGame& g, const ComplexMatrix& U,
                                  const ComplexMatrix& V, std::size_t dAp,
                                  std::size_t dBp);

struct SeesawConfig {
  std::size_t dAp = 0;  // 0 selects dA
  std::size_t dBp = 0;  // 0 selects dB
  int restarts = 20;
  int iters = 200;
  std::uint64_t seed = 0;
  double window_tol = 1e-9;
  int window = 10;
};

struct SeesawResult {
  double value = 0.0;  // win_prob_entangled of the returned strategy
  EntangledStrategy strategy;
  int best_restart = 0;
  std::vector<double> restart_values;
  // Objective after each iteration of every restart.
  std::vector<std::vector<double>> traces;
};

SeesawResult seesaw_lower_bound(const RankOneGame& g, const SeesawConfig& cfg);

}  // namespace qgames

#endif  // QGAMES_PROTOCOL_HPP_
