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

// Game values: maximal value V = ||M||_1^2, one-way value
// w_qow = ||M||_{S1 (x)_h S1}^2, and a bracket on the entangled value w*
// from the symmetrized Haagerup norm mu (mu^2 / 4 <= w* <= mu^2).
//
// Haagerup norms are computed on the realigned matrix
//   R(u)[(a, a'), (b, b')] = u[(a, b), (a', b')].
// u = sum_i A_i (x) B_i is the same as R(u) = sum_i vec(A_i) vec(B_i)^T, so
// ||u||_h <= 1 exactly when some W_A, W_B make
//   Z = [[W_A, R(u)], [R(u)^*, W_B]] >= 0,  tr_2 W_A <= I_A,  tr_1 W_B <= I_B,
// where tr_2 W_A = sum_i A_i A_i^* and tr_1 W_B = (sum_i B_i^* B_i)^T. The
// transposed norm h^t swaps the partial traces.

#ifndef QGAMES_VALUES_HPP_
#define QGAMES_VALUES_HPP_

#include <cstddef>
#include <cstdint>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "qgames/game.hpp"
#include "qgames/protocol.hpp"
#include "qgames/sdp.hpp"

namespace qgames {

class SolverError : public std::runtime_error {
 public:
  SolverError(const std::string& what, sdp::Status status)
      : std::runtime_error(what), status_(status) {}
  sdp::Status status() const { return status_; }

 private:
  sdp::Status status_;
};

struct ValueOptions {
  sdp::SdpOptions sdp;
  std::string dump_sdp_path;  // written before solving when nonempty
  // mu needs 2 dA^2 dB^2 coupling equalities; refuse beyond this many.
  std::size_t mu_max_coupling = 4096;
};

ComplexMatrix realign(const ComplexMatrix& u, std::size_t dA, std::size_t dB);
ComplexMatrix unrealign(const ComplexMatrix& r, std::size_t dA, std::size_t dB);

struct HaagerupWitness {
  std::size_t dA = 1;
  std::size_t dB = 1;
  ComplexMatrix u;
  ComplexMatrix wa, wb;  // h structure
  bool has_transposed = false;
  ComplexMatrix wa_t, wb_t;  // h^t structure
};

// u = sum_i A_i (x) B_i read off a PSD factorization of the h block.
struct Decomposition {
  std::vector<ComplexMatrix> a, b;
};
Decomposition haagerup_decomposition(const HaagerupWitness& w);

bool haagerup_witness_check(const HaagerupWitness& w, double tol);

struct NormResult {
  double primal = 0.0;  // certified achievable pairing
  double dual = 0.0;    // certified upper bound
  int iterations = 0;
  sdp::Status status = sdp::Status::kOptimal;
  HaagerupWitness witness;
};

double maximal_value(const RankOneGame& g);

sdp::SdpProblem haagerup_program(const RankOneGame& g);
sdp::SdpProblem mu_program(const RankOneGame& g);
// min t with ||u||_{B (x)_h B} <= t.
sdp::SdpProblem haagerup_norm_program(const ComplexMatrix& u, std::size_t dA,
                                      std::size_t dB);

// ||M||_{S1 (x)_h S1}; throws SolverError unless the solve is optimal.
NormResult haagerup_dual_norm(const RankOneGame& g, const ValueOptions& opts = {});
NormResult mu_norm(const RankOneGame& g, const ValueOptions& opts = {});
double haagerup_norm(const ComplexMatrix& u, std::size_t dA, std::size_t dB,
                     const ValueOptions& opts = {});

// primal^2 of haagerup_dual_norm.
double qow_value(const RankOneGame& g, const ValueOptions& opts = {});

struct Bound {
  double value = 0.0;
  std::string source;
};

struct ValueReport {
  std::size_t dA = 1, dB = 1;
  double V = 0.0;
  double qow = 0.0, qow_primal = 0.0, qow_dual = 0.0;
  double mu = 0.0, mu_primal = 0.0, mu_dual = 0.0;
  double seesaw = 0.0;
  double identity = 0.0;
  Bound omega_star_lower, omega_star_upper;
  double tol = 0.0;
  int qow_iterations = 0, mu_iterations = 0;
  std::size_t seesaw_dAp = 0, seesaw_dBp = 0;
  int seesaw_restarts = 0, seesaw_iters = 0;
  std::uint64_t seed = 0;
};

ValueReport entangled_value_bounds(const RankOneGame& g, const ValueOptions& opts,
                                   const SeesawConfig& seesaw);

// S(G) = inf{ ||psi||_1 : |phi_ij| <= |psi_ij| } for Schur games.
double schur_s_upper(const SchurMatrix& phi, const ComplexMatrix& psi);
std::pair<double, ComplexMatrix> schur_s_search(const SchurMatrix& phi, int iters,
                                                std::uint64_t seed);

struct SchurEquivalenceReport {
  double V = 0.0;
  double qow = 0.0, qow_dual = 0.0;
  double mu = 0.0, mu_dual = 0.0;
  double s_upper = 0.0;
  ComplexMatrix s_witness;
  double omega_star_lower = 0.0, omega_star_upper = 0.0;
  bool qow_below_s_squared = false;  // qow <= S^2 + tol
  bool mu_quarter_below_qow = false;  // mu^2 / 4 <= qow + tol
};

SchurEquivalenceReport schur_equivalence_check(const SchurMatrix& phi,
                                               const ValueOptions& opts = {},
                                               int search_iters = 50,
                                               std::uint64_t seed = 0);

}  // namespace qgames

#endif  // QGAMES_VALUES_HPP_
