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

#include <cmath>
#include <numbers>
#include <random>
#include <string>
#include <vector>

#include <gtest/gtest.h>

#include "haagerup_oracle.hpp"
#include "oracles.hpp"
#include "qgames/game.hpp"
#include "qgames/protocol.hpp"
#include "qgames/values.hpp"

namespace qgames {
namespace {

constexpr double kSdpTol = 1e-5;

double dn(std::size_t n) { return static_cast<double>(n); }

RankOneGame product_game() {
  ComplexMatrix m = ComplexMatrix::Zero(4, 4);
  m(0, 0) = 1.0;
  return RankOneGame::make(2, 2, m);
}

// Re sum_st M_st u_st.
double pairing(const ComplexMatrix& m, const ComplexMatrix& u) {
  return m.cwiseProduct(u).sum().real();
}

SeesawConfig quick_seesaw() {
  SeesawConfig cfg;
  cfg.restarts = 4;
  cfg.iters = 100;
  cfg.seed = 3;
  return cfg;
}

std::vector<std::pair<std::string, RankOneGame>> canonical_games() {
  std::vector<std::pair<std::string, RankOneGame>> out;
  for (std::size_t n : {2u, 3u}) {
    out.emplace_back("gc" + std::to_string(n), game_gc(n).game);
    out.emplace_back("gr" + std::to_string(n), game_gr(n).game);
    out.emplace_back("gcr" + std::to_string(n), game_gcr(n).game);
  }
  out.emplace_back("a1", schur_an_game(1).game);
  out.emplace_back("a2", schur_an_game(2).game);
  out.emplace_back("ltw", ltw_game().game);
  out.emplace_back("product", product_game());
  return out;
}

// ---- maximal value -------------------------------------------------------

TEST(MaximalValue, CanonicalFamiliesHaveValueOne) {
  for (std::size_t n : {2u, 3u, 4u}) {
    EXPECT_NEAR(maximal_value(game_gr(n).game), 1.0, 1e-10);
    EXPECT_NEAR(maximal_value(game_gcr(n).game), 1.0, 1e-10);
  }
  EXPECT_EQ(maximal_value(zero_game(2, 3)), 0.0);
}

TEST(MaximalValue, IsSquaredTraceNormOfRandomGames) {
  std::mt19937_64 rng(401);
  for (int t = 0; t < 10; ++t) {
    const RankOneGame g = random_game(2, 3, 0.3 + 0.07 * t, rng);
    const double tn = oracle::trace_norm(g.M);
    EXPECT_NEAR(maximal_value(g), tn * tn, 1e-10);
  }
}

// ---- one-way value -------------------------------------------------------

TEST(Qow, CoherentGameIsOne) {
  for (std::size_t n : {2u, 3u, 4u}) {
    EXPECT_NEAR(qow_value(game_gc(n).game), 1.0, kSdpTol) << "n=" << n;
  }
}

TEST(Qow, ReverseGameHasSquareGap) {
  for (std::size_t n : {2u, 3u, 4u}) {
    const RankOneGame g = game_gr(n).game;
    EXPECT_NEAR(qow_value(g), 1.0 / dn(n * n), kSdpTol) << "n=" << n;
    EXPECT_NEAR(maximal_value(g), 1.0, 1e-10);
  }
}

TEST(Qow, MixedGameClosedForm) {
  for (std::size_t n : {2u, 3u, 4u}) {
    const double want = 0.25 * std::pow(1.0 + 1.0 / dn(n), 2);
    EXPECT_NEAR(qow_value(game_gcr(n).game), want, kSdpTol) << "n=" << n;
  }
}

TEST(Qow, ZeroGameIsZero) {
  const NormResult r = haagerup_dual_norm(zero_game(2, 2));
  EXPECT_NEAR(r.primal, 0.0, 1e-6);
  EXPECT_NEAR(r.dual, 0.0, 1e-6);
}

TEST(Qow, PrimalBelowDual) {
  std::mt19937_64 rng(402);
  for (int t = 0; t < 5; ++t) {
    const NormResult r = haagerup_dual_norm(random_game(2, 2, 1.0, rng));
    EXPECT_EQ(r.status, sdp::Status::kOptimal);
    EXPECT_LE(r.primal, r.dual + 1e-7);
    EXPECT_NEAR(r.primal, r.dual, 1e-6);
  }
}

// A global phase on M is absorbed by a phase on u, so the real-part
// objective loses nothing.
TEST(Qow, PhaseInvariance) {
  std::mt19937_64 rng(403);
  const RankOneGame g = random_game(2, 2, 1.0, rng);
  const double base = qow_value(g);
  for (double theta : {0.4, 1.9, std::numbers::pi}) {
    const RankOneGame h = RankOneGame::make(2, 2, std::polar(1.0, theta) * g.M);
    EXPECT_NEAR(qow_value(h), base, kSdpTol);
    EXPECT_NEAR(mu_norm(h).primal, mu_norm(g).primal, kSdpTol);
  }
}

// ---- witnesses -----------------------------------------------------------

TEST(Witness, TrivialCases) {
  HaagerupWitness w;
  w.dA = w.dB = 2;
  w.u = ComplexMatrix::Zero(4, 4);
  w.wa = ComplexMatrix::Zero(4, 4);
  w.wb = ComplexMatrix::Zero(4, 4);
  EXPECT_TRUE(haagerup_witness_check(w, 1e-9));
  w.u = identity(4);
  EXPECT_FALSE(haagerup_witness_check(w, 1e-9));
}

TEST(Witness, SolverOutputsPassAtTenTimesTolerance) {
  const double tol = 10.0 * sdp::SdpOptions{}.gap_tol;
  std::vector<RankOneGame> games = {game_gc(2).game, game_gr(3).game, game_gcr(2).game};
  std::mt19937_64 rng(404);
  for (int t = 0; t < 3; ++t) games.push_back(random_game(2, 2, 1.0, rng));
  for (const RankOneGame& g : games) {
    const NormResult h = haagerup_dual_norm(g);
    EXPECT_TRUE(haagerup_witness_check(h.witness, tol));
    EXPECT_NEAR(pairing(g.M, h.witness.u), h.primal, 1e-6);
    const NormResult m = mu_norm(g);
    EXPECT_TRUE(m.witness.has_transposed);
    EXPECT_TRUE(haagerup_witness_check(m.witness, tol));
    EXPECT_NEAR(pairing(g.M, m.witness.u), m.primal, 1e-6);
  }
}

TEST(Witness, DecompositionReconstructsAndIsContractive) {
  const RankOneGame g = game_gcr(2).game;
  const NormResult h = haagerup_dual_norm(g);
  const Decomposition d = haagerup_decomposition(h.witness);
  ASSERT_EQ(d.a.size(), d.b.size());
  ComplexMatrix sum = ComplexMatrix::Zero(4, 4);
  ComplexMatrix rows = ComplexMatrix::Zero(2, 2), cols = ComplexMatrix::Zero(2, 2);
  for (std::size_t i = 0; i < d.a.size(); ++i) {
    sum += oracle::kron(d.a[i], d.b[i]);
    rows += d.a[i] * d.a[i].adjoint();
    cols += d.b[i].adjoint() * d.b[i];
  }
  EXPECT_LT((sum - h.witness.u).cwiseAbs().maxCoeff(), 1e-6);
  EXPECT_LE(oracle::max_eigenvalue(rows), 1.0 + 1e-6);
  EXPECT_LE(oracle::max_eigenvalue(cols), 1.0 + 1e-6);
}

TEST(Witness, TamperedWitnessFails) {
  NormResult h = haagerup_dual_norm(game_gc(2).game);
  h.witness.u *= 1.5;
  EXPECT_FALSE(haagerup_witness_check(h.witness, 1e-6));
}

// ---- Haagerup norm vs explicit decompositions ----------------------------

TEST(HaagerupNorm, AgreesWithDecompositionSearch) {
  std::mt19937_64 rng(405);
  for (int t = 0; t < 3; ++t) {
    ComplexMatrix u = oracle::random_matrix(4, 4, rng);
    u /= u.norm();
    const double sdp_value = haagerup_norm(u, 2, 2);
    const auto bf = oracle::brute_force_haagerup(u, 2, 2, 8, 6, 10 + t);
    EXPECT_LT(bf.reconstruction_error, 1e-9);
    EXPECT_NEAR(sdp_value, bf.norm, 1e-3);
    // Any explicit decomposition is an upper bound.
    EXPECT_LE(sdp_value, bf.norm + 1e-6);
  }
}

TEST(HaagerupNorm, ElementaryTensorIsProductOfOperatorNorms) {
  std::mt19937_64 rng(406);
  const ComplexMatrix a = oracle::random_matrix(2, 2, rng);
  const ComplexMatrix b = oracle::random_matrix(3, 3, rng);
  const double want = std::sqrt(oracle::max_eigenvalue(a * a.adjoint()) *
                                oracle::max_eigenvalue(b.adjoint() * b));
  EXPECT_NEAR(haagerup_norm(oracle::kron(a, b), 2, 3), want, 1e-6);
}

// ---- mu ------------------------------------------------------------------

TEST(Mu, ElementaryProductGameIsOne) {
  EXPECT_NEAR(mu_norm(product_game()).primal, 1.0, kSdpTol);
}

TEST(Mu, CoherentGameSandwich) {
  for (std::size_t n : {2u, 3u}) {
    const NormResult m = mu_norm(game_gc(n).game);
    EXPECT_GE(m.primal, 1.0 / dn(n) - kSdpTol);
    EXPECT_LE(m.dual, 2.0 / dn(n) + kSdpTol);
  }
}

TEST(Mu, ZeroGameIsZero) { EXPECT_NEAR(mu_norm(zero_game(2, 2)).primal, 0.0, 1e-6); }

TEST(Mu, CouplingCapIsEnforced) {
  ValueOptions opts;
  opts.mu_max_coupling = 10;
  EXPECT_THROW(mu_norm(game_gc(2).game, opts), DimensionError);
}

// ---- bracket -------------------------------------------------------------

void expect_report_invariants(const ValueReport& r) {
  const double tol = 10.0 * r.tol + 1e-6;
  EXPECT_GE(r.omega_star_lower.value, 0.0);
  EXPECT_LE(r.omega_star_lower.value, r.omega_star_upper.value + 2.0 * tol);
  EXPECT_LE(r.omega_star_upper.value, 1.0 + tol);
  EXPECT_LE(r.mu * r.mu / 4.0, r.omega_star_upper.value + tol);
  EXPECT_LE(r.omega_star_lower.value, r.mu_dual * r.mu_dual + tol);
  EXPECT_LE(r.qow, r.V + tol);
  EXPECT_LE(r.mu, std::sqrt(r.qow_dual) + tol);
  const std::vector<std::string> lower = {"seesaw", "mu/4", "identity"};
  const std::vector<std::string> upper = {"mu^2", "qow", "V"};
  EXPECT_NE(std::find(lower.begin(), lower.end(), r.omega_star_lower.source), lower.end());
  EXPECT_NE(std::find(upper.begin(), upper.end(), r.omega_star_upper.source), upper.end());
}

TEST(Bracket, CoherentGameContainsQuarter) {
  const ValueReport r = entangled_value_bounds(game_gc(2).game, {}, quick_seesaw());
  expect_report_invariants(r);
  EXPECT_LE(r.omega_star_lower.value, 0.25 + 1e-6);
  EXPECT_GE(r.omega_star_upper.value, 0.25 - 1e-6);
}

TEST(Bracket, MixedGameContainsQuarterAndSeesawReachesIt) {
  const ValueReport r = entangled_value_bounds(game_gcr(2).game, {}, quick_seesaw());
  expect_report_invariants(r);
  EXPECT_LE(r.omega_star_lower.value, 0.25 + 1e-6);
  EXPECT_GE(r.omega_star_upper.value, 0.25 - 1e-6);
  EXPECT_GE(r.seesaw, 0.25 - 1e-6);
}

TEST(Bracket, CoincidingProductStatesCollapse) {
  const ValueReport r = entangled_value_bounds(product_game(), {}, quick_seesaw());
  expect_report_invariants(r);
  EXPECT_NEAR(r.omega_star_lower.value, 1.0, 1e-6);
  EXPECT_NEAR(r.omega_star_upper.value, 1.0, 1e-6);
}

TEST(Bracket, ZeroGame) {
  const ValueReport r = entangled_value_bounds(zero_game(2, 2), {}, quick_seesaw());
  EXPECT_EQ(r.V, 0.0);
  EXPECT_NEAR(r.qow, 0.0, 1e-6);
  EXPECT_NEAR(r.mu, 0.0, 1e-6);
  EXPECT_NEAR(r.seesaw, 0.0, 1e-12);
  EXPECT_NEAR(r.omega_star_upper.value, 0.0, 1e-6);
}

// ---- properties ----------------------------------------------------------

TEST(Properties, NormOrderingChain) {
  auto games = canonical_games();
  std::mt19937_64 rng(407);
  for (int t = 0; t < 20; ++t) {
    games.emplace_back("random" + std::to_string(t), random_game(2, 2, 0.5 + 0.025 * t, rng));
  }
  const double tol = 1e-5;
  for (const auto& [name, g] : games) {
    const ValueReport r = entangled_value_bounds(g, {}, quick_seesaw());
    SCOPED_TRACE(name);
    EXPECT_LE(r.seesaw, r.mu_dual * r.mu_dual + tol);
    EXPECT_LE(r.mu_dual * r.mu_dual, 4.0 * r.qow_dual + tol);
    EXPECT_LE(r.mu, std::sqrt(r.qow_dual) + tol);
    EXPECT_LE(r.qow, r.V + tol);
    EXPECT_LE(r.V, 1.0 + tol);
    expect_report_invariants(r);
  }
}

TEST(Properties, SandwichAroundKnownEntangledValues) {
  struct Known {
    RankOneGame g;
    double omega;
  };
  std::vector<Known> known;
  for (std::size_t n : {2u, 3u}) {
    known.push_back({game_gc(n).game, 1.0 / dn(n * n)});
    known.push_back({game_gcr(n).game, 1.0 / dn(n * n)});
  }
  known.push_back({game_power(game_gcr(2).game, 2), 0.0});  // only the lower side is known
  known.push_back({product_game(), 1.0});
  for (const Known& k : known) {
    const NormResult m = mu_norm(k.g);
    if (k.omega > 0.0) {
      EXPECT_LE(m.primal * m.primal / 4.0, k.omega + kSdpTol);
      EXPECT_LE(k.omega, m.dual * m.dual + kSdpTol);
    } else {
      // The double swap strategy is a certified lower bound on the square.
      EXPECT_LE(9.0 / 64.0, m.dual * m.dual + kSdpTol);
    }
  }
}

// Any explicit strategy is a lower bound on w*, hence below mu^2.
TEST(Properties, RandomStrategiesStayBelowMuSquared) {
  std::mt19937_64 rng(408);
  for (int t = 0; t < 4; ++t) {
    const RankOneGame g = random_game(2, 2, 1.0, rng);
    const GamePurification p = purify(g);
    const double bound = std::pow(mu_norm(g).dual, 2);
    for (int s = 0; s < 5; ++s) {
      EntangledStrategy st;
      st.dAp = st.dBp = 2;
      st.U = haar_unitary(4, rng);
      st.V = haar_unitary(4, rng);
      st.phi = random_unit_vector(4, rng);
      EXPECT_LE(win_prob_entangled(p, st), bound + kSdpTol);
    }
  }
}

TEST(Properties, ScaleCovariance) {
  std::mt19937_64 rng(409);
  for (int t = 0; t < 3; ++t) {
    const RankOneGame g = random_game(2, 2, 1.0, rng);
    const double v = maximal_value(g), q = qow_value(g), m = mu_norm(g).primal;
    for (double c : {0.25, 0.6, 1.0}) {
      const RankOneGame h = RankOneGame::make(2, 2, c * g.M);
      EXPECT_NEAR(maximal_value(h), c * c * v, 1e-10);
      EXPECT_NEAR(qow_value(h), c * c * q, kSdpTol);
      EXPECT_NEAR(std::pow(mu_norm(h).primal, 2), c * c * m * m, kSdpTol);
    }
  }
}

TEST(Properties, MaximalValueIsMultiplicative) {
  std::mt19937_64 rng(410);
  for (int t = 0; t < 10; ++t) {
    const RankOneGame g = random_game(2, 2, 0.6 + 0.04 * t, rng);
    const double v = maximal_value(g);
    EXPECT_NEAR(maximal_value(game_tensor(g, g)), v * v, 1e-10);
  }
}

TEST(Properties, QowIsMultiplicative) {
  std::mt19937_64 rng(411);
  for (int t = 0; t < 5; ++t) {
    const RankOneGame g = random_game(2, 2, 1.0, rng);
    const double q = qow_value(g);
    EXPECT_NEAR(qow_value(game_tensor(g, g)), q * q, 1e-4);
  }
}

// ---- Schur games ---------------------------------------------------------

TEST(Schur, FamilyWitnessBound) {
  for (std::size_t k = 1; k <= 6; ++k) {
    const SchurFamilyMember a = schur_an_game(k);
    EXPECT_NEAR(maximal_value(a.game), 1.0, 1e-10);
    EXPECT_NEAR(schur_s_upper(a.phi, schur_an_witness(k)), std::pow(2.0, -0.5 * dn(k)), 1e-12);
  }
}

TEST(Schur, SelfWitnessGivesTraceNorm) {
  std::mt19937_64 rng(412);
  SchurMatrix phi;
  phi.n = 3;
  phi.phi = oracle::random_matrix(3, 3, rng);
  EXPECT_NEAR(schur_s_upper(phi, phi.phi), oracle::trace_norm(phi.phi), 1e-10);
}

TEST(Schur, RejectsNonDominatingWitness) {
  const SchurFamilyMember a = schur_an_game(1);
  EXPECT_THROW(schur_s_upper(a.phi, 0.5 * schur_an_witness(1)), std::invalid_argument);
  EXPECT_THROW(schur_s_upper(a.phi, identity(3)), DimensionError);
}

TEST(Schur, SearchOnDiagonalMatchesPhaseGrid) {
  SchurMatrix phi;
  phi.n = 2;
  phi.phi = ComplexMatrix::Zero(2, 2);
  phi.phi(0, 0) = Complex(0.3, 0.1);
  phi.phi(1, 1) = Complex(-0.2, 0.4);
  // Exhaustive oracle over witness phases with the moduli of phi.
  double best = std::numeric_limits<double>::infinity();
  constexpr int kSteps = 24;
  for (int i = 0; i < kSteps; ++i) {
    for (int j = 0; j < kSteps; ++j) {
      ComplexMatrix w = ComplexMatrix::Zero(2, 2);
      w(0, 0) = std::polar(std::abs(phi.phi(0, 0)), 2.0 * std::numbers::pi * i / kSteps);
      w(1, 1) = std::polar(std::abs(phi.phi(1, 1)), 2.0 * std::numbers::pi * j / kSteps);
      best = std::min(best, oracle::trace_norm(w));
    }
  }
  const auto [value, witness] = schur_s_search(phi, 50, 1);
  EXPECT_NEAR(value, best, 1e-10);
  EXPECT_NEAR(value, oracle::trace_norm(phi.phi), 1e-10);
}

TEST(Schur, SearchFindsFamilyWitnessLevel) {
  const SchurFamilyMember a = schur_an_game(1);
  const auto [value, witness] = schur_s_search(a.phi, 50, 0);
  EXPECT_LE(value, std::sqrt(0.5) + 1e-6);
  EXPECT_NEAR(schur_s_upper(a.phi, witness), value, 1e-12);
}

TEST(Schur, SearchZeroAndDeterminism) {
  SchurMatrix zero;
  zero.n = 2;
  zero.phi = ComplexMatrix::Zero(2, 2);
  EXPECT_EQ(schur_s_search(zero, 10, 0).first, 0.0);

  std::mt19937_64 rng(413);
  SchurMatrix phi;
  phi.n = 3;
  phi.phi = oracle::random_matrix(3, 3, rng) / 3.0;
  const auto a = schur_s_search(phi, 30, 9);
  const auto b = schur_s_search(phi, 30, 9);
  EXPECT_EQ(a.first, b.first);
  EXPECT_EQ(a.second, b.second);
  EXPECT_LE(a.first, oracle::trace_norm(phi.phi) + 1e-12);
}

TEST(Schur, EquivalenceOnLtw) {
  const auto phi = is_schur(ltw_game().game);
  ASSERT_TRUE(phi.has_value());
  const SchurEquivalenceReport r = schur_equivalence_check(*phi);
  EXPECT_TRUE(r.qow_below_s_squared);
  EXPECT_TRUE(r.mu_quarter_below_qow);
  EXPECT_LE(r.qow, r.s_upper * r.s_upper + kSdpTol);
}

TEST(Schur, EquivalenceOnFirstFamilyMember) {
  const SchurEquivalenceReport r = schur_equivalence_check(schur_an_game(1).phi);
  EXPECT_LE(r.qow, 0.5 + kSdpTol);
  EXPECT_TRUE(r.qow_below_s_squared);
  EXPECT_LE(r.omega_star_upper, 0.5 + kSdpTol);
}

TEST(Schur, EquivalenceOnTrivialMatrix) {
  SchurMatrix one;
  one.n = 1;
  one.phi = ComplexMatrix::Ones(1, 1);
  const SchurEquivalenceReport r = schur_equivalence_check(one);
  EXPECT_NEAR(r.V, 1.0, 1e-10);
  EXPECT_NEAR(r.qow, 1.0, kSdpTol);
  EXPECT_NEAR(r.mu, 1.0, kSdpTol);
  EXPECT_NEAR(r.s_upper, 1.0, 1e-12);
  EXPECT_NEAR(r.omega_star_upper, 1.0, kSdpTol);
}

}  // namespace
}  // namespace qgames
