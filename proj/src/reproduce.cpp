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

#include "qgames/reproduce.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace qgames {
namespace {

constexpr double kExact = 1e-10;
constexpr double kProtocol = 1e-12;
constexpr double kSdp = 1e-5;
constexpr double kSdpSquare = 1e-4;
constexpr double kSeesaw = 1e-6;

using Rows = std::vector<ReproductionRow>;

std::string family_id(const char* family, std::size_t n) {
  return std::string(family) + "(" + std::to_string(n) + ")";
}

void check_n_max(const ReproduceOptions& o) {
  if (o.n_max < 2) throw std::invalid_argument("--n-max must be at least 2");
  if (o.n_max > 4) throw std::invalid_argument("--n-max is limited to 4");
  if (o.n_max == 4 && !o.allow_large) {
    throw std::invalid_argument("--n-max 4 builds large SDPs; pass --allow-large");
  }
}

SeesawConfig seesaw_for(const ReproduceOptions& o, std::size_t dAp, std::size_t dBp) {
  SeesawConfig c = o.seesaw;
  c.dAp = dAp;
  c.dBp = dBp;
  return c;
}

void gaps(const ReproduceOptions& o, Rows& rows) {
  for (std::size_t n = 2; n <= o.n_max; ++n) {
    const double dn = static_cast<double>(n);
    const double star = 1.0 / (dn * dn);  // entangled value of G_C and G_R

    const auto gc = game_gc(n);
    const std::string c = family_id("G_C", n);
    rows.push_back(make_row(c, n, "V", "eq", 1.0, maximal_value(gc.game), kExact));
    const NormResult qc = haagerup_dual_norm(gc.game, o.values);
    rows.push_back(make_row(c, n, "qow", "eq", 1.0, qc.primal * qc.primal, kSdp));
    rows.push_back(make_row(c, n, "win_prob(gc-oneway-flip)", "eq", 1.0,
                            win_prob(gc.purification, named_strategy("gc-oneway-flip", n)),
                            kProtocol));
    rows.push_back(make_row(c, n, "win_prob(identity)", "eq", star,
                            win_prob(gc.purification, named_strategy("identity", n)),
                            kProtocol));
    const NormResult mc = mu_norm(gc.game, o.values);
    rows.push_back(make_row(c, n, "mu_dual^2 >= omega*", "ge", star,
                            mc.dual * mc.dual, kSdp));
    rows.push_back(make_row(c, n, "mu_primal^2/4 <= omega*", "le", star,
                            mc.primal * mc.primal / 4.0, kSdp));
    rows.push_back(make_row(c, n, "seesaw <= omega*", "le", star,
                            seesaw_lower_bound(gc.game, seesaw_for(o, n, n)).value,
                            kSeesaw));
    // Certified: omega* <= mu_dual^2, so qow / mu_dual^2 bounds qow / omega* below.
    rows.push_back(make_row(c, n, "qow_primal/mu_dual^2", "ge", dn * dn,
                            qc.primal * qc.primal / (mc.dual * mc.dual),
                            kSdp * dn * dn));

    const auto gr = game_gr(n);
    const std::string r = family_id("G_R", n);
    const double vr = maximal_value(gr.game);
    rows.push_back(make_row(r, n, "V", "eq", 1.0, vr, kExact));
    const NormResult qr = haagerup_dual_norm(gr.game, o.values);
    rows.push_back(make_row(r, n, "qow", "eq", star, qr.primal * qr.primal, kSdp));
    rows.push_back(make_row(r, n, "V/qow_dual", "ge", dn * dn,
                            vr / (qr.dual * qr.dual), kSdp * dn * dn));
  }
}

void parallel(const ReproduceOptions& o, Rows& rows) {
  for (std::size_t n = 2; n <= o.n_max; ++n) {
    const double dn = static_cast<double>(n);
    const double star = 1.0 / (dn * dn);
    const double q1 = 0.25 * (1.0 + 1.0 / dn) * (1.0 + 1.0 / dn);
    const double swap = q1 / (dn * dn);

    const auto g = game_gcr(n);
    const std::string id = family_id("G_C+R", n);
    rows.push_back(make_row(id, n, "V", "eq", 1.0, maximal_value(g.game), kExact));
    rows.push_back(make_row(id, n, "check_maximal_value_one", "eq", 1.0,
                            check_maximal_value_one(g.purification) ? 1.0 : 0.0, 0.0));
    const NormResult q = haagerup_dual_norm(g.game, o.values);
    const double qow1 = q.primal * q.primal;
    rows.push_back(make_row(id, n, "qow", "eq", q1, qow1, kSdp));
    rows.push_back(make_row(id, n, "win_prob(gcr-oneway)", "eq", q1,
                            win_prob(g.purification, named_strategy("gcr-oneway", n)),
                            kProtocol));
    rows.push_back(make_row(id, n, "win_prob(identity)", "eq", star,
                            win_prob(g.purification, named_strategy("identity", n)),
                            kProtocol));
    const NormResult m = mu_norm(g.game, o.values);
    const double mu_up = m.dual * m.dual;
    rows.push_back(make_row(id, n, "mu_dual^2 >= omega*", "ge", star, mu_up, kSdp));
    rows.push_back(make_row(id, n, "mu_primal^2/4 <= omega*", "le", star,
                            m.primal * m.primal / 4.0, kSdp));

    const RankOneGame g2 = game_power(g.game, 2);
    const GamePurification p2 = purification_power(g.purification, 2);
    const std::string id2 = id + "^2";
    rows.push_back(make_row(id2, n, "V", "eq", 1.0, maximal_value(g2), kExact));
    rows.push_back(make_row(id2, n, "check_maximal_value_one", "eq", 1.0,
                            check_maximal_value_one(p2) ? 1.0 : 0.0, 0.0));
    const double qow2 = qow_value(g2, o.values);
    rows.push_back(make_row(id2, n, "qow", "eq", q1 * q1, qow2, kSdpSquare));
    rows.push_back(make_row(id2, n, "qow(G^2) vs qow(G)^2", "eq", qow1 * qow1, qow2,
                            kSdpSquare));
    const double w_swap = win_prob(p2, named_strategy("gcr2-swap", n));
    rows.push_back(make_row(id2, n, "win_prob(gcr2-swap)", "eq", swap, w_swap, kProtocol));
    const double ss = seesaw_lower_bound(g2, seesaw_for(o, 1, 1)).value;
    rows.push_back(make_row(id2, n, "seesaw(no ancilla)", "ge", swap, ss, kSeesaw));
    // omega*(G^2) / omega*(G)^2 with the closed-form omega*(G) = 1/n^2.
    rows.push_back(make_row(id2, n, "win_prob(gcr2-swap)/omega*(G)^2", "ge", dn * dn / 4.0,
                            w_swap / (star * star), 0.0));
    // Same ratio certified by the computed upper bound on omega*(G).
    rows.push_back(make_row(id2, n, "max(swap,seesaw)/mu_dual(G)^4", "ge", dn * dn / 4.0,
                            std::max(w_swap, ss) / (mu_up * mu_up), 0.0));
  }
}

void schur(const ReproduceOptions& o, Rows& rows) {
  for (std::size_t k = 1; k <= 6; ++k) {
    const auto member = schur_an_game(k);
    const std::string id = family_id("A", k);
    rows.push_back(make_row(id, k, "V", "eq", 1.0, maximal_value(member.game), kExact));
    const double s = schur_s_upper(member.phi, schur_an_witness(k));
    rows.push_back(make_row(id, k, "S upper (B witness)", "eq",
                            std::pow(2.0, -0.5 * static_cast<double>(k)), s, kProtocol));
    if (k <= 2) {
      rows.push_back(make_row(id, k, "qow <= S^2", "le", s * s,
                              qow_value(member.game, o.values), kSdp));
    }
  }

  const auto ltw = ltw_game();
  const auto phi = is_schur(ltw.game);
  rows.push_back(make_row("LTW", 3, "is_schur", "eq", 1.0, phi ? 1.0 : 0.0, 0.0));
  if (phi) {
    const double r = 1.0 / (2.0 * std::sqrt(2.0));
    rows.push_back(make_row("LTW", 3, "phi_00", "eq", 0.5, std::abs(phi->phi(0, 0)), kExact));
    rows.push_back(make_row("LTW", 3, "phi_11", "eq", r, std::abs(phi->phi(1, 1)), kExact));
    rows.push_back(make_row("LTW", 3, "phi_21", "eq", r, std::abs(phi->phi(2, 1)), kExact));
  }
}

std::string csv_escape(const std::string& s) {
  if (s.find_first_of(",\"\n") == std::string::npos) return s;
  std::string out = "\"";
  for (char c : s) {
    if (c == '"') out += '"';
    out += c;
  }
  return out + "\"";
}

}  // namespace

ReproductionRow make_row(std::string game, std::size_t n, std::string quantity,
                         std::string relation, double expected, double computed,
                         double tolerance) {
  ReproductionRow r;
  r.game = std::move(game);
  r.n = n;
  r.quantity = std::move(quantity);
  r.relation = std::move(relation);
  r.expected = expected;
  r.computed = computed;
  r.tolerance = tolerance;
  if (r.relation == "eq") {
    r.abs_error = std::abs(computed - expected);
  } else if (r.relation == "ge") {
    r.abs_error = std::max(0.0, expected - computed);
  } else if (r.relation == "le") {
    r.abs_error = std::max(0.0, computed - expected);
  } else {
    throw std::invalid_argument("relation must be eq, ge or le");
  }
  r.pass = std::isfinite(computed) && r.abs_error <= tolerance;
  return r;
}

const std::vector<std::string>& suite_names() {
  static const std::vector<std::string> names = {"gaps", "parallel", "schur", "all"};
  return names;
}

std::vector<ReproductionRow> reproduce_suite(const std::string& suite,
                                             const ReproduceOptions& opts) {
  if (std::find(suite_names().begin(), suite_names().end(), suite) == suite_names().end()) {
    throw std::invalid_argument("unknown suite '" + suite +
                                "' (expected gaps, parallel, schur or all)");
  }
  check_n_max(opts);
  Rows rows;
  if (suite == "gaps" || suite == "all") gaps(opts, rows);
  if (suite == "parallel" || suite == "all") parallel(opts, rows);
  if (suite == "schur" || suite == "all") schur(opts, rows);
  return rows;
}

const char* const kReproductionCsvHeader =
    "game,n,quantity,relation,expected,computed,abs_error,tolerance,pass";

std::string rows_to_csv(const std::vector<ReproductionRow>& rows) {
  std::string out = std::string(kReproductionCsvHeader) + "\n";
  for (const auto& r : rows) {
    out += csv_escape(r.game) + "," + std::to_string(r.n) + "," + csv_escape(r.quantity) +
           "," + r.relation + "," + format_double(r.expected) + "," +
           format_double(r.computed) + "," + format_double(r.abs_error) + "," +
           format_double(r.tolerance) + "," + (r.pass ? "true" : "false") + "\n";
  }
  return out;
}

Json rows_to_json(const std::vector<ReproductionRow>& rows) {
  Json arr = Json::array();
  for (const auto& r : rows) {
    Json j;
    j["game"] = r.game;
    j["n"] = r.n;
    j["quantity"] = r.quantity;
    j["relation"] = r.relation;
    j["expected"] = r.expected;
    j["computed"] = r.computed;
    j["abs_error"] = r.abs_error;
    j["tolerance"] = r.tolerance;
    j["pass"] = r.pass;
    arr.push_back(std::move(j));
  }
  return arr;
}

Json report_to_json(const ValueReport& r) {
  Json j;
  j["dA"] = r.dA;
  j["dB"] = r.dB;
  j["V"] = r.V;
  j["qow"] = r.qow;
  j["qow_primal"] = r.qow_primal;
  j["qow_dual"] = r.qow_dual;
  j["mu"] = r.mu;
  j["mu_primal"] = r.mu_primal;
  j["mu_dual"] = r.mu_dual;
  j["seesaw"] = r.seesaw;
  j["identity"] = r.identity;
  j["omega_star_lower"] = {{"value", r.omega_star_lower.value},
                           {"source", r.omega_star_lower.source}};
  j["omega_star_upper"] = {{"value", r.omega_star_upper.value},
                           {"source", r.omega_star_upper.source}};
  j["tol"] = r.tol;
  j["qow_iterations"] = r.qow_iterations;
  j["mu_iterations"] = r.mu_iterations;
  j["seesaw_config"] = {{"dAp", r.seesaw_dAp},
                        {"dBp", r.seesaw_dBp},
                        {"restarts", r.seesaw_restarts},
                        {"iters", r.seesaw_iters},
                        {"seed", r.seed}};
  return j;
}

std::string report_to_csv(const ValueReport& r) {
  std::string out = "quantity,value,source\n";
  auto line = [&](const char* k, double v, const std::string& src = "") {
    out += std::string(k) + "," + format_double(v) + "," + src + "\n";
  };
  line("V", r.V);
  line("qow", r.qow);
  line("qow_primal", r.qow_primal);
  line("qow_dual", r.qow_dual);
  line("mu", r.mu);
  line("mu_primal", r.mu_primal);
  line("mu_dual", r.mu_dual);
  line("seesaw", r.seesaw);
  line("identity", r.identity);
  line("omega_star_lower", r.omega_star_lower.value, r.omega_star_lower.source);
  line("omega_star_upper", r.omega_star_upper.value, r.omega_star_upper.source);
  return out;
}

}  // namespace qgames
