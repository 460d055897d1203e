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

#include "commands.hpp"

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <ostream>
#include <stdexcept>

#include <CLI11.hpp>

#include "qgames/game.hpp"
#include "qgames/io.hpp"
#include "qgames/protocol.hpp"
#include "qgames/reproduce.hpp"
#include "qgames/tensor.hpp"
#include "qgames/values.hpp"

namespace qgames::cli {
namespace {

struct Globals {
  double tol = 1e-7;
  std::uint64_t seed = 0;
  std::string format = "json";
  std::string dump_sdp;
};

struct MakeArgs {
  std::string family;
  long long n = 0;
  std::string out;
  bool purification = false;
};

struct ValueArgs {
  std::string game;
  std::string which = "bracket";
  int restarts = 20;
  int iters = 200;
  std::string ancilla;
};

struct SimulateArgs {
  std::string game;
  std::string strategy;
  std::string ancilla;
};

struct RepeatArgs {
  std::string game;
  long long k = 0;
  std::string out;
  bool values = false;
  std::size_t cap = kDefaultSideCap;
};

struct ReproduceArgs {
  std::string suite;
  std::size_t n_max = 3;
  bool allow_large = false;
  std::string out;
  int restarts = 20;
};

ValueOptions value_options(const Globals& g) {
  ValueOptions o;
  o.sdp.gap_tol = g.tol;
  o.dump_sdp_path = g.dump_sdp;
  return o;
}

// "a,b" with positive integers.
std::pair<std::size_t, std::size_t> parse_ancilla(const std::string& s) {
  const auto comma = s.find(',');
  try {
    if (comma == std::string::npos) throw std::invalid_argument("");
    const long long a = std::stoll(s.substr(0, comma));
    const long long b = std::stoll(s.substr(comma + 1));
    if (a <= 0 || b <= 0) throw std::invalid_argument("");
    return {static_cast<std::size_t>(a), static_cast<std::size_t>(b)};
  } catch (const std::logic_error&) {
    throw std::invalid_argument("--ancilla expects two positive integers 'a,b'");
  }
}

GamePurification load_purification(const std::string& path) {
  const Json j = read_json_file(path);
  if (is_purification_json(j)) return purification_from_json(j);
  return purify(game_from_json(j));
}

// CSV for `value` shares the bracket report's three columns.
void emit(std::ostream& out, const Globals& g, const Json& j, bool value_schema = false) {
  if (g.format == "json") {
    out << dump_json(j);
    return;
  }
  out << (value_schema ? "quantity,value,source\n" : "key,value\n");
  const char* tail = value_schema ? ",\n" : "\n";
  for (auto it = j.begin(); it != j.end(); ++it) {
    if (it->is_number_float()) {
      out << it.key() << "," << format_double(it->get<double>()) << tail;
    } else if (it->is_primitive()) {
      out << it.key() << "," << it->dump() << tail;
    }
  }
}

int cmd_make(const Globals&, const MakeArgs& a, std::ostream& out) {
  if (a.n <= 0) throw std::invalid_argument("--n must be a positive integer");
  const auto n = static_cast<std::size_t>(a.n);
  GameWithStates gs;
  if (a.family == "gc") {
    gs = game_gc(n);
  } else if (a.family == "gr") {
    gs = game_gr(n);
  } else if (a.family == "gcr") {
    gs = game_gcr(n);
  } else {
    if (n > 6) throw std::invalid_argument("schur-an supports --n 1..6");
    gs = schur_game(schur_an_game(n).phi);
  }
  const Json file = a.purification ? purification_to_json(gs.purification)
                                   : game_to_json(gs.game);
  write_text_file(a.out, dump_json(file));
  Json j;
  j["out"] = a.out;
  j["family"] = a.family;
  j["n"] = n;
  j["dA"] = gs.game.dA;
  j["dB"] = gs.game.dB;
  j["V"] = maximal_value(gs.game);
  out << dump_json(j);
  return kOk;
}

int cmd_value(const Globals& g, const ValueArgs& a, std::ostream& out) {
  const RankOneGame game = game_from_json(read_json_file(a.game));
  const ValueOptions opts = value_options(g);
  if (a.which == "V") {
    Json j;
    j["V"] = maximal_value(game);
    emit(out, g, j, true);
  } else if (a.which == "qow" || a.which == "mu") {
    const bool qow = a.which == "qow";
    const NormResult r = qow ? haagerup_dual_norm(game, opts) : mu_norm(game, opts);
    Json j;
    if (qow) {
      j["qow"] = r.primal * r.primal;
      j["qow_primal"] = r.primal * r.primal;
      j["qow_dual"] = r.dual * r.dual;
    } else {
      j["mu"] = r.primal;
      j["mu_primal"] = r.primal;
      j["mu_dual"] = r.dual;
    }
    j["tol"] = g.tol;
    j["iterations"] = r.iterations;
    emit(out, g, j, true);
  } else {
    SeesawConfig cfg;
    cfg.restarts = a.restarts;
    cfg.iters = a.iters;
    cfg.seed = g.seed;
    if (!a.ancilla.empty()) std::tie(cfg.dAp, cfg.dBp) = parse_ancilla(a.ancilla);
    const ValueReport r = entangled_value_bounds(game, opts, cfg);
    if (g.format == "json") {
      out << dump_json(report_to_json(r));
    } else {
      out << report_to_csv(r);
    }
  }
  return kOk;
}

Strategy resolve_strategy(const std::string& name, const GamePurification& p,
                          const std::string& ancilla, std::uint64_t seed) {
  const auto& names = strategy_names();
  if (std::find(names.begin(), names.end(), name) != names.end()) {
    std::size_t n = p.dA;
    if (name == "gcr2-swap") {
      n = static_cast<std::size_t>(std::llround(std::sqrt(static_cast<double>(p.dA))));
      if (n * n != p.dA) throw std::invalid_argument("gcr2-swap needs dA = n^2");
    }
    return named_strategy(name, n);
  }
  if (name == "seesaw") {
    SeesawConfig cfg;
    cfg.seed = seed;
    if (!ancilla.empty()) std::tie(cfg.dAp, cfg.dBp) = parse_ancilla(ancilla);
    return seesaw_lower_bound(from_states(p), cfg).strategy;
  }
  return strategy_from_json(read_json_file(name));
}

int cmd_simulate(const Globals& g, const SimulateArgs& a, std::ostream& out) {
  const GamePurification p = load_purification(a.game);
  const Strategy s = resolve_strategy(a.strategy, p, a.ancilla, g.seed);
  Json j;
  j["win_prob"] = win_prob(p, s);
  j["strategy"] = strategy_to_json(s);
  if (g.format == "json") {
    out << dump_json(j);
  } else {
    out << "key,value\nwin_prob," << format_double(j["win_prob"].get<double>()) << "\n";
  }
  return kOk;
}

int cmd_repeat(const Globals& g, const RepeatArgs& a, std::ostream& out) {
  if (a.k <= 0) throw std::invalid_argument("--k must be a positive integer");
  const auto k = static_cast<std::size_t>(a.k);
  const RankOneGame base = game_from_json(read_json_file(a.game));
  const RankOneGame power = game_power(base, k, a.cap);
  write_text_file(a.out, dump_json(game_to_json(power)));
  const double kd = static_cast<double>(k);
  Json j;
  j["out"] = a.out;
  j["k"] = k;
  j["dA"] = power.dA;
  j["dB"] = power.dB;
  j["V"] = maximal_value(power);
  j["V_base_pow_k"] = std::pow(maximal_value(base), kd);
  if (a.values) {
    const ValueOptions opts = value_options(g);
    j["qow"] = qow_value(power, opts);
    j["qow_base_pow_k"] = std::pow(qow_value(base, opts), kd);
  }
  emit(out, g, j);
  return kOk;
}

int cmd_reproduce(const Globals& g, const ReproduceArgs& a, std::ostream& out) {
  ReproduceOptions o;
  o.n_max = a.n_max;
  o.allow_large = a.allow_large;
  o.values = value_options(g);
  o.seesaw.seed = g.seed;
  o.seesaw.restarts = a.restarts;
  const auto rows = reproduce_suite(a.suite, o);
  const std::string text =
      g.format == "json" ? dump_json(rows_to_json(rows)) : rows_to_csv(rows);
  if (!a.out.empty()) write_text_file(a.out, text);
  out << text;
  const bool ok = std::all_of(rows.begin(), rows.end(), [](const auto& r) { return r.pass; });
  return ok ? kOk : kReproduction;
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Rank-one quantum games: values, protocols and reproduction tables", "game"};
  app.require_subcommand(1);

  Globals g;
  app.add_option("--tol", g.tol, "SDP duality-gap tolerance")
      ->check(CLI::PositiveNumber)
      ->capture_default_str();
  app.add_option("--seed", g.seed, "RNG seed for see-saw restarts")->capture_default_str();
  app.add_option("--format", g.format, "Output format")
      ->check(CLI::IsMember({"json", "csv"}))
      ->capture_default_str();
  app.add_option("--dump-sdp", g.dump_sdp, "Write the last SDP built to this JSON file");

  MakeArgs make;
  auto* mk = app.add_subcommand("make", "Write a canonical game file");
  mk->fallthrough();
  mk->add_option("--family", make.family)
      ->required()
      ->check(CLI::IsMember({"gc", "gr", "gcr", "schur-an"}));
  mk->add_option("--n", make.n, "n for gc/gr/gcr, k for schur-an")->required();
  mk->add_option("--out", make.out)->required();
  mk->add_flag("--purification", make.purification, "Write the states psi, gamma instead of M");

  ValueArgs value;
  auto* vl = app.add_subcommand("value", "Compute game values");
  vl->fallthrough();
  vl->add_option("--game", value.game)->required();
  vl->add_option("--which", value.which)
      ->check(CLI::IsMember({"V", "qow", "mu", "bracket"}))
      ->capture_default_str();
  vl->add_option("--seesaw-restarts", value.restarts)
      ->check(CLI::NonNegativeNumber)
      ->capture_default_str();
  vl->add_option("--seesaw-iters", value.iters)->check(CLI::PositiveNumber)->capture_default_str();
  vl->add_option("--ancilla", value.ancilla, "See-saw ancilla dimensions a,b");

  SimulateArgs sim;
  auto* sm = app.add_subcommand("simulate", "Win probability of a strategy");
  sm->fallthrough();
  sm->add_option("--game", sim.game)->required();
  sm->add_option("--strategy", sim.strategy, "Named strategy, 'seesaw', or a strategy file")
      ->required();
  sm->add_option("--ancilla", sim.ancilla, "Ancilla dimensions a,b for --strategy seesaw");

  RepeatArgs rep;
  auto* rp = app.add_subcommand("repeat", "Write the k-fold parallel repetition");
  rp->fallthrough();
  rp->add_option("--game", rep.game)->required();
  rp->add_option("--k", rep.k)->required();
  rp->add_option("--out", rep.out)->required();
  rp->add_flag("--values", rep.values, "Also compute qow on the repeated game");
  rp->add_option("--cap", rep.cap, "Largest allowed dA*dB")->capture_default_str();

  ReproduceArgs repro;
  auto* rr = app.add_subcommand("reproduce", "Recompute the closed-form value tables");
  rr->fallthrough();
  rr->add_option("--suite", repro.suite)
      ->required()
      ->check(CLI::IsMember({"gaps", "parallel", "schur", "all"}));
  rr->add_option("--n-max", repro.n_max)->capture_default_str();
  rr->add_flag("--allow-large", repro.allow_large);
  rr->add_option("--out", repro.out, "Also write the table here");
  rr->add_option("--seesaw-restarts", repro.restarts)
      ->check(CLI::NonNegativeNumber)
      ->capture_default_str();

  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(reversed);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kOk : kUsage;
  }

  try {
    if (mk->parsed()) return cmd_make(g, make, out);
    if (vl->parsed()) return cmd_value(g, value, out);
    if (sm->parsed()) return cmd_simulate(g, sim, out);
    if (rp->parsed()) return cmd_repeat(g, rep, out);
    return cmd_reproduce(g, repro, out);
  } catch (const IoError& e) {
    err << "error: " << e.what() << "\n";
    return kIo;
  } catch (const SolverError& e) {
    err << "solver failure (" << sdp::to_string(e.status()) << "): " << e.what() << "\n";
    return kSolver;
  } catch (const NumericalError& e) {
    err << "numerical failure: " << e.what() << "\n";
    return kSolver;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return kUsage;
  }
}

}  // namespace qgames::cli
