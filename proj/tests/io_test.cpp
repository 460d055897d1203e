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

#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <limits>
#include <random>
#include <string>

#include <gtest/gtest.h>

#include "oracles.hpp"
#include "qgames/io.hpp"
#include "qgames/values.hpp"

namespace qgames {
namespace {

namespace fs = std::filesystem;

fs::path scratch_dir() {
  const fs::path p = fs::temp_directory_path() / "qgames_io_test";
  fs::create_directories(p);
  return p;
}

Json reparse(const Json& j) { return Json::parse(dump_json(j)); }

TEST(FormatDouble, SeventeenSignificantDigits) {
  EXPECT_EQ(format_double(0.1), "0.10000000000000001");
  EXPECT_EQ(format_double(1.0), "1.0");
  EXPECT_EQ(format_double(-2.0), "-2.0");
  EXPECT_EQ(format_double(0.25), "0.25");
  EXPECT_EQ(format_double(1e-10), "1e-10");
  EXPECT_EQ(format_double(std::numeric_limits<double>::quiet_NaN()), "null");
  EXPECT_EQ(format_double(std::numeric_limits<double>::infinity()), "null");
}

TEST(FormatDouble, RoundTripsExactly) {
  std::mt19937_64 rng(501);
  std::uniform_real_distribution<double> mant(-1.0, 1.0);
  std::uniform_int_distribution<int> expo(-300, 300);
  for (int t = 0; t < 2000; ++t) {
    const double x = std::ldexp(mant(rng), expo(rng));
    EXPECT_EQ(std::strtod(format_double(x).c_str(), nullptr), x);
  }
}

TEST(DumpJson, KeepsFieldOrderAndFlatPairs) {
  Json j;
  j["zeta"] = 1.5;
  j["alpha"] = Json::array({0.5, -0.25});
  j["n"] = 3;
  j["name"] = "x";
  const std::string s = dump_json(j);
  EXPECT_EQ(s,
            "{\n  \"zeta\": 1.5,\n  \"alpha\": [0.5, -0.25],\n  \"n\": 3,\n"
            "  \"name\": \"x\"\n}\n");
  EXPECT_EQ(dump_json(j), s);
}

TEST(Matrix, EncodingIsRowMajorPairs) {
  ComplexMatrix m(2, 3);
  m << Complex(1, 2), Complex(3, 4), Complex(5, 6), Complex(7, 8), Complex(9, 10),
      Complex(11, 12);
  const Json j = matrix_to_json(m);
  EXPECT_EQ(j["rows"], 2);
  EXPECT_EQ(j["cols"], 3);
  ASSERT_EQ(j["data"].size(), 6u);
  EXPECT_EQ(j["data"][1][0].get<double>(), 3.0);
  EXPECT_EQ(j["data"][3][1].get<double>(), 8.0);
}

TEST(Matrix, RoundTripIsBitExact) {
  std::mt19937_64 rng(502);
  for (int t = 0; t < 5; ++t) {
    const ComplexMatrix m = oracle::random_matrix(1 + t, 4 - t % 3, rng) * 1e-3;
    EXPECT_EQ(matrix_from_json(reparse(matrix_to_json(m))), m);
  }
  // Real entries may be written as plain numbers.
  const Json plain = Json::parse(R"({"rows": 1, "cols": 2, "data": [1.5, [0, -1]]})");
  const ComplexMatrix m = matrix_from_json(plain);
  EXPECT_EQ(m(0, 0), Complex(1.5, 0.0));
  EXPECT_EQ(m(0, 1), Complex(0.0, -1.0));
}

TEST(Matrix, RejectsMalformedInput) {
  EXPECT_THROW(matrix_from_json(Json::parse(R"({"rows": 2, "cols": 2, "data": [[1, 0]]})")),
               IoError);
  EXPECT_THROW(matrix_from_json(Json::parse(R"({"rows": 0, "cols": 2, "data": []})")), IoError);
  EXPECT_THROW(matrix_from_json(Json::parse(R"({"cols": 1, "data": [[1, 0]]})")), IoError);
  EXPECT_THROW(matrix_from_json(Json::parse(R"({"rows": 1, "cols": 1, "data": [[1, 0, 2]]})")),
               IoError);
  EXPECT_THROW(matrix_from_json(Json::parse(R"({"rows": 1, "cols": 1, "data": ["a"]})")),
               IoError);
  EXPECT_THROW(matrix_from_json(Json::parse(R"({"rows": 1, "cols": 1, "data": [null]})")),
               IoError);
}

TEST(Game, RoundTrip) {
  std::mt19937_64 rng(503);
  const RankOneGame g = random_game(2, 3, 0.8, rng);
  const RankOneGame h = game_from_json(reparse(game_to_json(g)));
  EXPECT_EQ(h.dA, 2u);
  EXPECT_EQ(h.dB, 3u);
  EXPECT_EQ(h.M, g.M);
  EXPECT_EQ(dump_json(game_to_json(h)), dump_json(game_to_json(g)));
}

TEST(Game, RejectsInvalidGames) {
  Json j = game_to_json(game_gc(2).game);
  j["dA"] = 3;
  EXPECT_THROW(game_from_json(j), IoError);
  j = game_to_json(game_gc(2).game);
  j["M"] = matrix_to_json(identity(4));  // trace norm 4
  EXPECT_THROW(game_from_json(j), IoError);
  j = game_to_json(game_gc(2).game);
  j.erase("M");
  EXPECT_THROW(game_from_json(j), IoError);
  j = game_to_json(game_gc(2).game);
  j["dB"] = -1;
  EXPECT_THROW(game_from_json(j), IoError);
}

TEST(Purification, RoundTripAndGameLoading) {
  const GamePurification p = game_gcr(2).purification;
  const GamePurification q = purification_from_json(reparse(purification_to_json(p)));
  EXPECT_EQ(q.dC, p.dC);
  EXPECT_EQ(q.psi, p.psi);
  EXPECT_EQ(q.gamma, p.gamma);
  EXPECT_TRUE(is_purification_json(purification_to_json(p)));
  EXPECT_FALSE(is_purification_json(game_to_json(game_gcr(2).game)));
  // A purification file also loads as the game it induces.
  const RankOneGame g = game_from_json(purification_to_json(p));
  EXPECT_LT((g.M - game_gcr(2).game.M).cwiseAbs().maxCoeff(), 1e-12);
}

TEST(Purification, RejectsNonUnitState) {
  GamePurification p = game_gc(2).purification;
  Json j = purification_to_json(p);
  p.psi *= 2.0;
  j["psi"] = vector_to_json(p.psi);
  EXPECT_THROW(purification_from_json(j), IoError);
}

TEST(Strategy, RoundTripBothKinds) {
  const Strategy e = named_strategy("gcr2-swap", 2);
  const Strategy e2 = strategy_from_json(reparse(strategy_to_json(e)));
  ASSERT_TRUE(std::holds_alternative<EntangledStrategy>(e2));
  EXPECT_EQ(std::get<EntangledStrategy>(e2).U, std::get<EntangledStrategy>(e).U);
  EXPECT_EQ(std::get<EntangledStrategy>(e2).phi, std::get<EntangledStrategy>(e).phi);

  const Strategy o = named_strategy("gc-oneway-flip", 3);
  const Strategy o2 = strategy_from_json(reparse(strategy_to_json(o)));
  ASSERT_TRUE(std::holds_alternative<OneWayStrategy>(o2));
  EXPECT_EQ(std::get<OneWayStrategy>(o2).dAp, std::get<OneWayStrategy>(o).dAp);
  EXPECT_EQ(std::get<OneWayStrategy>(o2).V, std::get<OneWayStrategy>(o).V);
  EXPECT_EQ(win_prob(game_gc(3).purification, o2), win_prob(game_gc(3).purification, o));

  Json bad = strategy_to_json(o);
  bad["kind"] = "classical";
  EXPECT_THROW(strategy_from_json(bad), IoError);
}

TEST(Sdp, DumpMirrorsProblem) {
  const sdp::SdpProblem p = haagerup_program(game_gc(2).game);
  const Json j = reparse(sdp_to_json(p));
  EXPECT_EQ(j["sense"], "maximize");
  EXPECT_EQ(j["variables"].size(), p.variables.size());
  EXPECT_EQ(j["psd"].size(), p.psd.size());
  EXPECT_EQ(j["equalities"].size(), p.equalities.size());
  EXPECT_TRUE(j["psd"][0].contains("constant"));
  EXPECT_TRUE(j["psd"][0]["constant"].contains("rows"));
}

TEST(Files, WriteReadAndErrors) {
  const fs::path dir = scratch_dir();
  const std::string path = (dir / "game.json").string();
  write_text_file(path, dump_json(game_to_json(game_gr(3).game)));
  const RankOneGame g = game_from_json(read_json_file(path));
  EXPECT_EQ(g.M, game_gr(3).game.M);

  EXPECT_THROW(read_json_file((dir / "missing.json").string()), IoError);
  write_text_file((dir / "broken.json").string(), "{\"dA\": ");
  EXPECT_THROW(read_json_file((dir / "broken.json").string()), IoError);
  EXPECT_THROW(write_text_file((dir / "no_such_dir" / "x.json").string(), "{}"), IoError);
}

}  // namespace
}  // namespace qgames
