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

// File formats. Matrices: {"rows": r, "cols": c, "data": [[re, im], ...]}
// in row-major order. Games: {"dA", "dB", "M"}. Purifications:
// {"dA", "dB", "dC", "psi", "gamma"} with vectors as lists of [re, im].

#ifndef QGAMES_IO_HPP_
#define QGAMES_IO_HPP_

#include <stdexcept>
#include <string>

#include <json.hpp>

#include "qgames/game.hpp"
#include "qgames/protocol.hpp"
#include "qgames/sdp.hpp"

namespace qgames {

using Json = nlohmann::ordered_json;

class IoError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Doubles are printed with 17 significant digits so output is byte-stable
// and round-trips exactly.
std::string format_double(double x);
std::string dump_json(const Json& j, int indent = 2);

Json matrix_to_json(const ComplexMatrix& m);
ComplexMatrix matrix_from_json(const Json& j);
Json vector_to_json(const ComplexVector& v);
ComplexVector vector_from_json(const Json& j);

Json game_to_json(const RankOneGame& g);
RankOneGame game_from_json(const Json& j);
Json purification_to_json(const GamePurification& p);
GamePurification purification_from_json(const Json& j);
bool is_purification_json(const Json& j);

Json strategy_to_json(const Strategy& s);
Strategy strategy_from_json(const Json& j);

Json sdp_to_json(const sdp::SdpProblem& p);
void write_sdp_json(const sdp::SdpProblem& p, const std::string& path);

Json read_json_file(const std::string& path);
void write_text_file(const std::string& path, const std::string& text);

}  // namespace qgames

#endif  // QGAMES_IO_HPP_
