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

// Closed-form values of the canonical game families recomputed as tables.

#ifndef QGAMES_REPRODUCE_HPP_
#define QGAMES_REPRODUCE_HPP_

#include <cstddef>
#include <string>
#include <vector>

#include "qgames/io.hpp"
#include "qgames/values.hpp"

namespace qgames {

// relation "eq": abs_error = |computed - expected|
// relation "ge": abs_error = max(0, expected - computed)   (computed >= expected)
// relation "le": abs_error = max(0, computed - expected)   (computed <= expected)
// pass <=> abs_error <= tolerance.
struct ReproductionRow {
  std::string game;
  std::size_t n = 0;
  std::string quantity;
  std::string relation;
  double expected = 0.0;
  double computed = 0.0;
  double abs_error = 0.0;
  double tolerance = 0.0;
  bool pass = false;
};

ReproductionRow make_row(std::string game, std::size_t n, std::string quantity,
                         std::string relation, double expected, double computed,
                         double tolerance);

struct ReproduceOptions {
  std::size_t n_max = 3;
  bool allow_large = false;
  ValueOptions values;
  SeesawConfig seesaw;
};

const std::vector<std::string>& suite_names();
// suite in {gaps, parallel, schur, all}.
std::vector<ReproductionRow> reproduce_suite(const std::string& suite,
                                             const ReproduceOptions& opts);

extern const char* const kReproductionCsvHeader;
std::string rows_to_csv(const std::vector<ReproductionRow>& rows);
Json rows_to_json(const std::vector<ReproductionRow>& rows);

Json report_to_json(const ValueReport& r);
std::string report_to_csv(const ValueReport& r);

}  // namespace qgames

#endif  // QGAMES_REPRODUCE_HPP_
