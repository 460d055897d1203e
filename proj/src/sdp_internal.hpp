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

#ifndef QGAMES_SRC_SDP_INTERNAL_HPP_
#define QGAMES_SRC_SDP_INTERNAL_HPP_

#include <vector>

#include "qgames/sdp.hpp"

namespace qgames::sdp::internal {

// cone[v] is true when variable v is constrained by a plain X_v >= 0.
std::vector<bool> cone_variables(const SdpProblem& p);

// Hermitian variables under a plain PSD constraint are read back with the
// averaged formula; free Hermitian variables use the upper-left block for
// Re X and the lower-left block for Im X.
ComplexMatrix unembed_variable(const RealMatrix& y, bool cone);

}  // namespace qgames::sdp::internal

#endif  // QGAMES_SRC_SDP_INTERNAL_HPP_
