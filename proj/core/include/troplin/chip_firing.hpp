// Copyright 2026 The Troplin Authors
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

#ifndef TROPLIN_CHIP_FIRING_HPP_
#define TROPLIN_CHIP_FIRING_HPP_

#include <memory>
#include <utility>
#include <vector>

#include "troplin/plfunction.hpp"
#include "troplin/subgraph.hpp"

namespace troplin {

// An elementary chip-firing move: fire the closed subgraph `source` over a
// positive (possibly infinite) reach.  The associated rational function is
// x -> -min(reach, dist(x, source)).
struct ChipFiringMove {
  Subgraph source;
  ExtLen reach;
};

// The rational function of the move.  Requires a nonempty source with no
// component consisting only of points at infinity, and reach > 0.
PLFunction chip_firing(const Subgraph& source, const ExtLen& reach);

// f written as constant + sum coeff * chip_firing(move); all coefficients
// are positive integers.
struct ChipFiringDecomposition {
  Rat constant;
  std::vector<std::pair<ChipFiringMove, long long>> terms;
};

// Constructive decomposition of a rational function into elementary moves.
// Rejects the constant -infinity.
ChipFiringDecomposition decompose_chip_firing(const PLFunction& f);

// Evaluates a decomposition back into a function (for round trips).
PLFunction realize(std::shared_ptr<const MetricGraphModel> base,
                   const ChipFiringDecomposition& dec);

}  // namespace troplin

#endif  // TROPLIN_CHIP_FIRING_HPP_
