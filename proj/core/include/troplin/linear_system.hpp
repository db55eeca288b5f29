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

#ifndef TROPLIN_LINEAR_SYSTEM_HPP_
#define TROPLIN_LINEAR_SYSTEM_HPP_

#include <memory>
#include <string>
#include <utility>
#include <vector>

#include "troplin/chip_firing.hpp"
#include "troplin/quotient.hpp"

namespace troplin {

// The ambient data of every membership/enumeration question: the curve, the
// divisor D, and the (possibly trivial) group with its quotient.
struct LinSysContext {
  std::shared_ptr<const MetricGraphModel> curve;
  Divisor d;
  GroupAction k;
  std::shared_ptr<const QuotientResult> q;
};

LinSysContext make_context(std::shared_ptr<const MetricGraphModel> curve,
                           Divisor d);
LinSysContext make_context(std::shared_ptr<const MetricGraphModel> curve,
                           Divisor d, GroupAction k);

// Generator representatives, normalized modulo tropical scaling.
struct GeneratorSet {
  std::vector<PLFunction> gens;
  std::vector<std::string> provenance;  // aligned with gens
  bool empty_system = false;            // deg(D) < 0
};

// f evaluated as max_j (coeff_j + gens[index_j]).
struct TropicalCombination {
  std::vector<std::pair<std::size_t, Rat>> terms;
};
PLFunction eval_combination(const GeneratorSet& gens,
                            const TropicalCombination& comb);

bool in_R(const LinSysContext& ctx, const PLFunction& f);
bool in_RK(const LinSysContext& ctx, const PLFunction& f);
bool can_fire(const LinSysContext& ctx, const Subgraph& g, const Divisor& e);
bool in_S(const LinSysContext& ctx, const PLFunction& f);
bool in_SK(const LinSysContext& ctx, const PLFunction& f);
bool is_extremal_invariant(const LinSysContext& ctx, const PLFunction& f);

GeneratorSet enumerate_S(const LinSysContext& ctx);
GeneratorSet enumerate_SK(const LinSysContext& ctx);
GeneratorSet minimal_generators(const LinSysContext& ctx);

TropicalCombination express(const LinSysContext& ctx, const GeneratorSet& gens,
                            const PLFunction& f);

std::vector<Divisor> invariant_linear_system(const LinSysContext& ctx);

// Deterministic key of a normalized representative; equal classes share it.
std::string function_key(const PLFunction& f);

}  // namespace troplin

#endif  // TROPLIN_LINEAR_SYSTEM_HPP_
