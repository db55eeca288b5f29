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

#ifndef TROPLIN_QUOTIENT_HPP_
#define TROPLIN_QUOTIENT_HPP_

#include <map>
#include <memory>
#include <string>
#include <vector>

#include "troplin/group_action.hpp"

namespace troplin {

// Image of a source edge under a morphism.  dilation > 0: the edge maps
// onto target edge `to`, stretching lengths by `dilation`; `flip` is true
// when the source canonical origin maps to the target canonical far end.
// dilation == 0: the edge collapses and `to` names a target vertex.
struct EdgeAssign {
  std::string to;
  long long dilation = 1;
  bool flip = false;

  friend auto operator<=>(const EdgeAssign&, const EdgeAssign&) = default;
};

// A morphism of tropical curves given on models: vertices to vertices,
// edges dilated onto edges or collapsed to vertices.
struct Morphism {
  std::shared_ptr<const MetricGraphModel> source;
  std::shared_ptr<const MetricGraphModel> target;
  std::map<std::string, std::string> vertex_map;
  std::map<std::string, EdgeAssign> edge_map;
};

void validate_morphism(const Morphism& phi);

// Image of a source-model point.
PointRef apply(const Morphism& phi, const PointRef& x);

// Preimage points of a target-model point; requires a finite morphism
// (no collapsed edge meeting the fiber).
std::vector<PointRef> fiber(const Morphism& phi, const PointRef& xp);

struct HarmonicResult {
  bool harmonic = false;
  bool degree_any = false;  // degree not pinned down (e.g. singleton source)
  long long degree = 0;
};
HarmonicResult is_harmonic(const Morphism& phi);

// deg_x at a source vertex; throws when the half-edge sums disagree.
long long local_degree(const Morphism& phi, const std::string& source_vertex);

// Divisors/functions below live on phi.source (resp. phi.target) as their
// base model.
Divisor push_forward_divisor(const Morphism& phi, const Divisor& d);
PLFunction push_forward_function(const Morphism& phi, const PLFunction& f);
PLFunction pull_back_function(const Morphism& phi, const PLFunction& g);

// The quotient curve of the action together with the canonical degree-|K|
// harmonic morphism.  `g1` is the invariant model re-rooted as its own base
// model; phi maps g1 to the quotient model.
struct QuotientResult {
  GroupAction k;
  InducedAction inv;
  std::shared_ptr<const MetricGraphModel> g1;
  std::shared_ptr<const MetricGraphModel> quotient;
  Morphism phi;
  long long degree = 1;
};

QuotientResult build_quotient(const GroupAction& k);

// Transport between the original base curve and the g1 model.
PointRef to_g1(const QuotientResult& q, const PointRef& base_pt);
PointRef from_g1(const QuotientResult& q, const PointRef& g1_pt);
Divisor divisor_to_g1(const QuotientResult& q, const Divisor& d);
PLFunction function_to_g1(const QuotientResult& q, const PLFunction& f);
PLFunction function_from_g1(const QuotientResult& q, const PLFunction& f1);

// Curve-level morphism operations on objects of the original base curve.
PointRef quotient_point(const QuotientResult& q, const PointRef& base_pt);
Divisor push_forward(const QuotientResult& q, const Divisor& d);
PLFunction push_forward(const QuotientResult& q, const PLFunction& f);
PLFunction pull_back(const QuotientResult& q, const PLFunction& g);
std::vector<PointRef> fiber_points(const QuotientResult& q,
                                   const PointRef& target_pt);

}  // namespace troplin

#endif  // TROPLIN_QUOTIENT_HPP_
