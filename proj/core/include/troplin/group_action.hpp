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

#ifndef TROPLIN_GROUP_ACTION_HPP_
#define TROPLIN_GROUP_ACTION_HPP_

#include <map>
#include <memory>
#include <string>
#include <vector>

#include "troplin/divisor.hpp"
#include "troplin/plfunction.hpp"
#include "troplin/subgraph.hpp"

namespace troplin {

// Image of an edge under an isometry.  `reversed` means end slot i maps to
// end slot 1-i of the image edge.
struct EdgeImage {
  std::string to;
  bool reversed = false;

  friend auto operator<=>(const EdgeImage&, const EdgeImage&) = default;
};

// A combinatorial isometry of a model: a length- and incidence-preserving
// bijection of vertices and edges with per-edge orientation flags.
struct Isometry {
  std::map<std::string, std::string> vertex_map;
  std::map<std::string, EdgeImage> edge_map;

  friend auto operator<=>(const Isometry&, const Isometry&) = default;
};

// A finite isometry group given on a working model whose vertex set every
// element preserves.
class GroupAction {
 public:
  std::shared_ptr<const MetricGraphModel> model;
  std::vector<Isometry> elements;  // closed; elements[0] is the identity

  long long order() const { return static_cast<long long>(elements.size()); }
  bool trivial() const { return elements.size() == 1; }
};

// Throws unless s is a valid isometry of m.
void validate_isometry(const MetricGraphModel& m, const Isometry& s);

Isometry identity_isometry(const MetricGraphModel& m);
// a after b: apply(compose(a, b), x) == apply(a, apply(b, x)).
Isometry compose(const MetricGraphModel& m, const Isometry& a,
                 const Isometry& b);
Isometry inverse(const MetricGraphModel& m, const Isometry& a);

// The group generated by the given isometries.  Aborts with an error when
// the closure exceeds the bound (TROPLIN_GROUP_BOUND, default 10000).
GroupAction close_group(std::shared_ptr<const MetricGraphModel> model,
                        const std::vector<Isometry>& generators);
GroupAction trivial_group(std::shared_ptr<const MetricGraphModel> model);

PointRef apply(const MetricGraphModel& m, const Isometry& s,
               const PointRef& x);
Divisor apply(const MetricGraphModel& m, const Isometry& s, const Divisor& d);
Subgraph apply(std::shared_ptr<const MetricGraphModel> base, const Isometry& s,
               const Subgraph& g);
// The transported function f o s.
PLFunction apply(std::shared_ptr<const MetricGraphModel> base,
                 const Isometry& s, const PLFunction& f);

bool invariant_divisor(const GroupAction& k, const Divisor& d);
bool invariant_function(const GroupAction& k, const PLFunction& f);

// Elements of K fixing the point x.
std::vector<Isometry> point_stabilizer(const GroupAction& k,
                                       const PointRef& x);

// The finite set V1 of points whose stabilizer is not locally constant.
std::vector<PointRef> compute_V1(const GroupAction& k);

// A K-stable refinement of the working model together with the induced
// action on it.  `elements` is aligned with the group's element order.
struct InducedAction {
  DerivedModel derived;
  std::vector<Isometry> elements;
};

// The induced action on a refinement whose vertex set is K-stable.
InducedAction induce(const GroupAction& k, const DerivedModel& m);

// The invariant model G1: vertices are the K-orbit of the canonical
// loopless vertices and V1, further subdivided so that the quotient graph
// is loopless and no edge is reversed by a stabilizing element.
InducedAction invariant_model(const GroupAction& k);

// Orbit partition with stabilizer orders; requires the model to be stable
// under every element.
struct OrbitData {
  std::map<std::string, std::string> vertex_orbit;  // member -> smallest id
  std::map<std::string, std::string> edge_orbit;
  std::map<std::string, long long> vertex_stab;
  std::map<std::string, long long> edge_stab;  // setwise stabilizer order
};
OrbitData orbit_data(const std::vector<Isometry>& elements,
                     const MetricGraphModel& m);

}  // namespace troplin

#endif  // TROPLIN_GROUP_ACTION_HPP_
