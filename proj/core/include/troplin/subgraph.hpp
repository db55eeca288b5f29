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

#ifndef TROPLIN_SUBGRAPH_HPP_
#define TROPLIN_SUBGRAPH_HPP_

#include <map>
#include <memory>
#include <set>
#include <string>
#include <vector>

#include "troplin/metric_graph.hpp"

namespace troplin {

// A closed subinterval of a base edge, in canonical coordinates.  `to` may
// be infinite, in which case the interval includes the point at infinity.
struct Interval {
  std::string edge;
  Rat from;
  ExtLen to;
};

// A closed subset of the curve with finitely many components, stored as
// vertices and whole closed edges of a refinement of the base model.
class Subgraph {
 public:
  DerivedModel ref;
  std::set<std::string> verts;
  std::set<std::string> edges;

  bool empty() const { return verts.empty(); }
  bool contains(const PointRef& base_pt) const;

  // Boundary vertices with the number of half-edges leaving the subgraph.
  std::map<std::string, int> boundary_outgoing() const;
  std::vector<PointRef> boundary_points() const;

  // Partition into connected pieces; each piece is given by its vertex and
  // edge sets on `ref`.
  std::vector<std::pair<std::set<std::string>, std::set<std::string>>>
  components() const;

  // True iff some component consists only of points at infinity.
  bool has_pure_infinity_component() const;
};

Subgraph make_subgraph(std::shared_ptr<const MetricGraphModel> base,
                       const std::vector<PointRef>& points,
                       const std::vector<Interval>& intervals);
Subgraph whole_curve(std::shared_ptr<const MetricGraphModel> base);

// Distance from x to the nearest point of g; 0 iff x lies in g.
ExtLen dist_to_subgraph(const Subgraph& g, const PointRef& x);

}  // namespace troplin

#endif  // TROPLIN_SUBGRAPH_HPP_
