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

#ifndef TROPLIN_METRIC_GRAPH_HPP_
#define TROPLIN_METRIC_GRAPH_HPP_

#include <array>
#include <functional>
#include <map>
#include <memory>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include "troplin/rational.hpp"

namespace troplin {

struct VertexRec {
  std::string id;
  bool at_infinity = false;
};

struct EdgeRec {
  std::string id;
  std::array<std::string, 2> ends;
  ExtLen length;
};

// A model of a tropical curve: a finite connected multigraph with exact
// positive edge lengths.  Edges of infinite length end in a distinguished
// valence-one vertex flagged at_infinity.  Loops and parallel edges are
// allowed.
class MetricGraphModel {
 public:
  std::vector<VertexRec> vertices;
  std::vector<EdgeRec> edges;

  // Builds lookup tables and checks all structural invariants.  Must be
  // called after the vertex/edge lists are filled and before any query.
  void finalize();

  bool has_vertex(const std::string& id) const;
  bool has_edge(const std::string& id) const;
  const VertexRec& vertex(const std::string& id) const;
  const EdgeRec& edge(const std::string& id) const;

  // Incident (edge id, end slot) pairs; a loop appears twice.
  const std::vector<std::pair<std::string, int>>& incident(
      const std::string& v) const;
  int valence(const std::string& v) const;

  bool is_loop(const EdgeRec& e) const { return e.ends[0] == e.ends[1]; }
  bool is_singleton() const { return edges.empty(); }

  // The end slot from which canonical interior coordinates are measured:
  // slot 0, except on an infinite edge whose slot-0 end is at infinity.
  int origin_slot(const EdgeRec& e) const;
  const std::string& origin(const EdgeRec& e) const {
    return e.ends[origin_slot(e)];
  }
  const std::string& far_end(const EdgeRec& e) const {
    return e.ends[1 - origin_slot(e)];
  }

 private:
  std::map<std::string, int> vertex_index_;
  std::map<std::string, int> edge_index_;
  std::map<std::string, std::vector<std::pair<std::string, int>>> incidence_;
};

// A point on the curve: either a model vertex, or an interior edge position
// stored in canonical coordinates (measured from origin_slot; on infinite
// edges always from the finite end).
struct PointRef {
  std::string vertex;  // set iff vertex point
  std::string edge;    // set iff interior point
  Rat offset;          // canonical coordinate, 0 < offset < length

  bool is_vertex() const { return edge.empty(); }

  static PointRef at_vertex(std::string v) {
    PointRef p;
    p.vertex = std::move(v);
    return p;
  }
  static PointRef interior(std::string e, Rat t) {
    PointRef p;
    p.edge = std::move(e);
    p.offset = std::move(t);
    return p;
  }

  friend bool operator==(const PointRef& a, const PointRef& b) {
    return a.vertex == b.vertex && a.edge == b.edge && a.offset == b.offset;
  }
  friend bool operator!=(const PointRef& a, const PointRef& b) {
    return !(a == b);
  }
  friend bool operator<(const PointRef& a, const PointRef& b) {
    if (a.vertex != b.vertex) return a.vertex < b.vertex;
    if (a.edge != b.edge) return a.edge < b.edge;
    return a.offset < b.offset;
  }
};

// Normalizes a point given as (edge, offset measured from anchor).  Offsets
// of 0 or the full length collapse to the corresponding endpoint.  On a loop
// the anchor must be the loop vertex and the offset is measured in the
// direction of end slot 0.
PointRef make_point(const MetricGraphModel& m, const std::string& edge,
                    const Rat& offset, const std::string& anchor);

// True if p denotes a point at infinity.
bool is_infinite_point(const MetricGraphModel& m, const PointRef& p);

// Geometric valence: the number of local branches at p (2 for any interior
// edge point).
int valence(const MetricGraphModel& m, const PointRef& p);

// A portion of a base edge traversed by a derived edge, in canonical base
// coordinates.  Traversal runs from `from` to `to`; `to` may be infinite
// (the tail of a ray) and may be smaller than `from` (backward traversal).
struct PathSeg {
  std::string base_edge;
  Rat from;
  ExtLen to;
};

// A model of the same curve as a fixed base model, together with exact
// two-way point transport.  Refinements add vertices; suppression merges
// edges through unwanted smooth vertices.  All derived models hand out
// points of the *base* model so that objects built on different refinements
// can be compared.
class DerivedModel {
 public:
  std::shared_ptr<const MetricGraphModel> base;
  MetricGraphModel model;
  std::map<std::string, PointRef> vertex_base;          // model vertex -> base
  std::map<std::string, std::vector<PathSeg>> edge_paths;  // from edge origin

  static DerivedModel trivial(std::shared_ptr<const MetricGraphModel> base);

  PointRef to_base(const PointRef& model_pt) const;
  PointRef locate(const PointRef& base_pt) const;

  // Point of the base curve at distance `along` from the origin of the given
  // model edge.
  PointRef base_point_on_edge(const std::string& model_edge,
                              const Rat& along) const;

  void build_index();  // called by the factory functions below

 private:
  std::map<std::string, PointRef> base_vertex_pos_;
  struct Cover {
    Rat lo, hi;        // interval of base coords covered (hi meaningful if !ray)
    bool ray = false;  // covers [lo, infinity)
    std::string model_edge;
    Rat acc;      // model-edge coordinate at base coord `at_from`
    Rat at_from;  // base coord where traversal enters this seg
    bool forward; // base coord increases along the model edge
  };
  std::map<std::string, std::vector<Cover>> covers_;
};

// Same-curve model with the given base points added as vertices.
DerivedModel refine(const DerivedModel& m, const std::vector<PointRef>& pts);

// Merges edges through every smooth vertex for which `keep` is false.
// Vertices of valence other than two are always kept, as is one vertex per
// otherwise vertex-free cycle or doubly-infinite chain.
DerivedModel suppress(const DerivedModel& m,
                      const std::function<bool(const std::string&)>& keep);

// The canonical loopless model: vertices are the points of valence != 2
// (with the circle and doubly-infinite-line conventions), loop midpoints
// added.
DerivedModel canonical_loopless(const DerivedModel& m);
MetricGraphModel canonical_loopless_model(const MetricGraphModel& m);

// Shortest-path distances from the given sources to every vertex.
std::map<std::string, ExtLen> multi_source_distance(
    const MetricGraphModel& m,
    const std::map<std::string, ExtLen>& sources);

// Shortest-path distance between two points; infinite iff the points are
// distinct and one is at infinity or they are separated by infinite edges.
ExtLen distance(const DerivedModel& m, const PointRef& x, const PointRef& y);
ExtLen distance(const MetricGraphModel& m, const PointRef& x,
                const PointRef& y);

// True iff removing the finite point set disconnects the curve.
bool is_cut_set(const DerivedModel& m, const std::vector<PointRef>& pts);
bool is_cut_set(const MetricGraphModel& m, const std::vector<PointRef>& pts);

}  // namespace troplin

#endif  // TROPLIN_METRIC_GRAPH_HPP_
