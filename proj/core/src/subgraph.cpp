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

#include "troplin/subgraph.hpp"

#include <functional>

namespace troplin {

bool Subgraph::contains(const PointRef& base_pt) const {
  PointRef p = ref.locate(base_pt);
  if (p.is_vertex()) return verts.count(p.vertex) > 0;
  return edges.count(p.edge) > 0;
}

std::map<std::string, int> Subgraph::boundary_outgoing() const {
  std::map<std::string, int> out;
  for (const std::string& v : verts) {
    int n = 0;
    for (const auto& [eid, slot] : ref.model.incident(v))
      if (!edges.count(eid)) ++n;
    if (n > 0) out[v] = n;
  }
  return out;
}

std::vector<PointRef> Subgraph::boundary_points() const {
  std::vector<PointRef> pts;
  for (const auto& [v, n] : boundary_outgoing())
    pts.push_back(ref.to_base(PointRef::at_vertex(v)));
  return pts;
}

std::vector<std::pair<std::set<std::string>, std::set<std::string>>>
Subgraph::components() const {
  std::map<std::string, std::string> parent;
  std::function<std::string(std::string)> find = [&](std::string a) {
    while (parent[a] != a) a = parent[a] = parent[parent[a]];
    return a;
  };
  for (const std::string& v : verts) parent["v" + v] = "v" + v;
  for (const std::string& e : edges) parent["e" + e] = "e" + e;
  for (const std::string& e : edges)
    for (int s = 0; s < 2; ++s) {
      const std::string& w = ref.model.edge(e).ends[s];
      parent[find("e" + e)] = find("v" + w);
    }
  std::map<std::string,
           std::pair<std::set<std::string>, std::set<std::string>>>
      comps;
  for (const std::string& v : verts) comps[find("v" + v)].first.insert(v);
  for (const std::string& e : edges) comps[find("e" + e)].second.insert(e);
  std::vector<std::pair<std::set<std::string>, std::set<std::string>>> out;
  for (auto& [root, c] : comps) out.push_back(std::move(c));
  return out;
}

bool Subgraph::has_pure_infinity_component() const {
  for (const auto& [cv, ce] : components()) {
    if (!ce.empty()) continue;
    bool all_inf = true;
    for (const std::string& v : cv)
      if (!ref.model.vertex(v).at_infinity) all_inf = false;
    if (all_inf) return true;
  }
  return false;
}

Subgraph make_subgraph(std::shared_ptr<const MetricGraphModel> base,
                       const std::vector<PointRef>& points,
                       const std::vector<Interval>& intervals) {
  std::vector<PointRef> cuts = points;
  for (const Interval& iv : intervals) {
    const EdgeRec& e = base->edge(iv.edge);
    if (!(iv.to.infinite ? true : iv.from < iv.to.value))
      throw Error("bad interval", "degenerate interval on edge " + iv.edge);
    if (iv.to.infinite && !e.length.infinite)
      throw Error("bad interval", "infinite interval on finite edge " + iv.edge);
    if (iv.from > 0) cuts.push_back(PointRef::interior(iv.edge, iv.from));
    if (!iv.to.infinite && (e.length.infinite || iv.to.value < e.length.value))
      cuts.push_back(PointRef::interior(iv.edge, iv.to.value));
  }
  Subgraph g;
  g.ref = refine(DerivedModel::trivial(base), cuts);
  for (const PointRef& p : points) {
    PointRef q = g.ref.locate(p);
    g.verts.insert(q.vertex);
  }
  // An edge of the refinement lies in the subgraph iff an interior sample of
  // it falls inside one of the intervals.
  for (const EdgeRec& me : g.ref.model.edges) {
    Rat half = me.length.infinite ? Rat(1) : me.length.value / 2;
    PointRef sample = g.ref.base_point_on_edge(me.id, half);
    if (sample.is_vertex()) continue;  // cannot happen for proper samples
    bool inside = false;
    for (const Interval& iv : intervals) {
      if (iv.edge != sample.edge) continue;
      if (sample.offset >= iv.from &&
          (iv.to.infinite || sample.offset <= iv.to.value))
        inside = true;
    }
    if (inside) {
      g.edges.insert(me.id);
      g.verts.insert(me.ends[0]);
      g.verts.insert(me.ends[1]);
    }
  }
  return g;
}

Subgraph whole_curve(std::shared_ptr<const MetricGraphModel> base) {
  Subgraph g;
  g.ref = DerivedModel::trivial(std::move(base));
  for (const VertexRec& v : g.ref.model.vertices) g.verts.insert(v.id);
  for (const EdgeRec& e : g.ref.model.edges) g.edges.insert(e.id);
  return g;
}

ExtLen dist_to_subgraph(const Subgraph& g, const PointRef& x) {
  if (g.empty()) throw Error("empty subgraph", "distance to empty subgraph");
  if (g.contains(x)) return ExtLen(Rat(0));
  DerivedModel r = refine(g.ref, {x});
  std::map<std::string, ExtLen> sources;
  for (const std::string& v : g.verts) {
    PointRef bp = g.ref.to_base(PointRef::at_vertex(v));
    sources[r.locate(bp).vertex] = ExtLen(Rat(0));
  }
  auto dist = multi_source_distance(r.model, sources);
  return dist.at(r.locate(x).vertex);
}

}  // namespace troplin
