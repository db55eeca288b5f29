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

#include "troplin/group_action.hpp"

#include <algorithm>
#include <cstdlib>
#include <set>

namespace troplin {

void validate_isometry(const MetricGraphModel& m, const Isometry& s) {
  if (s.vertex_map.size() != m.vertices.size() ||
      s.edge_map.size() != m.edges.size())
    throw Error("non-isometry", "map size does not match the model");
  std::set<std::string> vimg, eimg;
  for (const VertexRec& v : m.vertices) {
    auto it = s.vertex_map.find(v.id);
    if (it == s.vertex_map.end())
      throw Error("non-isometry", "vertex missing from map: " + v.id);
    if (!m.has_vertex(it->second))
      throw Error("non-isometry", "dangling id: " + it->second);
    if (m.vertex(it->second).at_infinity != v.at_infinity)
      throw Error("non-isometry", "infinity flag not preserved at " + v.id);
    if (!vimg.insert(it->second).second)
      throw Error("non-isometry", "vertex map not injective");
  }
  for (const EdgeRec& e : m.edges) {
    auto it = s.edge_map.find(e.id);
    if (it == s.edge_map.end())
      throw Error("non-isometry", "edge missing from map: " + e.id);
    if (!m.has_edge(it->second.to))
      throw Error("non-isometry", "dangling id: " + it->second.to);
    const EdgeRec& e2 = m.edge(it->second.to);
    if (e.length != e2.length)
      throw Error("non-isometry", "length not preserved on " + e.id);
    for (int sl = 0; sl < 2; ++sl) {
      int tl = it->second.reversed ? 1 - sl : sl;
      if (s.vertex_map.at(e.ends[sl]) != e2.ends[tl])
        throw Error("non-isometry", "incidence not preserved on " + e.id);
    }
    if (!eimg.insert(it->second.to).second)
      throw Error("non-isometry", "edge map not injective");
  }
}

Isometry identity_isometry(const MetricGraphModel& m) {
  Isometry s;
  for (const VertexRec& v : m.vertices) s.vertex_map[v.id] = v.id;
  for (const EdgeRec& e : m.edges) s.edge_map[e.id] = {e.id, false};
  return s;
}

Isometry compose(const MetricGraphModel& m, const Isometry& a,
                 const Isometry& b) {
  Isometry c;
  for (const auto& [v, w] : b.vertex_map) c.vertex_map[v] = a.vertex_map.at(w);
  for (const auto& [e, im] : b.edge_map) {
    const EdgeImage& im2 = a.edge_map.at(im.to);
    c.edge_map[e] = {im2.to, im.reversed != im2.reversed};
  }
  return c;
}

Isometry inverse(const MetricGraphModel& m, const Isometry& a) {
  Isometry c;
  for (const auto& [v, w] : a.vertex_map) c.vertex_map[w] = v;
  for (const auto& [e, im] : a.edge_map) c.edge_map[im.to] = {e, im.reversed};
  return c;
}

GroupAction close_group(std::shared_ptr<const MetricGraphModel> model,
                        const std::vector<Isometry>& generators) {
  for (const Isometry& g : generators) validate_isometry(*model, g);
  long long bound = 10000;
  if (const char* env = std::getenv("TROPLIN_GROUP_BOUND")) {
    bound = std::atoll(env);
    if (bound <= 0) throw Error("bad bound", "TROPLIN_GROUP_BOUND must be positive");
  }
  Isometry id = identity_isometry(*model);
  std::set<Isometry> grp = {id};
  std::vector<Isometry> frontier = {id};
  while (!frontier.empty()) {
    std::vector<Isometry> next;
    for (const Isometry& e : frontier)
      for (const Isometry& g : generators) {
        Isometry c = compose(*model, g, e);
        if (grp.insert(c).second) {
          if (static_cast<long long>(grp.size()) > bound)
            throw Error("group not finite at this bound",
                        "closure exceeds " + std::to_string(bound) +
                            " elements");
          next.push_back(std::move(c));
        }
      }
    frontier = std::move(next);
  }
  GroupAction k;
  k.model = std::move(model);
  k.elements.push_back(id);
  for (const Isometry& e : grp)
    if (!(e == id)) k.elements.push_back(e);
  return k;
}

GroupAction trivial_group(std::shared_ptr<const MetricGraphModel> model) {
  GroupAction k;
  k.elements.push_back(identity_isometry(*model));
  k.model = std::move(model);
  return k;
}

PointRef apply(const MetricGraphModel& m, const Isometry& s,
               const PointRef& x) {
  if (x.is_vertex()) return PointRef::at_vertex(s.vertex_map.at(x.vertex));
  const EdgeRec& e = m.edge(x.edge);
  const EdgeImage& im = s.edge_map.at(x.edge);
  const EdgeRec& e2 = m.edge(im.to);
  int s0 = m.origin_slot(e);
  int s1 = im.reversed ? 1 - s0 : s0;
  Rat off = x.offset;
  if (s1 != m.origin_slot(e2)) {
    if (e2.length.infinite)
      throw Error("internal", "isometry folds an infinite edge");
    off = e2.length.value - x.offset;
  }
  return PointRef::interior(im.to, off);
}

Divisor apply(const MetricGraphModel& m, const Isometry& s, const Divisor& d) {
  Divisor out;
  for (const auto& [p, c] : d.coeffs) out.add(apply(m, s, p), c);
  return out;
}

Subgraph apply(std::shared_ptr<const MetricGraphModel> base, const Isometry& s,
               const Subgraph& g) {
  std::vector<PointRef> pts;
  for (const std::string& v : g.verts)
    pts.push_back(apply(*base, s, g.ref.to_base(PointRef::at_vertex(v))));
  std::vector<Interval> ivs;
  for (const std::string& eid : g.edges) {
    for (const PathSeg& seg : g.ref.edge_paths.at(eid)) {
      const EdgeRec& b = base->edge(seg.base_edge);
      const EdgeImage& im = s.edge_map.at(seg.base_edge);
      const EdgeRec& b2 = base->edge(im.to);
      int s0 = base->origin_slot(b);
      int s1 = im.reversed ? 1 - s0 : s0;
      bool flip = s1 != base->origin_slot(b2);
      if (seg.to.infinite) {
        if (flip) throw Error("internal", "isometry folds a ray");
        ivs.push_back({im.to, seg.from, ExtLen::inf()});
      } else {
        Rat lo = seg.from < seg.to.value ? seg.from : seg.to.value;
        Rat hi = seg.from < seg.to.value ? seg.to.value : seg.from;
        if (flip)
          ivs.push_back({im.to, Rat(b2.length.value - hi),
                         ExtLen(Rat(b2.length.value - lo))});
        else
          ivs.push_back({im.to, lo, ExtLen(hi)});
      }
    }
  }
  return make_subgraph(std::move(base), pts, ivs);
}

PLFunction apply(std::shared_ptr<const MetricGraphModel> base,
                 const Isometry& s, const PLFunction& f) {
  if (f.minus_inf) return f;
  Isometry si = inverse(*base, s);
  std::vector<PointRef> cuts;
  for (const auto& [v, bp] : f.ref.vertex_base)
    cuts.push_back(apply(*base, si, bp));
  DerivedModel target = refine(DerivedModel::trivial(base), cuts);
  std::map<std::string, ExtVal> vals;
  for (const VertexRec& v : target.model.vertices)
    if (!v.at_infinity)
      vals[v.id] = f.eval(apply(*base, s, target.vertex_base.at(v.id)));
  std::map<std::string, long long> rays;
  for (const EdgeRec& e : target.model.edges) {
    if (!e.length.infinite) continue;
    PointRef q = apply(*base, s, target.base_point_on_edge(e.id, Rat(1)));
    PointRef p = f.ref.locate(q);
    if (p.is_vertex()) throw Error("internal", "breakpoint preimage missed");
    rays[e.id] = f.slopes.at(p.edge);
  }
  return make_plfunction(target, vals, rays);
}

bool invariant_divisor(const GroupAction& k, const Divisor& d) {
  for (size_t i = 1; i < k.elements.size(); ++i)
    if (!(apply(*k.model, k.elements[i], d) == d)) return false;
  return true;
}

bool invariant_function(const GroupAction& k, const PLFunction& f) {
  for (size_t i = 1; i < k.elements.size(); ++i)
    if (!equal_functions(f, apply(k.model, k.elements[i], f))) return false;
  return true;
}

std::vector<Isometry> point_stabilizer(const GroupAction& k,
                                       const PointRef& x) {
  std::vector<Isometry> out;
  for (const Isometry& s : k.elements)
    if (apply(*k.model, s, x) == x) out.push_back(s);
  return out;
}

std::vector<PointRef> compute_V1(const GroupAction& k) {
  std::set<PointRef> v1;
  const MetricGraphModel& m = *k.model;
  for (size_t i = 1; i < k.elements.size(); ++i) {
    const Isometry& s = k.elements[i];
    std::set<std::string> fixed_v, fixed_e;
    for (const auto& [v, w] : s.vertex_map)
      if (v == w) fixed_v.insert(v);
    for (const auto& [e, im] : s.edge_map) {
      if (im.to != e) continue;
      if (!im.reversed) {
        fixed_e.insert(e);
        continue;
      }
      const EdgeRec& er = m.edge(e);
      if (er.length.infinite)
        throw Error("internal", "reversed infinite edge");
      v1.insert(PointRef::interior(e, Rat(er.length.value / 2)));
    }
    // A fixed vertex is an interior point of the fixed set only when every
    // incident half-edge germ is fixed.
    for (const std::string& v : fixed_v)
      for (const auto& [eid, slot] : m.incident(v))
        if (!fixed_e.count(eid)) {
          v1.insert(PointRef::at_vertex(v));
          break;
        }
  }
  return std::vector<PointRef>(v1.begin(), v1.end());
}

InducedAction induce(const GroupAction& k, const DerivedModel& m) {
  InducedAction ia;
  ia.derived = m;
  for (const Isometry& s : k.elements) {
    Isometry t;
    for (const VertexRec& v : m.model.vertices) {
      PointRef q = apply(*k.model, s, m.vertex_base.at(v.id));
      PointRef loc = m.locate(q);
      if (!loc.is_vertex())
        throw Error("non-stable model", "vertex set not stable at " + v.id);
      t.vertex_map[v.id] = loc.vertex;
    }
    for (const EdgeRec& e : m.model.edges) {
      Rat at = e.length.infinite ? Rat(1) : Rat(e.length.value / 3);
      PointRef q = apply(*k.model, s, m.base_point_on_edge(e.id, at));
      PointRef loc = m.locate(q);
      if (loc.is_vertex())
        throw Error("non-stable model", "edge set not stable at " + e.id);
      const EdgeRec& e2 = m.model.edge(loc.edge);
      if (e2.length != e.length)
        throw Error("non-stable model", "edge image length mismatch at " + e.id);
      bool reversed;
      if (e.length.infinite || loc.offset == at)
        reversed = false;
      else if (loc.offset == e.length.value - at)
        reversed = true;
      else
        throw Error("non-stable model", "edge image misaligned at " + e.id);
      t.edge_map[e.id] = {loc.edge, reversed};
    }
    validate_isometry(m.model, t);
    ia.elements.push_back(std::move(t));
  }
  return ia;
}

OrbitData orbit_data(const std::vector<Isometry>& elements,
                     const MetricGraphModel& m) {
  OrbitData od;
  long long n = static_cast<long long>(elements.size());
  for (const VertexRec& v : m.vertices) {
    std::set<std::string> orbit;
    long long stab = 0;
    for (const Isometry& s : elements) {
      const std::string& w = s.vertex_map.at(v.id);
      orbit.insert(w);
      if (w == v.id) ++stab;
    }
    od.vertex_orbit[v.id] = *orbit.begin();
    od.vertex_stab[v.id] = stab;
    if (static_cast<long long>(orbit.size()) * stab != n)
      throw Error("internal", "orbit-stabilizer violation at vertex " + v.id);
  }
  for (const EdgeRec& e : m.edges) {
    std::set<std::string> orbit;
    long long stab = 0;
    for (const Isometry& s : elements) {
      const EdgeImage& im = s.edge_map.at(e.id);
      orbit.insert(im.to);
      if (im.to == e.id) ++stab;
    }
    od.edge_orbit[e.id] = *orbit.begin();
    od.edge_stab[e.id] = stab;
    if (static_cast<long long>(orbit.size()) * stab != n)
      throw Error("internal", "orbit-stabilizer violation at edge " + e.id);
  }
  return od;
}

InducedAction invariant_model(const GroupAction& k) {
  DerivedModel c0 = canonical_loopless(DerivedModel::trivial(k.model));
  std::set<PointRef> pts;
  for (const auto& [v, bp] : c0.vertex_base) pts.insert(bp);
  for (const PointRef& p : compute_V1(k)) pts.insert(p);
  std::set<PointRef> closed;
  for (const PointRef& p : pts)
    for (const Isometry& s : k.elements) closed.insert(apply(*k.model, s, p));
  DerivedModel d = refine(
      DerivedModel::trivial(k.model),
      std::vector<PointRef>(closed.begin(), closed.end()));
  InducedAction ia = induce(k, d);
  // Subdivide edge orbits whose quotient image would be a loop.
  for (int pass = 0;; ++pass) {
    if (pass > 4) throw Error("internal", "loopless subdivision did not settle");
    OrbitData od = orbit_data(ia.elements, ia.derived.model);
    std::set<PointRef> mids;
    for (const EdgeRec& e : ia.derived.model.edges) {
      if (od.vertex_orbit.at(e.ends[0]) != od.vertex_orbit.at(e.ends[1]))
        continue;
      for (const EdgeRec& e2 : ia.derived.model.edges) {
        if (od.edge_orbit.at(e2.id) != od.edge_orbit.at(e.id)) continue;
        if (e2.length.infinite)
          throw Error("internal", "infinite quotient loop");
        mids.insert(
            ia.derived.base_point_on_edge(e2.id, Rat(e2.length.value / 2)));
      }
    }
    if (mids.empty()) break;
    d = refine(d, std::vector<PointRef>(mids.begin(), mids.end()));
    ia = induce(k, d);
  }
  // After refining at V1 no edge may be reversed by a stabilizing element.
  for (const Isometry& s : ia.elements)
    for (const auto& [e, im] : s.edge_map)
      if (im.to == e && im.reversed)
        throw Error("internal", "reversed stabilized edge in invariant model");
  return ia;
}

}  // namespace troplin
