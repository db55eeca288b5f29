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

#include "troplin/quotient.hpp"

#include <algorithm>
#include <optional>
#include <set>
#include <utility>

namespace troplin {

void validate_morphism(const Morphism& phi) {
  const MetricGraphModel& s = *phi.source;
  const MetricGraphModel& t = *phi.target;
  if (phi.vertex_map.size() != s.vertices.size() ||
      phi.edge_map.size() != s.edges.size())
    throw Error("bad morphism", "assignment size does not match the source");
  for (const VertexRec& v : s.vertices) {
    auto it = phi.vertex_map.find(v.id);
    if (it == phi.vertex_map.end())
      throw Error("bad morphism", "vertex missing from map: " + v.id);
    if (!t.has_vertex(it->second))
      throw Error("bad morphism", "dangling id: " + it->second);
  }
  for (const EdgeRec& e : s.edges) {
    auto it = phi.edge_map.find(e.id);
    if (it == phi.edge_map.end())
      throw Error("bad morphism", "edge missing from map: " + e.id);
    const EdgeAssign& a = it->second;
    if (a.dilation < 0)
      throw Error("bad morphism", "negative dilation on " + e.id);
    if (a.dilation == 0) {
      if (!t.has_vertex(a.to))
        throw Error("bad morphism", "dangling id: " + a.to);
      for (int sl = 0; sl < 2; ++sl)
        if (phi.vertex_map.at(e.ends[sl]) != a.to)
          throw Error("bad morphism",
                      "collapsed edge endpoints disagree on " + e.id);
      continue;
    }
    if (!t.has_edge(a.to))
      throw Error("bad morphism", "dangling id: " + a.to);
    const EdgeRec& et = t.edge(a.to);
    if (e.length.infinite != et.length.infinite)
      throw Error("bad morphism", "finite/infinite mismatch on " + e.id);
    if (e.length.infinite) {
      if (a.flip)
        throw Error("bad morphism", "flipped infinite edge " + e.id);
    } else if (et.length.value != a.dilation * e.length.value) {
      throw Error("bad morphism", "dilation inconsistency on " + e.id);
    }
    const std::string& so = s.origin(e);
    const std::string& sf = s.far_end(e);
    const std::string& to_or = a.flip ? t.far_end(et) : t.origin(et);
    const std::string& to_far = a.flip ? t.origin(et) : t.far_end(et);
    if (phi.vertex_map.at(so) != to_or || phi.vertex_map.at(sf) != to_far)
      throw Error("bad morphism", "endpoint inconsistency on " + e.id);
  }
}

PointRef apply(const Morphism& phi, const PointRef& x) {
  if (x.is_vertex()) return PointRef::at_vertex(phi.vertex_map.at(x.vertex));
  const EdgeAssign& a = phi.edge_map.at(x.edge);
  if (a.dilation == 0) return PointRef::at_vertex(a.to);
  const EdgeRec& et = phi.target->edge(a.to);
  Rat t = a.dilation * x.offset;
  if (a.flip) t = et.length.value - t;
  return PointRef::interior(a.to, t);
}

std::vector<PointRef> fiber(const Morphism& phi, const PointRef& xp) {
  std::vector<PointRef> out;
  if (xp.is_vertex()) {
    phi.target->vertex(xp.vertex);  // validate id
    for (const auto& [v, w] : phi.vertex_map)
      if (w == xp.vertex) out.push_back(PointRef::at_vertex(v));
    for (const auto& [e, a] : phi.edge_map)
      if (a.dilation == 0 && a.to == xp.vertex)
        throw Error("not finite", "fiber meets a collapsed edge");
    return out;
  }
  const EdgeRec& et = phi.target->edge(xp.edge);
  for (const auto& [e, a] : phi.edge_map) {
    if (a.dilation == 0 || a.to != xp.edge) continue;
    Rat t = a.flip ? Rat(et.length.value - xp.offset) : xp.offset;
    out.push_back(PointRef::interior(e, Rat(t / a.dilation)));
  }
  return out;
}

namespace {

// Half-edge sums at a source vertex; nullopt when they disagree.
std::optional<long long> local_degree_opt(const Morphism& phi,
                                          const std::string& x) {
  const MetricGraphModel& s = *phi.source;
  const MetricGraphModel& t = *phi.target;
  const std::string& xp = phi.vertex_map.at(x);
  std::map<std::pair<std::string, int>, long long> sums;
  for (const auto& [eid, slot] : t.incident(xp)) sums[{eid, slot}] = 0;
  for (const auto& [eid, slot] : s.incident(x)) {
    const EdgeAssign& a = phi.edge_map.at(eid);
    if (a.dilation == 0) continue;
    const EdgeRec& es = s.edge(eid);
    const EdgeRec& et = t.edge(a.to);
    bool at_origin = slot == s.origin_slot(es);
    bool t_origin = at_origin != a.flip;
    int tslot = t_origin ? t.origin_slot(et) : 1 - t.origin_slot(et);
    sums[{a.to, tslot}] += a.dilation;
  }
  if (sums.empty()) return 0;
  long long d = sums.begin()->second;
  for (const auto& [h, v] : sums)
    if (v != d) return std::nullopt;
  return d;
}

}  // namespace

HarmonicResult is_harmonic(const Morphism& phi) {
  const MetricGraphModel& s = *phi.source;
  const MetricGraphModel& t = *phi.target;
  if (s.is_singleton() && !t.is_singleton()) return {true, true, 0};
  if (t.is_singleton()) return {true, false, 0};
  std::map<std::string, long long> vdeg, edeg;
  for (const VertexRec& x : s.vertices) {
    auto d = local_degree_opt(phi, x.id);
    if (!d) return {false, false, 0};
    vdeg[phi.vertex_map.at(x.id)] += *d;
  }
  for (const EdgeRec& e : s.edges) {
    const EdgeAssign& a = phi.edge_map.at(e.id);
    if (a.dilation > 0) edeg[a.to] += a.dilation;
  }
  std::optional<long long> deg;
  auto check = [&deg](long long d) {
    if (!deg) deg = d;
    return *deg == d;
  };
  for (const EdgeRec& et : t.edges)
    if (!check(edeg.count(et.id) ? edeg[et.id] : 0)) return {true, true, 0};
  for (const VertexRec& vt : t.vertices)
    if (!check(vdeg.count(vt.id) ? vdeg[vt.id] : 0)) return {true, true, 0};
  return {true, false, *deg};
}

long long local_degree(const Morphism& phi, const std::string& source_vertex) {
  auto d = local_degree_opt(phi, source_vertex);
  if (!d) throw Error("not harmonic", "deg_x undefined at " + source_vertex);
  return *d;
}

Divisor push_forward_divisor(const Morphism& phi, const Divisor& d) {
  Divisor out;
  for (const auto& [p, c] : d.coeffs) out.add(apply(phi, p), c);
  return out;
}

PLFunction push_forward_function(const Morphism& phi, const PLFunction& f) {
  HarmonicResult hr = is_harmonic(phi);
  if (!hr.harmonic)
    throw Error("not harmonic", "push-forward requires a harmonic morphism");
  for (const auto& [e, a] : phi.edge_map)
    if (a.dilation == 0)
      throw Error("not finite", "push-forward requires a finite morphism");
  if (f.minus_inf) return PLFunction::constant_minus_inf(phi.target);
  if (phi.source->is_singleton()) {
    if (phi.target->is_singleton()) {
      Rat c = f.values.begin()->second.v;
      return PLFunction::constant(phi.target, Rat(hr.degree * c));
    }
    return PLFunction::constant(phi.target, Rat(0));
  }

  std::vector<PointRef> cuts;
  for (const auto& [v, bp] : f.ref.vertex_base) cuts.push_back(apply(phi, bp));
  DerivedModel target = refine(DerivedModel::trivial(phi.target), cuts);

  std::map<std::string, ExtVal> vals;
  for (const VertexRec& v : target.model.vertices) {
    if (v.at_infinity) continue;
    PointRef bp = target.vertex_base.at(v.id);
    Rat sum(0);
    if (bp.is_vertex()) {
      for (const auto& [x, w] : phi.vertex_map) {
        if (w != bp.vertex) continue;
        ExtVal val = f.eval(PointRef::at_vertex(x));
        if (!val.finite())
          throw Error("internal", "infinite value over a finite point");
        sum += local_degree(phi, x) * val.v;
      }
    } else {
      for (const PointRef& x : fiber(phi, bp)) {
        ExtVal val = f.eval(x);
        sum += phi.edge_map.at(x.edge).dilation * val.v;
      }
    }
    vals[v.id] = ExtVal(sum);
  }

  std::map<std::string, long long> rays;
  for (const EdgeRec& e : target.model.edges) {
    if (!e.length.infinite) continue;
    PointRef sample = target.base_point_on_edge(e.id, Rat(1));
    long long slope = 0;
    for (const PointRef& x : fiber(phi, sample)) {
      PointRef p = f.ref.locate(x);
      if (p.is_vertex())
        throw Error("internal", "breakpoint image missed in push-forward");
      slope += f.slopes.at(p.edge);
    }
    rays[e.id] = slope;
  }

  // A fiber over a point at infinity mixing +inf and -inf values has no
  // well-defined weighted sum.
  for (const VertexRec& v : target.model.vertices) {
    if (!v.at_infinity) continue;
    PointRef bp = target.vertex_base.at(v.id);
    bool pos = false, neg = false;
    for (const PointRef& x : fiber(phi, bp)) {
      ExtVal val = f.eval(x);
      if (val.cls > 0) pos = true;
      if (val.cls < 0) neg = true;
    }
    if (pos && neg)
      throw Error("indeterminate sum",
                  "mixed infinite values over " + v.id);
  }
  return make_plfunction(target, vals, rays);
}

PLFunction pull_back_function(const Morphism& phi, const PLFunction& g) {
  if (g.minus_inf) return PLFunction::constant_minus_inf(phi.source);
  std::vector<PointRef> cuts;
  for (const auto& [v, bp] : g.ref.vertex_base)
    for (const PointRef& x : fiber(phi, bp)) cuts.push_back(x);
  DerivedModel src = refine(DerivedModel::trivial(phi.source), cuts);
  std::map<std::string, ExtVal> vals;
  for (const VertexRec& v : src.model.vertices) {
    if (v.at_infinity) continue;
    vals[v.id] = g.eval(apply(phi, src.vertex_base.at(v.id)));
  }
  std::map<std::string, long long> rays;
  for (const EdgeRec& e : src.model.edges) {
    if (!e.length.infinite) continue;
    PointRef sample = src.base_point_on_edge(e.id, Rat(1));
    const EdgeAssign& a = phi.edge_map.at(sample.edge);
    if (a.dilation == 0) {
      rays[e.id] = 0;
      continue;
    }
    PointRef p = g.ref.locate(apply(phi, sample));
    if (p.is_vertex())
      throw Error("internal", "breakpoint preimage missed in pull-back");
    rays[e.id] = g.slopes.at(p.edge) * a.dilation;
  }
  return make_plfunction(src, vals, rays);
}

QuotientResult build_quotient(const GroupAction& k) {
  QuotientResult q;
  q.k = k;
  q.inv = invariant_model(k);
  q.g1 = std::make_shared<MetricGraphModel>(q.inv.derived.model);
  q.degree = k.order();

  OrbitData od = orbit_data(q.inv.elements, *q.g1);
  MetricGraphModel gp;
  std::set<std::string> vdone, edone;
  for (const VertexRec& v : q.g1->vertices) {
    const std::string& rep = od.vertex_orbit.at(v.id);
    if (vdone.insert(rep).second)
      gp.vertices.push_back({rep, q.g1->vertex(rep).at_infinity});
  }
  for (const EdgeRec& e : q.g1->edges) {
    const std::string& rep = od.edge_orbit.at(e.id);
    if (!edone.insert(rep).second) continue;
    const EdgeRec& er = q.g1->edge(rep);
    ExtLen len = er.length.infinite
                     ? ExtLen::inf()
                     : ExtLen(Rat(od.edge_stab.at(rep) * er.length.value));
    gp.edges.push_back({rep,
                        {od.vertex_orbit.at(er.ends[0]),
                         od.vertex_orbit.at(er.ends[1])},
                        len});
  }
  gp.finalize();
  q.quotient = std::make_shared<const MetricGraphModel>(std::move(gp));

  Morphism phi;
  phi.source = q.g1;
  phi.target = q.quotient;
  for (const VertexRec& v : q.g1->vertices)
    phi.vertex_map[v.id] = od.vertex_orbit.at(v.id);
  for (const EdgeRec& e : q.g1->edges) {
    const std::string& rep = od.edge_orbit.at(e.id);
    const EdgeRec& et = q.quotient->edge(rep);
    bool flip =
        od.vertex_orbit.at(q.g1->origin(e)) != q.quotient->origin(et);
    phi.edge_map[e.id] = {rep, od.edge_stab.at(e.id), flip};
  }
  validate_morphism(phi);
  q.phi = std::move(phi);
  return q;
}

PointRef to_g1(const QuotientResult& q, const PointRef& base_pt) {
  return q.inv.derived.locate(base_pt);
}

PointRef from_g1(const QuotientResult& q, const PointRef& g1_pt) {
  return q.inv.derived.to_base(g1_pt);
}

Divisor divisor_to_g1(const QuotientResult& q, const Divisor& d) {
  Divisor out;
  for (const auto& [p, c] : d.coeffs) out.add(to_g1(q, p), c);
  return out;
}

PLFunction function_to_g1(const QuotientResult& q, const PLFunction& f) {
  if (f.minus_inf) return PLFunction::constant_minus_inf(q.g1);
  std::vector<PointRef> cuts;
  for (const auto& [v, bp] : f.ref.vertex_base) cuts.push_back(to_g1(q, bp));
  DerivedModel m = refine(DerivedModel::trivial(q.g1), cuts);
  std::map<std::string, ExtVal> vals;
  for (const VertexRec& v : m.model.vertices)
    if (!v.at_infinity)
      vals[v.id] = f.eval(from_g1(q, m.vertex_base.at(v.id)));
  std::map<std::string, long long> rays;
  for (const EdgeRec& e : m.model.edges) {
    if (!e.length.infinite) continue;
    PointRef p = f.ref.locate(from_g1(q, m.base_point_on_edge(e.id, Rat(1))));
    if (p.is_vertex()) throw Error("internal", "breakpoint missed in rebase");
    rays[e.id] = f.slopes.at(p.edge);
  }
  return make_plfunction(m, vals, rays);
}

PLFunction function_from_g1(const QuotientResult& q, const PLFunction& f1) {
  auto base = q.inv.derived.base;
  if (f1.minus_inf) return PLFunction::constant_minus_inf(base);
  std::vector<PointRef> cuts;
  for (const auto& [v, bp] : f1.ref.vertex_base)
    cuts.push_back(from_g1(q, bp));
  DerivedModel m = refine(DerivedModel::trivial(base), cuts);
  std::map<std::string, ExtVal> vals;
  for (const VertexRec& v : m.model.vertices)
    if (!v.at_infinity)
      vals[v.id] = f1.eval(to_g1(q, m.vertex_base.at(v.id)));
  std::map<std::string, long long> rays;
  for (const EdgeRec& e : m.model.edges) {
    if (!e.length.infinite) continue;
    PointRef p = f1.ref.locate(to_g1(q, m.base_point_on_edge(e.id, Rat(1))));
    if (p.is_vertex()) throw Error("internal", "breakpoint missed in rebase");
    rays[e.id] = f1.slopes.at(p.edge);
  }
  return make_plfunction(m, vals, rays);
}

PointRef quotient_point(const QuotientResult& q, const PointRef& base_pt) {
  return apply(q.phi, to_g1(q, base_pt));
}

Divisor push_forward(const QuotientResult& q, const Divisor& d) {
  Divisor out;
  for (const auto& [p, c] : d.coeffs) out.add(quotient_point(q, p), c);
  return out;
}

PLFunction push_forward(const QuotientResult& q, const PLFunction& f) {
  return push_forward_function(q.phi, function_to_g1(q, f));
}

PLFunction pull_back(const QuotientResult& q, const PLFunction& g) {
  return function_from_g1(q, pull_back_function(q.phi, g));
}

std::vector<PointRef> fiber_points(const QuotientResult& q,
                                   const PointRef& target_pt) {
  std::vector<PointRef> out;
  for (const PointRef& x : fiber(q.phi, target_pt))
    out.push_back(from_g1(q, x));
  std::sort(out.begin(), out.end());
  return out;
}

}  // namespace troplin
