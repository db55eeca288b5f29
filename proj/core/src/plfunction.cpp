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

#include "troplin/plfunction.hpp"

#include <algorithm>

namespace troplin {

namespace {

long long rat_to_ll(const Rat& r, const char* what) {
  if (denominator(r) != 1)
    throw Error("internal", std::string("non-integer ") + what);
  return static_cast<long long>(numerator(r));
}

}  // namespace

PLFunction PLFunction::constant(std::shared_ptr<const MetricGraphModel> base,
                                const Rat& c) {
  DerivedModel d = DerivedModel::trivial(std::move(base));
  std::map<std::string, ExtVal> vals;
  for (const VertexRec& v : d.model.vertices)
    if (!v.at_infinity) vals[v.id] = ExtVal(c);
  return make_plfunction(d, vals, {});
}

PLFunction PLFunction::constant_minus_inf(
    std::shared_ptr<const MetricGraphModel> base) {
  PLFunction f;
  f.ref = DerivedModel::trivial(std::move(base));
  f.minus_inf = true;
  return f;
}

ExtVal PLFunction::eval(const PointRef& base_pt) const {
  if (minus_inf) return ExtVal::neg_inf();
  PointRef p = ref.locate(base_pt);
  if (p.is_vertex()) return values.at(p.vertex);
  const ExtVal& v = values.at(ref.model.origin(ref.model.edge(p.edge)));
  return ExtVal(v.v + slopes.at(p.edge) * p.offset);
}

PLFunction make_plfunction(const DerivedModel& ref,
                           const std::map<std::string, ExtVal>& finite_values,
                           const std::map<std::string, long long>& ray_slopes) {
  PLFunction f;
  f.ref = ref;
  for (const VertexRec& v : ref.model.vertices) {
    if (v.at_infinity) continue;
    auto it = finite_values.find(v.id);
    if (it == finite_values.end() || !it->second.finite())
      throw Error("internal", "missing finite value at vertex " + v.id);
    f.values[v.id] = it->second;
  }
  for (const EdgeRec& e : ref.model.edges) {
    if (e.length.infinite) {
      auto it = ray_slopes.find(e.id);
      long long s = it == ray_slopes.end() ? 0 : it->second;
      f.slopes[e.id] = s;
      const std::string& tip = ref.model.far_end(e);
      const ExtVal& a = f.values.at(ref.model.origin(e));
      f.values[tip] =
          s > 0 ? ExtVal::pos_inf() : (s < 0 ? ExtVal::neg_inf() : a);
    } else {
      const ExtVal& vo = f.values.at(ref.model.origin(e));
      const ExtVal& vh = f.values.at(ref.model.far_end(e));
      f.slopes[e.id] =
          rat_to_ll((vh.v - vo.v) / e.length.value, "slope");
    }
  }
  return f;
}

PLFunction transport(const PLFunction& f, const DerivedModel& target) {
  if (f.minus_inf) {
    PLFunction g;
    g.ref = target;
    g.minus_inf = true;
    return g;
  }
  std::map<std::string, ExtVal> vals;
  for (const VertexRec& v : target.model.vertices) {
    if (v.at_infinity) continue;
    vals[v.id] = f.eval(target.vertex_base.at(v.id));
  }
  std::map<std::string, long long> rays;
  for (const EdgeRec& e : target.model.edges) {
    if (!e.length.infinite) continue;
    // f is linear on this edge, so the slope follows from two samples.
    ExtVal v1 = f.eval(target.base_point_on_edge(e.id, Rat(1)));
    ExtVal v2 = f.eval(target.base_point_on_edge(e.id, Rat(2)));
    if (!v1.finite() || !v2.finite())
      throw Error("internal", "infinite value at a finite ray point");
    rays[e.id] = rat_to_ll(Rat(v2.v - v1.v), "ray slope");
  }
  return make_plfunction(target, vals, rays);
}

DerivedModel common_refinement(const PLFunction& f, const PLFunction& g) {
  std::vector<PointRef> pts;
  for (const auto& [v, bp] : f.ref.vertex_base) pts.push_back(bp);
  for (const auto& [v, bp] : g.ref.vertex_base) pts.push_back(bp);
  return refine(DerivedModel::trivial(f.base()), pts);
}

long long ord(const PLFunction& f, const PointRef& base_pt) {
  if (f.minus_inf)
    throw Error("no principal divisor", "ord of the constant -infinity");
  if (f.ref.model.is_singleton()) return 0;
  PointRef p = f.ref.locate(base_pt);
  if (!p.is_vertex()) return 0;
  long long sum = 0;
  for (const auto& [eid, slot] : f.ref.model.incident(p.vertex)) {
    const EdgeRec& e = f.ref.model.edge(eid);
    long long s = f.slopes.at(eid);
    sum += slot == f.ref.model.origin_slot(e) ? s : -s;
  }
  return sum;
}

Divisor principal_divisor(const PLFunction& f) {
  if (f.minus_inf)
    throw Error("no principal divisor",
                "the constant -infinity has no principal divisor");
  Divisor d;
  for (const VertexRec& v : f.ref.model.vertices) {
    PointRef bp = f.ref.vertex_base.at(v.id);
    d.add(bp, ord(f, bp));
  }
  return d;
}

PLFunction trop_add(const PLFunction& f, const PLFunction& g) {
  if (f.minus_inf) return g;
  if (g.minus_inf) return f;
  DerivedModel r0 = common_refinement(f, g);
  PLFunction F = transport(f, r0), G = transport(g, r0);
  std::vector<PointRef> crossings;
  for (const EdgeRec& e : r0.model.edges) {
    const std::string& o = r0.model.origin(e);
    Rat d0 = F.values.at(o).v - G.values.at(o).v;
    if (e.length.infinite) {
      long long ds = F.slopes.at(e.id) - G.slopes.at(e.id);
      if (ds != 0 && d0 != 0 && ((d0 > 0) != (ds > 0))) {
        Rat t = -d0 / ds;
        crossings.push_back(r0.base_point_on_edge(e.id, t));
      }
    } else {
      const std::string& h = r0.model.far_end(e);
      Rat d1 = F.values.at(h).v - G.values.at(h).v;
      if ((d0 > 0 && d1 < 0) || (d0 < 0 && d1 > 0)) {
        Rat t = -d0 * e.length.value / (d1 - d0);
        crossings.push_back(r0.base_point_on_edge(e.id, t));
      }
    }
  }
  DerivedModel r = crossings.empty() ? r0 : refine(r0, crossings);
  PLFunction Fr = transport(f, r), Gr = transport(g, r);
  std::map<std::string, ExtVal> finite_vals;
  for (const VertexRec& v : r.model.vertices)
    if (!v.at_infinity)
      finite_vals[v.id] = max(Fr.values.at(v.id), Gr.values.at(v.id));
  std::map<std::string, long long> rays;
  for (const EdgeRec& e : r.model.edges) {
    if (!e.length.infinite) continue;
    const std::string& o = r.model.origin(e);
    const ExtVal &fo = Fr.values.at(o), &go = Gr.values.at(o);
    long long sf = Fr.slopes.at(e.id), sg = Gr.slopes.at(e.id);
    if (fo.v > go.v)
      rays[e.id] = sf;
    else if (go.v > fo.v)
      rays[e.id] = sg;
    else
      rays[e.id] = std::max(sf, sg);
  }
  return make_plfunction(r, finite_vals, rays);
}

PLFunction trop_scale(const Rat& c, const PLFunction& f) {
  if (f.minus_inf) return f;
  PLFunction g = f;
  for (auto& [v, val] : g.values)
    if (val.finite()) val = ExtVal(val.v + c);
  return g;
}

PLFunction add_functions(const PLFunction& f, const PLFunction& g,
                         bool allow_cancellation) {
  if (f.minus_inf || g.minus_inf)
    return PLFunction::constant_minus_inf(f.base());
  DerivedModel r = common_refinement(f, g);
  PLFunction F = transport(f, r), G = transport(g, r);
  std::map<std::string, ExtVal> vals;
  std::map<std::string, long long> rays;
  for (const EdgeRec& e : r.model.edges)
    if (e.length.infinite) rays[e.id] = F.slopes.at(e.id) + G.slopes.at(e.id);
  for (const VertexRec& v : r.model.vertices) {
    if (v.at_infinity) {
      // Checked here even though make_plfunction rederives the value: a
      // slope sum of zero with conflicting infinite values is undefined.
      const auto& inc = r.model.incident(v.id);
      long long s = rays.at(inc[0].first);
      const ExtVal &fv = F.values.at(v.id), &gv = G.values.at(v.id);
      if (s == 0 && (!fv.finite() || !gv.finite()) && fv != gv &&
          !allow_cancellation)
        throw Error("indeterminate sum",
                    "conflicting infinite values with zero slope sum at " +
                        v.id);
      continue;
    }
    vals[v.id] = ExtVal(F.values.at(v.id).v + G.values.at(v.id).v);
  }
  return make_plfunction(r, vals, rays);
}

PLFunction negate(const PLFunction& f) {
  if (f.minus_inf)
    throw Error("internal", "cannot negate the constant -infinity");
  std::map<std::string, ExtVal> vals;
  for (const auto& [v, val] : f.values)
    if (val.finite()) vals[v] = ExtVal(-val.v);
  std::map<std::string, long long> rays;
  for (const auto& [e, s] : f.slopes)
    if (f.ref.model.edge(e).length.infinite) rays[e] = -s;
  return make_plfunction(f.ref, vals, rays);
}

PLFunction scale_int(long long k, const PLFunction& f) {
  if (f.minus_inf) {
    if (k <= 0) throw Error("internal", "cannot scale -infinity by k <= 0");
    return f;
  }
  if (k == 0) return PLFunction::constant(f.base(), Rat(0));
  std::map<std::string, ExtVal> vals;
  for (const auto& [v, val] : f.values)
    if (val.finite()) vals[v] = ExtVal(k * val.v);
  std::map<std::string, long long> rays;
  for (const auto& [e, s] : f.slopes)
    if (f.ref.model.edge(e).length.infinite) rays[e] = k * s;
  return make_plfunction(f.ref, vals, rays);
}

bool equal_functions(const PLFunction& f, const PLFunction& g) {
  if (f.minus_inf || g.minus_inf) return f.minus_inf == g.minus_inf;
  DerivedModel r = common_refinement(f, g);
  PLFunction F = transport(f, r), G = transport(g, r);
  return F.values == G.values && F.slopes == G.slopes;
}

PLFunction canonical_form(const PLFunction& f) {
  if (f.minus_inf) return PLFunction::constant_minus_inf(f.base());
  std::vector<PointRef> keep;
  for (const VertexRec& v : f.ref.model.vertices) {
    PointRef bp = f.ref.vertex_base.at(v.id);
    if (bp.is_vertex()) continue;  // base vertices survive anyway
    const auto& inc = f.ref.model.incident(v.id);
    if (inc.size() != 2) {
      keep.push_back(bp);
      continue;
    }
    if (ord(f, bp) != 0) keep.push_back(bp);
  }
  DerivedModel c = refine(DerivedModel::trivial(f.base()), keep);
  return transport(f, c);
}

PLFunction normalize_mod_scaling(const PLFunction& f) {
  PLFunction c = canonical_form(f);
  std::vector<std::string> ids;
  for (const auto& [v, val] : c.values)
    if (val.finite()) ids.push_back(v);
  std::sort(ids.begin(), ids.end());
  if (ids.empty()) throw Error("internal", "no finite-valued vertex");
  return trop_scale(-c.values.at(ids.front()).v, c);
}

}  // namespace troplin
