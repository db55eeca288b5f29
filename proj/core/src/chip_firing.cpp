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

#include "troplin/chip_firing.hpp"

#include <cstdlib>
#include <limits>
#include <set>
#include <string>

namespace troplin {

PLFunction chip_firing(const Subgraph& source, const ExtLen& reach) {
  if (source.empty())
    throw Error("bad move", "chip firing from an empty subgraph");
  if (source.has_pure_infinity_component())
    throw Error("bad move",
                "chip firing from a component of points at infinity");
  if (!reach.infinite && reach.value <= 0)
    throw Error("bad move", "chip firing reach must be positive");

  const DerivedModel& r0 = source.ref;
  std::map<std::string, ExtLen> sources;
  for (const std::string& v : source.verts)
    if (!r0.model.vertex(v).at_infinity) sources[v] = ExtLen(Rat(0));
  auto d = multi_source_distance(r0.model, sources);

  // Breakpoints of -min(reach, dist): the ridge where the two endpoint
  // routes meet, and the points where dist crosses the reach.
  std::vector<PointRef> cuts;
  for (const EdgeRec& e : r0.model.edges) {
    if (source.edges.count(e.id)) continue;
    const Rat& d_o = d.at(r0.model.origin(e)).value;
    if (e.length.infinite) {
      if (!reach.infinite) {
        Rat t = reach.value - d_o;
        if (t > 0) cuts.push_back(r0.base_point_on_edge(e.id, t));
      }
      continue;
    }
    const Rat& L = e.length.value;
    const Rat& d_h = d.at(r0.model.far_end(e)).value;
    Rat t_r = (L + d_h - d_o) / 2;
    if (t_r > 0 && t_r < L) cuts.push_back(r0.base_point_on_edge(e.id, t_r));
    if (!reach.infinite) {
      Rat t1 = reach.value - d_o;
      if (t1 > 0 && t1 < L) cuts.push_back(r0.base_point_on_edge(e.id, t1));
      Rat t2 = L - (reach.value - d_h);
      if (t2 > 0 && t2 < L) cuts.push_back(r0.base_point_on_edge(e.id, t2));
    }
  }

  DerivedModel r = cuts.empty() ? r0 : refine(r0, cuts);
  std::map<std::string, ExtLen> sources2;
  for (const auto& [v, z] : sources)
    sources2[r.locate(r0.to_base(PointRef::at_vertex(v))).vertex] =
        ExtLen(Rat(0));
  auto d2 = multi_source_distance(r.model, sources2);

  std::map<std::string, ExtVal> vals;
  for (const VertexRec& v : r.model.vertices) {
    if (v.at_infinity) continue;
    ExtLen dv = min(reach, d2.at(v.id));
    if (dv.infinite)
      throw Error("internal", "finite vertex at infinite distance");
    vals[v.id] = ExtVal(-dv.value);
  }
  std::map<std::string, long long> rays;
  for (const EdgeRec& e : r.model.edges) {
    if (!e.length.infinite) continue;
    PointRef sample = r.base_point_on_edge(e.id, Rat(1));
    if (source.contains(sample)) {
      rays[e.id] = 0;
      continue;
    }
    const ExtLen& da = d2.at(r.model.origin(e));
    rays[e.id] = da < reach ? -1 : 0;
  }
  return make_plfunction(r, vals, rays);
}

namespace {

using Terms = std::vector<std::pair<ChipFiringMove, long long>>;

// clamp(g, lo, hi) - hi: zero on the superlevel set of hi, lo - hi on the
// sublevel set of lo.
PLFunction slab_of(const PLFunction& g, const Rat& lo, const Rat& hi) {
  PLFunction m1 =
      negate(trop_add(negate(g), PLFunction::constant(g.base(), -hi)));
  PLFunction m2 = trop_add(m1, PLFunction::constant(g.base(), lo));
  return trop_scale(-hi, m2);
}

void decompose_slab(const PLFunction& w0, long long slope_bound, Terms* out);

// Peels a finite function with maximum value 0 slab by slab between its
// consecutive critical values.  `slope_bound` certifies termination: every
// recursive call strictly decreases the maximum absolute slope.
void decompose_levels(const PLFunction& g, long long slope_bound, Terms* out) {
  std::set<Rat> vs;
  for (const auto& [v, val] : g.values)
    if (val.finite()) vs.insert(val.v);
  std::vector<Rat> vals(vs.rbegin(), vs.rend());
  for (size_t i = 0; i + 1 < vals.size(); ++i)
    decompose_slab(slab_of(g, vals[i + 1], vals[i]), slope_bound, out);
}

// w is nonpositive with maximum 0; every component of its open support is a
// single-slope descent from the zero set to the minimum.
void decompose_slab(const PLFunction& w0, long long slope_bound, Terms* out) {
  PLFunction w = canonical_form(w0);
  Rat low(0);
  for (const auto& [v, val] : w.values)
    if (val.finite() && val.v < low) low = val.v;
  if (low == 0) return;
  Rat delta = -low;

  Subgraph g1;
  g1.ref = w.ref;
  for (const auto& [v, val] : w.values)
    if (val == ExtVal(Rat(0))) g1.verts.insert(v);
  for (const EdgeRec& e : w.ref.model.edges)
    if (w.slopes.at(e.id) == 0 && g1.verts.count(w.ref.model.origin(e)))
      g1.edges.insert(e.id);

  long long m = 0;
  bool uniform = true;
  for (const auto& [e, s] : w.slopes)
    if (s != 0) {
      long long a = std::llabs(s);
      if (m != 0 && a != m) uniform = false;
      if (a > m) m = a;
    }
  if (m == 0 || m >= slope_bound)
    throw Error("internal", "chip-firing decomposition made no progress");

  ExtLen ell(delta / m);
  if (uniform) {
    out->push_back({ChipFiringMove{g1, ell}, m});
    return;
  }
  PLFunction b = chip_firing(g1, ell);
  out->push_back({ChipFiringMove{std::move(g1), ell}, 1});
  decompose_levels(add_functions(w, scale_int(-1, b), true), m, out);
}

}  // namespace

ChipFiringDecomposition decompose_chip_firing(const PLFunction& f) {
  if (f.minus_inf)
    throw Error("bad function", "cannot decompose the constant -infinity");
  PLFunction g = canonical_form(f);
  auto base = g.base();
  ChipFiringDecomposition dec;

  // Strip each ray on which g is unbounded: fire the complement of the open
  // tail past the last breakpoint with infinite reach.
  struct RayInfo {
    std::string base_edge;
    Rat c0;
    long long s;
  };
  std::vector<RayInfo> unbounded;
  for (const EdgeRec& e : g.ref.model.edges) {
    if (!e.length.infinite) continue;
    long long s = g.slopes.at(e.id);
    if (s == 0) continue;
    const PathSeg& seg = g.ref.edge_paths.at(e.id).front();
    unbounded.push_back({seg.base_edge, seg.from, s});
  }
  for (const RayInfo& ri : unbounded) {
    const EdgeRec& b = base->edge(ri.base_edge);
    const std::string& tip = base->far_end(b);
    std::vector<PointRef> pts;
    for (const VertexRec& v : base->vertices)
      if (v.id != tip) pts.push_back(PointRef::at_vertex(v.id));
    std::vector<Interval> ivs;
    for (const EdgeRec& e2 : base->edges) {
      if (e2.id == ri.base_edge) {
        if (ri.c0 > 0) ivs.push_back({e2.id, Rat(0), ExtLen(ri.c0)});
      } else {
        ivs.push_back({e2.id, Rat(0), e2.length});
      }
    }
    ChipFiringMove mv{make_subgraph(base, pts, ivs), ExtLen::inf()};
    PLFunction cf = chip_firing(mv.source, mv.reach);
    g = add_functions(g, scale_int(ri.s, cf), true);
    dec.terms.push_back({std::move(mv), -ri.s});
  }

  Rat top;
  bool first = true;
  for (const auto& [v, val] : g.values)
    if (val.finite() && (first || val.v > top)) {
      top = val.v;
      first = false;
    }
  if (first) throw Error("internal", "no finite value to decompose");
  dec.constant = top;
  decompose_levels(g, std::numeric_limits<long long>::max(), &dec.terms);
  return dec;
}

PLFunction realize(std::shared_ptr<const MetricGraphModel> base,
                   const ChipFiringDecomposition& dec) {
  PLFunction f = PLFunction::constant(base, dec.constant);
  for (const auto& [mv, c] : dec.terms)
    f = add_functions(f, scale_int(c, chip_firing(mv.source, mv.reach)), true);
  return f;
}

}  // namespace troplin
