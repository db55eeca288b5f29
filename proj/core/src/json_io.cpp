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

#include "troplin/json_io.hpp"

#include <CLI11.hpp>

#include <fstream>
#include <iostream>
#include <set>

namespace troplin {

std::string ValidationFailure::summarize(
    const std::vector<ValidationError>& its) {
  std::string s;
  for (const ValidationError& e : its) {
    if (!s.empty()) s += "; ";
    s += e.code + ": " + e.message;
    if (!e.path.empty()) s += " (" + e.path + ")";
  }
  return s.empty() ? std::string("invalid input") : s;
}

namespace {

struct Collector {
  std::vector<ValidationError> items;
  void add(std::string code, std::string path, std::string msg) {
    items.push_back({std::move(code), std::move(path), std::move(msg)});
  }
  void add(const Error& e, const std::string& path) {
    add(e.code(), path, e.what());
  }
  void check() {
    if (!items.empty()) throw ValidationFailure(std::move(items));
  }
};

std::string get_string(const Json& j, const char* key,
                       const std::string& path, Collector* c) {
  if (!j.is_object() || !j.contains(key) || !j.at(key).is_string()) {
    c->add("bad json", path, std::string("missing string field '") + key + "'");
    return "";
  }
  return j.at(key).get<std::string>();
}

}  // namespace

std::shared_ptr<const MetricGraphModel> parse_curve_json(
    const Json& j, const std::string& path) {
  Collector c;
  auto m = std::make_shared<MetricGraphModel>();
  if (!j.is_object() || !j.contains("vertices") || !j.contains("edges") ||
      !j.at("vertices").is_array() || !j.at("edges").is_array()) {
    c.add("bad json", path, "curve must have vertices[] and edges[]");
    c.check();
  }
  for (const Json& vj : j.at("vertices")) {
    VertexRec v;
    v.id = get_string(vj, "id", path + "/vertices", &c);
    if (vj.is_object() && vj.contains("at_infinity")) {
      if (!vj.at("at_infinity").is_boolean())
        c.add("bad json", path, "at_infinity must be boolean: " + v.id);
      else
        v.at_infinity = vj.at("at_infinity").get<bool>();
    }
    m->vertices.push_back(v);
  }
  for (const Json& ej : j.at("edges")) {
    EdgeRec e;
    e.id = get_string(ej, "id", path + "/edges", &c);
    if (!ej.is_object() || !ej.contains("ends") || !ej.at("ends").is_array() ||
        ej.at("ends").size() != 2 || !ej.at("ends")[0].is_string() ||
        !ej.at("ends")[1].is_string()) {
      c.add("bad json", path, "edge ends must be two vertex ids: " + e.id);
    } else {
      e.ends = {ej.at("ends")[0].get<std::string>(),
                ej.at("ends")[1].get<std::string>()};
      for (const std::string& v : e.ends)
        if (!std::any_of(m->vertices.begin(), m->vertices.end(),
                         [&](const VertexRec& w) { return w.id == v; }))
          c.add("dangling id", path, "edge " + e.id + " references " + v);
    }
    std::string ls = get_string(ej, "length", path + "/edges", &c);
    try {
      e.length = parse_extlen(ls);
      if (!e.length.infinite && e.length.value <= 0)
        c.add("nonpositive length", path, "edge " + e.id);
    } catch (const Error& err) {
      c.add("malformed rational", path, "edge " + e.id + ": " + err.what());
    }
    m->edges.push_back(e);
  }
  c.check();
  try {
    m->finalize();
  } catch (const Error& err) {
    c.add(err, path);
  }
  c.check();
  return m;
}

PointRef parse_point_json(const Json& j, const MetricGraphModel& base,
                          const std::string& path) {
  Collector c;
  if (j.is_object() && j.contains("vertex")) {
    std::string v = get_string(j, "vertex", path, &c);
    c.check();
    if (!base.has_vertex(v)) {
      c.add("dangling id", path, "unknown vertex: " + v);
      c.check();
    }
    return PointRef::at_vertex(v);
  }
  std::string e = get_string(j, "edge", path, &c);
  std::string off = get_string(j, "offset", path, &c);
  std::string anchor = get_string(j, "anchor", path, &c);
  c.check();
  try {
    Rat t = parse_rat(off);
    return make_point(base, e, t, anchor);
  } catch (const Error& err) {
    c.add(err.code() == "bad rational" ? "malformed rational" : err.code(),
          path, err.what());
    c.check();
    throw;  // unreachable
  }
}

Divisor parse_divisor_json(const Json& j, const MetricGraphModel& base,
                           const std::string& path) {
  Collector c;
  Divisor d;
  if (!j.is_array()) {
    c.add("bad json", path, "divisor must be an array");
    c.check();
  }
  for (std::size_t i = 0; i < j.size(); ++i) {
    const Json& ej = j[i];
    std::string p = path + "[" + std::to_string(i) + "]";
    if (!ej.is_object() || !ej.contains("point") || !ej.contains("coeff") ||
        !ej.at("coeff").is_number_integer()) {
      c.add("bad json", p, "entry must have point and integer coeff");
      continue;
    }
    try {
      PointRef pt = parse_point_json(ej.at("point"), base, p);
      long long coeff = ej.at("coeff").get<long long>();
      if (coeff == 0) {
        c.add("bad json", p, "coefficient must be nonzero");
        continue;
      }
      d.add(pt, coeff);
    } catch (const ValidationFailure& vf) {
      for (const ValidationError& it : vf.items) c.items.push_back(it);
    }
  }
  c.check();
  return d;
}

PLFunction parse_function_json(const Json& j,
                               std::shared_ptr<const MetricGraphModel> base,
                               const std::string& path) {
  Collector c;
  if (!j.is_object() || !j.contains("refinement") || !j.contains("values")) {
    c.add("bad json", path, "function must have refinement and values");
    c.check();
  }
  const Json& rj = j.at("refinement");
  // Base location of every refinement vertex: a matching base vertex id, or
  // an explicit "at" point.
  std::map<std::string, PointRef> vertex_at;
  std::map<std::string, bool> vertex_inf;
  std::vector<PointRef> interior;
  if (!rj.is_object() || !rj.contains("vertices") ||
      !rj.at("vertices").is_array()) {
    c.add("bad json", path, "refinement must be a curve");
    c.check();
  }
  for (const Json& vj : rj.at("vertices")) {
    std::string id = get_string(vj, "id", path + "/refinement", &c);
    bool inf_flag = vj.is_object() && vj.contains("at_infinity") &&
                    vj.at("at_infinity").is_boolean() &&
                    vj.at("at_infinity").get<bool>();
    vertex_inf[id] = inf_flag;
    try {
      if (vj.is_object() && vj.contains("at")) {
        PointRef p = parse_point_json(vj.at("at"), *base,
                                      path + "/refinement/" + id);
        vertex_at[id] = p;
        if (!p.is_vertex()) interior.push_back(p);
      } else if (base->has_vertex(id)) {
        vertex_at[id] = PointRef::at_vertex(id);
      } else {
        c.add("dangling id", path,
              "refinement vertex " + id + " has no base location");
      }
    } catch (const ValidationFailure& vf) {
      for (const ValidationError& it : vf.items) c.items.push_back(it);
    }
  }
  c.check();

  DerivedModel ref = interior.empty()
                         ? DerivedModel::trivial(base)
                         : refine(DerivedModel::trivial(base), interior);

  std::map<std::string, ExtVal> vals;
  const Json& valj = j.at("values");
  if (!valj.is_object()) {
    c.add("bad json", path, "values must be an object");
    c.check();
  }
  for (auto it = valj.begin(); it != valj.end(); ++it) {
    const std::string& vid = it.key();
    auto at = vertex_at.find(vid);
    if (at == vertex_at.end()) {
      c.add("dangling id", path, "value for unknown vertex " + vid);
      continue;
    }
    if (!it.value().is_string()) {
      c.add("bad json", path, "value must be a string: " + vid);
      continue;
    }
    std::string s = it.value().get<std::string>();
    if (s == "+inf" || s == "-inf") continue;  // recomputed from ray slopes
    try {
      std::string mv = ref.locate(at->second).vertex;
      vals[mv] = ExtVal(parse_rat(s));
    } catch (const Error& err) {
      c.add(err.code() == "bad rational" ? "malformed rational" : err.code(),
            path, vid + ": " + err.what());
    }
  }
  c.check();
  for (const VertexRec& v : ref.model.vertices)
    if (!v.at_infinity && !vals.count(v.id))
      c.add("bad json", path, "missing value for a finite vertex");
  c.check();

  // Ray slopes, identified through the at_infinity end of the given edge.
  std::map<std::string, long long> rays;
  if (j.contains("slopes")) {
    const Json& sj = j.at("slopes");
    if (!sj.is_object()) {
      c.add("bad json", path, "slopes must be an object");
      c.check();
    }
    // The input refinement's edges, to find each slope key's tip.
    std::map<std::string, std::array<std::string, 2>> redges;
    if (rj.contains("edges") && rj.at("edges").is_array())
      for (const Json& ej : rj.at("edges"))
        if (ej.is_object() && ej.contains("id") && ej.contains("ends") &&
            ej.at("ends").is_array() && ej.at("ends").size() == 2)
          redges[ej.at("id").get<std::string>()] = {
              ej.at("ends")[0].get<std::string>(),
              ej.at("ends")[1].get<std::string>()};
    for (auto it = sj.begin(); it != sj.end(); ++it) {
      long long s;
      if (it.value().is_number_integer()) {
        s = it.value().get<long long>();
      } else if (it.value().is_object() && it.value().contains("slope") &&
                 it.value().at("slope").is_number_integer()) {
        s = it.value().at("slope").get<long long>();
        if (it.value().contains("from") &&
            it.value().at("from").is_string()) {
          std::string from = it.value().at("from").get<std::string>();
          if (vertex_inf.count(from) && vertex_inf.at(from)) {
            c.add("bad json", path,
                  "slope anchor must be the finite end: " + it.key());
            continue;
          }
        }
      } else {
        c.add("bad json", path, "bad slope entry: " + it.key());
        continue;
      }
      auto re = redges.find(it.key());
      if (re == redges.end()) {
        c.add("dangling id", path, "slope for unknown edge " + it.key());
        continue;
      }
      std::string tip_id;
      for (const std::string& end : re->second)
        if (vertex_inf.count(end) && vertex_inf.at(end)) tip_id = end;
      if (tip_id.empty()) continue;  // finite edge: slope is derived
      auto at = vertex_at.find(tip_id);
      if (at == vertex_at.end()) continue;
      std::string tv = ref.locate(at->second).vertex;
      for (const auto& [eid, slot] : ref.model.incident(tv)) rays[eid] = s;
    }
  }
  c.check();
  try {
    return make_plfunction(ref, vals, rays);
  } catch (const Error& err) {
    c.add(err, path);
    c.check();
    throw;  // unreachable
  }
}

namespace {

bool same_model(const MetricGraphModel& a, const MetricGraphModel& b) {
  std::map<std::string, bool> va, vb;
  for (const VertexRec& v : a.vertices) va[v.id] = v.at_infinity;
  for (const VertexRec& v : b.vertices) vb[v.id] = v.at_infinity;
  if (va != vb) return false;
  std::map<std::string, std::tuple<std::string, std::string, ExtLen>> ea, eb;
  for (const EdgeRec& e : a.edges)
    ea[e.id] = {e.ends[0], e.ends[1], e.length};
  for (const EdgeRec& e : b.edges)
    eb[e.id] = {e.ends[0], e.ends[1], e.length};
  if (ea.size() != eb.size()) return false;
  for (const auto& [id, t] : ea) {
    auto it = eb.find(id);
    if (it == eb.end()) return false;
    const auto& [a0, a1, al] = t;
    const auto& [b0, b1, bl] = it->second;
    if (al != bl) return false;
    if (!((a0 == b0 && a1 == b1) || (a0 == b1 && a1 == b0))) return false;
  }
  return true;
}

}  // namespace

GroupAction parse_group_json(const Json& j,
                             std::shared_ptr<const MetricGraphModel> base,
                             const std::string& path) {
  Collector c;
  if (!j.is_object() || !j.contains("model") || !j.contains("generators") ||
      !j.at("generators").is_array()) {
    c.add("bad json", path, "group must have model and generators[]");
    c.check();
  }
  std::shared_ptr<const MetricGraphModel> model =
      parse_curve_json(j.at("model"), path + "/model");
  if (base) {
    if (!same_model(*model, *base)) {
      c.add("group model mismatch", path,
            "group working model differs from the curve");
      c.check();
    }
    model = base;
  }
  std::vector<Isometry> gens;
  for (std::size_t i = 0; i < j.at("generators").size(); ++i) {
    const Json& gj = j.at("generators")[i];
    std::string p = path + "/generators[" + std::to_string(i) + "]";
    Isometry s;
    if (!gj.is_object() || !gj.contains("vertex_map") ||
        !gj.contains("edge_map") || !gj.at("vertex_map").is_object() ||
        !gj.at("edge_map").is_object()) {
      c.add("bad json", p, "generator must have vertex_map and edge_map");
      continue;
    }
    bool bad = false;
    for (auto it = gj.at("vertex_map").begin(); it != gj.at("vertex_map").end();
         ++it) {
      if (!it.value().is_string()) {
        c.add("bad json", p, "vertex_map values must be ids");
        bad = true;
        break;
      }
      s.vertex_map[it.key()] = it.value().get<std::string>();
    }
    for (auto it = gj.at("edge_map").begin();
         !bad && it != gj.at("edge_map").end(); ++it) {
      const Json& ij = it.value();
      if (!ij.is_object() || !ij.contains("to") || !ij.at("to").is_string()) {
        c.add("bad json", p, "edge_map values must have 'to'");
        bad = true;
        break;
      }
      EdgeImage im;
      im.to = ij.at("to").get<std::string>();
      if (ij.contains("reversed")) {
        if (!ij.at("reversed").is_boolean()) {
          c.add("bad json", p, "reversed must be boolean");
          bad = true;
          break;
        }
        im.reversed = ij.at("reversed").get<bool>();
      }
      s.edge_map[it.key()] = im;
    }
    if (bad) continue;
    try {
      validate_isometry(*model, s);
      gens.push_back(s);
    } catch (const Error& err) {
      c.add("non-isometry generator", p, err.what());
    }
  }
  c.check();
  try {
    return close_group(model, gens);
  } catch (const Error& err) {
    c.add(err, path);
    c.check();
    throw;  // unreachable
  }
}

Json curve_to_json(const MetricGraphModel& m) {
  Json j;
  j["vertices"] = Json::array();
  for (const VertexRec& v : m.vertices) {
    Json vj;
    vj["id"] = v.id;
    vj["at_infinity"] = v.at_infinity;
    j["vertices"].push_back(vj);
  }
  j["edges"] = Json::array();
  for (const EdgeRec& e : m.edges) {
    Json ej;
    ej["id"] = e.id;
    ej["ends"] = {e.ends[0], e.ends[1]};
    ej["length"] = format_extlen(e.length);
    j["edges"].push_back(ej);
  }
  return j;
}

Json point_to_json(const MetricGraphModel& base, const PointRef& p) {
  Json j;
  if (p.is_vertex()) {
    j["vertex"] = p.vertex;
  } else {
    j["edge"] = p.edge;
    j["offset"] = format_rat(p.offset);
    j["anchor"] = base.origin(base.edge(p.edge));
  }
  return j;
}

Json divisor_to_json(const MetricGraphModel& base, const Divisor& d) {
  Json j = Json::array();
  for (const auto& [p, c] : d.coeffs) {
    Json ej;
    ej["point"] = point_to_json(base, p);
    ej["coeff"] = c;
    j.push_back(ej);
  }
  return j;
}

Json function_to_json(const PLFunction& f) {
  Json j;
  if (f.minus_inf) {
    j["minus_inf"] = true;
    return j;
  }
  Json rj = curve_to_json(f.ref.model);
  for (Json& vj : rj["vertices"]) {
    const std::string& id = vj["id"].get<std::string>();
    const PointRef& bp = f.ref.vertex_base.at(id);
    if (!(bp.is_vertex() && bp.vertex == id))
      vj["at"] = point_to_json(*f.ref.base, bp);
  }
  j["refinement"] = rj;
  Json vals;
  for (const VertexRec& v : f.ref.model.vertices) {
    const ExtVal& val = f.values.at(v.id);
    vals[v.id] =
        val.cls > 0 ? "+inf" : (val.cls < 0 ? "-inf" : format_rat(val.v));
  }
  j["values"] = vals;
  Json slopes;
  for (const EdgeRec& e : f.ref.model.edges) {
    Json sj;
    sj["slope"] = f.slopes.at(e.id);
    sj["from"] = f.ref.model.origin(e);
    slopes[e.id] = sj;
  }
  j["slopes"] = slopes;
  return j;
}

Json subgraph_to_json(const Subgraph& g) {
  Json j;
  std::set<PointRef> pts;
  for (const std::string& v : g.verts)
    pts.insert(g.ref.to_base(PointRef::at_vertex(v)));
  j["points"] = Json::array();
  for (const PointRef& p : pts)
    j["points"].push_back(point_to_json(*g.ref.base, p));
  std::vector<Json> ivs;
  for (const std::string& e : g.edges) {
    for (const PathSeg& seg : g.ref.edge_paths.at(e)) {
      Json ij;
      ij["edge"] = seg.base_edge;
      if (seg.to.infinite) {
        ij["from"] = format_rat(seg.from);
        ij["to"] = "inf";
      } else if (seg.to.value >= seg.from) {
        ij["from"] = format_rat(seg.from);
        ij["to"] = format_rat(seg.to.value);
      } else {
        ij["from"] = format_rat(seg.to.value);
        ij["to"] = format_rat(seg.from);
      }
      ivs.push_back(ij);
    }
  }
  std::sort(ivs.begin(), ivs.end(),
            [](const Json& a, const Json& b) { return a.dump() < b.dump(); });
  j["intervals"] = ivs;
  return j;
}

Json decomposition_to_json(const ChipFiringDecomposition& dec) {
  Json j;
  j["constant"] = format_rat(dec.constant);
  j["terms"] = Json::array();
  for (const auto& [move, coeff] : dec.terms) {
    Json tj;
    tj["coeff"] = coeff;
    tj["reach"] = format_extlen(move.reach);
    tj["source"] = subgraph_to_json(move.source);
    j["terms"].push_back(tj);
  }
  return j;
}

Json quotient_to_json(const QuotientResult& q) {
  Json j;
  j["quotient"] = curve_to_json(*q.quotient);
  j["g1"] = curve_to_json(*q.g1);
  Json phi;
  Json vm, em, dil, flips;
  for (const auto& [v, w] : q.phi.vertex_map) vm[v] = w;
  for (const auto& [e, a] : q.phi.edge_map) {
    em[e] = a.to;
    dil[e] = a.dilation;
    flips[e] = a.flip;
  }
  phi["vertex_map"] = vm;
  phi["edge_map"] = em;
  phi["dilations"] = dil;
  phi["flips"] = flips;
  j["phi"] = phi;
  j["degree"] = q.degree;
  return j;
}

Json generators_to_json(const GeneratorSet& g) {
  Json j = Json::array();
  for (std::size_t i = 0; i < g.gens.size(); ++i) {
    Json ej;
    ej["function"] = function_to_json(g.gens[i]);
    ej["provenance"] = g.provenance[i];
    j.push_back(ej);
  }
  return j;
}

Json combination_to_json(const TropicalCombination& c) {
  Json j;
  j["terms"] = Json::array();
  for (const auto& [idx, coeff] : c.terms) {
    Json tj;
    tj["index"] = idx;
    tj["coeff"] = format_rat(coeff);
    j["terms"].push_back(tj);
  }
  return j;
}

namespace {

Json read_json_file(const std::string& path, Collector* c) {
  std::ifstream in(path);
  if (!in) {
    c->add("missing file", path, "cannot open file");
    return Json();
  }
  try {
    Json j;
    in >> j;
    return j;
  } catch (const std::exception& e) {
    c->add("bad json", path, e.what());
    return Json();
  }
}

}  // namespace

LinSysContext ProblemBundle::context() const {
  if (!divisor)
    throw ValidationFailure({{"missing input", "", "a divisor is required"}});
  if (group) return make_context(curve, *divisor, *group);
  return make_context(curve, *divisor);
}

ProblemBundle parse_bundle(const BundlePaths& paths) {
  Collector c;
  ProblemBundle b;
  Json curve_j, group_j;
  if (!paths.curve.empty()) curve_j = read_json_file(paths.curve, &c);
  if (!paths.group.empty()) group_j = read_json_file(paths.group, &c);
  c.check();

  auto merge = [&c](const ValidationFailure& vf) {
    for (const ValidationError& it : vf.items) c.items.push_back(it);
  };

  if (!paths.curve.empty()) {
    try {
      b.curve = parse_curve_json(curve_j, paths.curve);
    } catch (const ValidationFailure& vf) {
      merge(vf);
    }
  }
  if (!paths.group.empty()) {
    try {
      b.group = parse_group_json(group_j, b.curve, paths.group);
      if (!b.curve) b.curve = b.group->model;
    } catch (const ValidationFailure& vf) {
      merge(vf);
    }
  }
  if (!b.curve) c.add("missing input", "", "a curve is required");
  c.check();

  if (!paths.divisor.empty()) {
    Json j = read_json_file(paths.divisor, &c);
    c.check();
    try {
      b.divisor = parse_divisor_json(j, *b.curve, paths.divisor);
    } catch (const ValidationFailure& vf) {
      merge(vf);
    }
  }
  for (const std::string& fp : paths.functions) {
    Json j = read_json_file(fp, &c);
    c.check();
    try {
      b.functions.push_back(parse_function_json(j, b.curve, fp));
    } catch (const ValidationFailure& vf) {
      merge(vf);
    }
  }
  c.check();
  return b;
}

namespace {

void emit(const Json& j, bool pretty) {
  std::cout << j.dump(pretty ? 2 : -1) << "\n";
}

int dispatch(const std::string& cmd, const BundlePaths& paths,
             const std::string& in_what, bool invariant, bool minimal,
             bool pretty) {
  if (cmd == "info") {
    ProblemBundle b = parse_bundle(paths);
    const MetricGraphModel& m = *b.curve;
    Json j;
    long long fe = 0, ie = 0, fv = 0;
    for (const EdgeRec& e : m.edges) (e.length.infinite ? ie : fe)++;
    for (const VertexRec& v : m.vertices)
      if (!v.at_infinity) ++fv;
    j["vertices"] = static_cast<long long>(m.vertices.size());
    j["edges"] = static_cast<long long>(m.edges.size());
    j["finite_edges"] = fe;
    j["infinite_edges"] = ie;
    j["first_betti"] = fe - fv + 1;
    j["singleton"] = m.is_singleton();
    if (b.divisor) j["divisor_degree"] = b.divisor->degree();
    if (b.group) j["group_order"] = b.group->order();
    emit(j, pretty);
    return 0;
  }
  if (cmd == "quotient") {
    ProblemBundle b = parse_bundle(paths);
    if (!b.group)
      throw ValidationFailure({{"missing input", "", "a group is required"}});
    emit(quotient_to_json(build_quotient(*b.group)), pretty);
    return 0;
  }
  if (cmd == "decompose") {
    ProblemBundle b = parse_bundle(paths);
    if (b.functions.empty())
      throw ValidationFailure(
          {{"missing input", "", "a function is required"}});
    emit(decomposition_to_json(decompose_chip_firing(b.functions[0])),
         pretty);
    return 0;
  }
  if (cmd == "gens") {
    ProblemBundle b = parse_bundle(paths);
    LinSysContext ctx = b.context();
    GeneratorSet g = minimal ? minimal_generators(ctx)
                             : (invariant || b.group ? enumerate_SK(ctx)
                                                     : enumerate_S(ctx));
    emit(generators_to_json(g), pretty);
    return 0;
  }
  if (cmd == "check") {
    ProblemBundle b = parse_bundle(paths);
    if (b.functions.empty())
      throw ValidationFailure(
          {{"missing input", "", "a function is required"}});
    LinSysContext ctx = b.context();
    const PLFunction& f = b.functions[0];
    bool member;
    if (in_what == "r")
      member = in_R(ctx, f);
    else if (in_what == "rk")
      member = in_RK(ctx, f);
    else if (in_what == "s")
      member = in_S(ctx, f);
    else if (in_what == "sk")
      member = in_SK(ctx, f);
    else if (in_what == "extremal")
      member = is_extremal_invariant(ctx, f);
    else
      throw ValidationFailure(
          {{"bad flag", "", "--in must be r|rk|s|sk|extremal"}});
    Json j;
    j["member"] = member;
    emit(j, pretty);
    return 0;
  }
  if (cmd == "express") {
    ProblemBundle b = parse_bundle(paths);
    if (b.functions.empty())
      throw ValidationFailure(
          {{"missing input", "", "a function is required"}});
    LinSysContext ctx = b.context();
    GeneratorSet gens = enumerate_SK(ctx);
    TropicalCombination comb = express(ctx, gens, b.functions[0]);
    Json j;
    j["generators"] = generators_to_json(gens);
    j["combination"] = combination_to_json(comb);
    emit(j, pretty);
    return 0;
  }
  throw ValidationFailure({{"bad flag", "", "unknown subcommand " + cmd}});
}

}  // namespace

int run_cli(int argc, const char* const* argv) {
  CLI::App app{"tropical linear systems on metric graphs with symmetry"};
  app.require_subcommand(1);
  BundlePaths paths;
  bool invariant = false, minimal = false, pretty = false;
  std::string in_what;
  std::string cmd;

  auto add_common = [&](CLI::App* sub) {
    sub->add_option("--curve", paths.curve, "curve JSON file");
    sub->add_option("--divisor", paths.divisor, "divisor JSON file");
    sub->add_option("--group", paths.group, "group JSON file");
    sub->add_option("--function", paths.functions, "function JSON file(s)");
    sub->add_flag("--pretty", pretty, "indent output");
    sub->callback([&, sub]() { cmd = sub->get_name(); });
  };
  add_common(app.add_subcommand("gens", "enumerate generators"));
  app.get_subcommand("gens")->add_flag("--invariant", invariant,
                                       "invariant generators S(D)_K");
  app.get_subcommand("gens")->add_flag("--minimal", minimal,
                                       "extremal (minimal) generators");
  add_common(app.add_subcommand("check", "membership tests"));
  app.get_subcommand("check")
      ->add_option("--in", in_what, "r|rk|s|sk|extremal")
      ->required();
  add_common(app.add_subcommand("express", "express f over the generators"));
  add_common(app.add_subcommand("decompose", "chip-firing decomposition"));
  add_common(app.add_subcommand("quotient", "quotient curve and morphism"));
  add_common(app.add_subcommand("info", "curve summary"));

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }

  try {
    return dispatch(cmd, paths, in_what, invariant, minimal, pretty);
  } catch (const ValidationFailure& vf) {
    Json j;
    j["errors"] = Json::array();
    for (const ValidationError& e : vf.items) {
      Json ej;
      ej["code"] = e.code;
      ej["path"] = e.path;
      ej["message"] = e.message;
      j["errors"].push_back(ej);
    }
    emit(j, pretty);
    return 2;
  } catch (const Error& e) {
    Json j;
    j["error"] = e.code();
    j["message"] = e.what();
    emit(j, pretty);
    return e.code() == "not a member" ? 3 : 2;
  }
}

}  // namespace troplin
