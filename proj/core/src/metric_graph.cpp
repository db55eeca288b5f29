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

#include "troplin/metric_graph.hpp"

#include <algorithm>
#include <cassert>
#include <deque>

namespace troplin {

void MetricGraphModel::finalize() {
  vertex_index_.clear();
  edge_index_.clear();
  incidence_.clear();
  if (vertices.empty()) throw Error("empty graph", "model has no vertices");
  for (int i = 0; i < static_cast<int>(vertices.size()); ++i) {
    if (!vertex_index_.emplace(vertices[i].id, i).second)
      throw Error("duplicate id", "duplicate vertex id: " + vertices[i].id);
    incidence_[vertices[i].id];
  }
  for (int i = 0; i < static_cast<int>(edges.size()); ++i) {
    const EdgeRec& e = edges[i];
    if (!edge_index_.emplace(e.id, i).second)
      throw Error("duplicate id", "duplicate edge id: " + e.id);
    for (int s = 0; s < 2; ++s) {
      if (!vertex_index_.count(e.ends[s]))
        throw Error("dangling id",
                    "edge " + e.id + " references unknown vertex " + e.ends[s]);
      incidence_[e.ends[s]].emplace_back(e.id, s);
    }
    if (!e.length.infinite && e.length.value <= 0)
      throw Error("nonpositive length", "edge " + e.id + " has length <= 0");
    if (e.length.infinite) {
      bool inf0 = vertex(e.ends[0]).at_infinity;
      bool inf1 = vertex(e.ends[1]).at_infinity;
      if (inf0 == inf1)
        throw Error("bad infinite edge",
                    "infinite edge " + e.id +
                        " must join a finite vertex to an at_infinity vertex");
    }
  }
  for (const VertexRec& v : vertices) {
    if (!v.at_infinity) continue;
    const auto& inc = incidence_.at(v.id);
    if (inc.size() != 1 || !edge(inc[0].first).length.infinite)
      throw Error("bad infinity vertex",
                  "at_infinity vertex " + v.id +
                      " must have exactly one incident edge, of infinite "
                      "length");
  }
  // Connectivity.
  std::set<std::string> seen;
  std::deque<std::string> queue{vertices[0].id};
  seen.insert(vertices[0].id);
  while (!queue.empty()) {
    std::string v = queue.front();
    queue.pop_front();
    for (const auto& [eid, slot] : incidence_.at(v)) {
      const std::string& w = edge(eid).ends[1 - slot];
      if (seen.insert(w).second) queue.push_back(w);
    }
  }
  if (seen.size() != vertices.size())
    throw Error("disconnected graph", "model is not connected");
}

bool MetricGraphModel::has_vertex(const std::string& id) const {
  return vertex_index_.count(id) > 0;
}
bool MetricGraphModel::has_edge(const std::string& id) const {
  return edge_index_.count(id) > 0;
}

const VertexRec& MetricGraphModel::vertex(const std::string& id) const {
  auto it = vertex_index_.find(id);
  if (it == vertex_index_.end())
    throw Error("dangling id", "unknown vertex id: " + id);
  return vertices[it->second];
}

const EdgeRec& MetricGraphModel::edge(const std::string& id) const {
  auto it = edge_index_.find(id);
  if (it == edge_index_.end())
    throw Error("dangling id", "unknown edge id: " + id);
  return edges[it->second];
}

const std::vector<std::pair<std::string, int>>& MetricGraphModel::incident(
    const std::string& v) const {
  auto it = incidence_.find(v);
  if (it == incidence_.end())
    throw Error("dangling id", "unknown vertex id: " + v);
  return it->second;
}

int MetricGraphModel::valence(const std::string& v) const {
  return static_cast<int>(incident(v).size());
}

int MetricGraphModel::origin_slot(const EdgeRec& e) const {
  if (e.length.infinite && vertex(e.ends[0]).at_infinity) return 1;
  return 0;
}

PointRef make_point(const MetricGraphModel& m, const std::string& edge_id,
                    const Rat& offset, const std::string& anchor) {
  const EdgeRec& e = m.edge(edge_id);
  Rat t;
  if (m.is_loop(e)) {
    if (anchor != e.ends[0])
      throw Error("point off curve",
                  "anchor of a loop point must be the loop vertex");
    t = offset;
  } else if (anchor == m.origin(e)) {
    t = offset;
  } else if (anchor == m.far_end(e)) {
    if (e.length.infinite)
      throw Error("point off curve",
                  "offsets on an infinite edge must be anchored at the "
                  "finite end");
    t = e.length.value - offset;
  } else {
    throw Error("point off curve",
                "anchor " + anchor + " is not an endpoint of edge " + edge_id);
  }
  if (t < 0 || (!e.length.infinite && t > e.length.value))
    throw Error("point off curve", "offset outside edge " + edge_id);
  if (t == 0) return PointRef::at_vertex(m.origin(e));
  if (!e.length.infinite && t == e.length.value)
    return PointRef::at_vertex(m.far_end(e));
  return PointRef::interior(edge_id, t);
}

bool is_infinite_point(const MetricGraphModel& m, const PointRef& p) {
  return p.is_vertex() && m.vertex(p.vertex).at_infinity;
}

int valence(const MetricGraphModel& m, const PointRef& p) {
  if (!p.is_vertex()) return 2;
  return m.valence(p.vertex);
}

DerivedModel DerivedModel::trivial(std::shared_ptr<const MetricGraphModel> b) {
  DerivedModel d;
  d.base = std::move(b);
  d.model = *d.base;
  d.model.finalize();
  for (const VertexRec& v : d.model.vertices)
    d.vertex_base[v.id] = PointRef::at_vertex(v.id);
  for (const EdgeRec& e : d.model.edges)
    d.edge_paths[e.id] = {
        PathSeg{e.id, Rat(0),
                e.length.infinite ? ExtLen::inf() : ExtLen(e.length.value)}};
  d.build_index();
  return d;
}

void DerivedModel::build_index() {
  base_vertex_pos_.clear();
  covers_.clear();
  for (const auto& [mv, bp] : vertex_base)
    if (bp.is_vertex()) base_vertex_pos_[bp.vertex] = PointRef::at_vertex(mv);
  for (const EdgeRec& me : model.edges) {
    const auto& path = edge_paths.at(me.id);
    Rat acc = 0;
    for (size_t k = 0; k < path.size(); ++k) {
      const PathSeg& s = path[k];
      const EdgeRec& be = base->edge(s.base_edge);
      if (k > 0) {
        // A junction at a base edge end is a suppressed base vertex;
        // remember where it lives on the model edge.  Junctions at interior
        // base coordinates arise from suppressed refinement vertices and
        // need no entry.
        if (s.from == 0)
          base_vertex_pos_.emplace(base->origin(be),
                                   PointRef::interior(me.id, acc));
        else if (!be.length.infinite && s.from == be.length.value)
          base_vertex_pos_.emplace(base->far_end(be),
                                   PointRef::interior(me.id, acc));
      }
      Cover c;
      c.model_edge = me.id;
      c.acc = acc;
      c.at_from = s.from;
      if (s.to.infinite) {
        c.lo = s.from;
        c.ray = true;
        c.forward = true;
      } else if (s.to.value >= s.from) {
        c.lo = s.from;
        c.hi = s.to.value;
        c.forward = true;
      } else {
        c.lo = s.to.value;
        c.hi = s.from;
        c.forward = false;
      }
      covers_[s.base_edge].push_back(c);
      if (!s.to.infinite)
        acc += s.to.value >= s.from ? s.to.value - s.from : s.from - s.to.value;
    }
  }
  for (auto& [be, cs] : covers_)
    std::sort(cs.begin(), cs.end(),
              [](const Cover& a, const Cover& b) { return a.lo < b.lo; });
}

PointRef DerivedModel::to_base(const PointRef& p) const {
  if (p.is_vertex()) return vertex_base.at(p.vertex);
  return base_point_on_edge(p.edge, p.offset);
}

PointRef DerivedModel::base_point_on_edge(const std::string& model_edge,
                                          const Rat& along) const {
  const auto& path = edge_paths.at(model_edge);
  Rat acc = 0;
  for (size_t k = 0; k < path.size(); ++k) {
    const PathSeg& s = path[k];
    const EdgeRec& be = base->edge(s.base_edge);
    Rat seg_len;
    bool ray = s.to.infinite;
    bool forward = ray || s.to.value >= s.from;
    if (!ray) seg_len = forward ? s.to.value - s.from : s.from - s.to.value;
    bool last = k + 1 == path.size();
    if (ray || along < acc + seg_len || last) {
      Rat d = along - acc;
      if (!ray && d > seg_len) d = seg_len;  // clamp at path end
      Rat t = forward ? Rat(s.from + d) : Rat(s.from - d);
      if (t == 0) return PointRef::at_vertex(base->origin(be));
      if (!be.length.infinite && t == be.length.value)
        return PointRef::at_vertex(base->far_end(be));
      return PointRef::interior(s.base_edge, t);
    }
    acc += seg_len;
  }
  throw Error("point off curve", "position beyond edge " + model_edge);
}

PointRef DerivedModel::locate(const PointRef& bp) const {
  if (bp.is_vertex()) {
    auto it = base_vertex_pos_.find(bp.vertex);
    if (it == base_vertex_pos_.end()) {
      base->vertex(bp.vertex);  // throws on unknown id
      throw Error("internal", "base vertex not covered: " + bp.vertex);
    }
    return it->second;
  }
  base->edge(bp.edge);  // validate id
  auto cit = covers_.find(bp.edge);
  if (cit == covers_.end())
    throw Error("internal", "base edge not covered: " + bp.edge);
  for (const Cover& c : cit->second) {
    bool inside = c.ray ? bp.offset >= c.lo
                        : (bp.offset >= c.lo && bp.offset <= c.hi);
    if (!inside) continue;
    Rat along = c.forward ? c.acc + (bp.offset - c.at_from)
                          : c.acc + (c.at_from - bp.offset);
    const EdgeRec& me = model.edge(c.model_edge);
    if (along == 0) return PointRef::at_vertex(model.origin(me));
    if (!me.length.infinite && along == me.length.value)
      return PointRef::at_vertex(model.far_end(me));
    return PointRef::interior(c.model_edge, along);
  }
  throw Error("internal", "base point not covered on edge " + bp.edge);
}

namespace {

// Cuts the sub-path of `path` (a model edge's base path) between model-edge
// coordinates a and b (a < b; b may be infinite only on the final ray).
std::vector<PathSeg> slice_path(const std::vector<PathSeg>& path, const Rat& a,
                                const ExtLen& b) {
  std::vector<PathSeg> out;
  Rat acc = 0;
  for (const PathSeg& s : path) {
    bool ray = s.to.infinite;
    bool forward = ray || s.to.value >= s.from;
    Rat seg_len;
    if (!ray) seg_len = forward ? s.to.value - s.from : s.from - s.to.value;
    ExtLen seg_end = ray ? ExtLen::inf() : ExtLen(acc + seg_len);
    // Overlap of [a, b] with [acc, seg_end].
    Rat lo = a > acc ? a : acc;
    ExtLen hi = b < seg_end ? b : seg_end;
    if (ExtLen(lo) < hi) {
      Rat from = forward ? Rat(s.from + (lo - acc)) : Rat(s.from - (lo - acc));
      ExtLen to;
      if (hi.infinite)
        to = ExtLen::inf();
      else
        to = ExtLen(forward ? Rat(s.from + (hi.value - acc))
                            : Rat(s.from - (hi.value - acc)));
      out.push_back(PathSeg{s.base_edge, from, to});
    }
    if (ray) break;
    acc += seg_len;
    if (!b.infinite && acc >= b.value) break;
  }
  if (out.empty()) throw Error("internal", "empty path slice");
  return out;
}

std::string interior_vertex_id(const PointRef& base_pt) {
  if (base_pt.is_vertex()) return base_pt.vertex;
  return base_pt.edge + "@" + format_rat(base_pt.offset);
}

}  // namespace

DerivedModel refine(const DerivedModel& m, const std::vector<PointRef>& pts) {
  // Collect interior cut positions per model edge.
  std::map<std::string, std::set<Rat>> cuts;
  for (const PointRef& bp : pts) {
    PointRef mp = m.locate(bp);
    if (!mp.is_vertex()) cuts[mp.edge].insert(mp.offset);
  }
  DerivedModel d;
  d.base = m.base;
  d.model.vertices = m.model.vertices;
  for (const auto& [mv, bp] : m.vertex_base) d.vertex_base[mv] = bp;
  for (const EdgeRec& e : m.model.edges) {
    auto cit = cuts.find(e.id);
    if (cit == cuts.end()) {
      d.model.edges.push_back(e);
      d.edge_paths[e.id] = m.edge_paths.at(e.id);
      continue;
    }
    std::vector<Rat> ts(cit->second.begin(), cit->second.end());
    std::vector<std::string> vids;
    for (const Rat& t : ts) {
      PointRef bp = m.base_point_on_edge(e.id, t);
      std::string vid = interior_vertex_id(bp);
      vids.push_back(vid);
      if (!d.vertex_base.count(vid)) {
        d.model.vertices.push_back(VertexRec{vid, false});
        d.vertex_base[vid] = bp;
      }
    }
    const std::string& o = m.model.origin(e);
    const std::string& f = m.model.far_end(e);
    const auto& path = m.edge_paths.at(e.id);
    for (size_t i = 0; i <= ts.size(); ++i) {
      Rat a = i == 0 ? Rat(0) : ts[i - 1];
      ExtLen b = i == ts.size()
                     ? (e.length.infinite ? ExtLen::inf()
                                          : ExtLen(e.length.value))
                     : ExtLen(ts[i]);
      EdgeRec sub;
      sub.id = e.id + ":" + std::to_string(i);
      sub.ends[0] = i == 0 ? o : vids[i - 1];
      sub.ends[1] = i == ts.size() ? f : vids[i];
      sub.length = b.infinite ? ExtLen::inf() : ExtLen(b.value - a);
      d.model.edges.push_back(sub);
      d.edge_paths[sub.id] = slice_path(path, a, b);
    }
  }
  d.model.finalize();
  d.build_index();
  return d;
}

DerivedModel suppress(const DerivedModel& m,
                      const std::function<bool(const std::string&)>& keep) {
  std::set<std::string> kept;
  for (const VertexRec& v : m.model.vertices)
    if (keep(v.id) || m.model.valence(v.id) != 2) kept.insert(v.id);

  // Every cycle and every doubly-infinite chain needs an anchor vertex.
  for (;;) {
    if (kept.empty()) {
      kept.insert(m.model.vertices[0].id);  // ids are sorted on input? no:
      std::string best = m.model.vertices[0].id;
      for (const VertexRec& v : m.model.vertices)
        if (v.id < best) best = v.id;
      kept.clear();
      kept.insert(best);
      continue;
    }
    // Walk all chains; if one joins two at_infinity ends with no kept
    // interior vertex, anchor it at its smallest interior vertex.
    bool changed = false;
    std::set<std::pair<std::string, int>> used;
    std::vector<std::string> kv(kept.begin(), kept.end());
    for (const std::string& a : kv) {
      for (const auto& he : m.model.incident(a)) {
        if (used.count(he)) continue;
        std::vector<std::string> interior;
        std::pair<std::string, int> cur = he;
        used.insert(cur);
        std::string w = m.model.edge(cur.first).ends[1 - cur.second];
        while (!kept.count(w)) {
          interior.push_back(w);
          const auto& inc = m.model.incident(w);
          std::pair<std::string, int> arrived = {cur.first, 1 - cur.second};
          std::pair<std::string, int> next =
              inc[0] == arrived ? inc[1] : inc[0];
          cur = next;
          used.insert(cur);
          w = m.model.edge(cur.first).ends[1 - cur.second];
        }
        used.insert({cur.first, 1 - cur.second});
        if (m.model.vertex(a).at_infinity && m.model.vertex(w).at_infinity &&
            !interior.empty()) {
          kept.insert(*std::min_element(interior.begin(), interior.end()));
          changed = true;
        }
      }
    }
    if (!changed) break;
  }

  DerivedModel d;
  d.base = m.base;
  for (const VertexRec& v : m.model.vertices)
    if (kept.count(v.id)) {
      d.model.vertices.push_back(v);
      d.vertex_base[v.id] = m.vertex_base.at(v.id);
    }

  std::set<std::string> edge_done;
  std::vector<std::string> kv(kept.begin(), kept.end());
  std::sort(kv.begin(), kv.end());
  for (const std::string& a : kv) {
    auto inc = m.model.incident(a);
    std::sort(inc.begin(), inc.end());
    for (const auto& he : inc) {
      if (edge_done.count(he.first)) continue;
      // Walk the chain a -> ... -> b through smooth unkept vertices.
      std::vector<std::pair<std::string, bool>> members;  // (edge, fwd walk)
      std::pair<std::string, int> cur = he;
      std::string w;
      for (;;) {
        members.emplace_back(cur.first, cur.second == 0);
        edge_done.insert(cur.first);
        w = m.model.edge(cur.first).ends[1 - cur.second];
        if (kept.count(w)) break;
        const auto& winc = m.model.incident(w);
        std::pair<std::string, int> arrived = {cur.first, 1 - cur.second};
        cur = winc[0] == arrived ? winc[1] : winc[0];
      }
      std::string b = w;
      if (members.size() == 1 && !m.model.is_loop(m.model.edge(he.first))) {
        const EdgeRec& e = m.model.edge(he.first);
        d.model.edges.push_back(e);
        d.edge_paths[e.id] = m.edge_paths.at(e.id);
        continue;
      }
      // Orient the merged edge away from an at_infinity end.
      bool rev = m.model.vertex(a).at_infinity;
      std::string lo = a, hi = b;
      if (rev) {
        std::reverse(members.begin(), members.end());
        for (auto& mb : members) mb.second = !mb.second;
        std::swap(lo, hi);
      }
      EdgeRec merged;
      merged.id = members[0].first;
      for (const auto& mb : members)
        if (mb.first < merged.id) merged.id = mb.first;
      merged.ends = {lo, hi};
      ExtLen total(Rat(0));
      std::vector<PathSeg> path;
      for (const auto& [eid, fwd] : members) {
        const EdgeRec& e = m.model.edge(eid);
        total = total + e.length;
        // fwd means walked from ends[0] to ends[1]; the stored path runs
        // from the canonical origin.
        bool along_path = (m.model.origin_slot(e) == 0) == fwd;
        const auto& p = m.edge_paths.at(eid);
        if (along_path) {
          path.insert(path.end(), p.begin(), p.end());
        } else {
          for (auto it = p.rbegin(); it != p.rend(); ++it) {
            if (it->to.infinite)
              throw Error("internal", "cannot reverse an infinite segment");
            path.push_back(PathSeg{it->base_edge, it->to.value,
                                   ExtLen(it->from)});
          }
        }
      }
      merged.length = total;
      d.model.edges.push_back(merged);
      d.edge_paths[merged.id] = std::move(path);
    }
  }
  d.model.finalize();
  d.build_index();
  return d;
}

DerivedModel canonical_loopless(const DerivedModel& m) {
  DerivedModel c = suppress(m, [](const std::string&) { return false; });
  std::vector<PointRef> midpoints;
  for (const EdgeRec& e : c.model.edges)
    if (c.model.is_loop(e))
      midpoints.push_back(c.base_point_on_edge(e.id, e.length.value / 2));
  if (midpoints.empty()) return c;
  return refine(c, midpoints);
}

MetricGraphModel canonical_loopless_model(const MetricGraphModel& m) {
  auto base = std::make_shared<MetricGraphModel>(m);
  base->finalize();
  return canonical_loopless(DerivedModel::trivial(base)).model;
}

std::map<std::string, ExtLen> multi_source_distance(
    const MetricGraphModel& m,
    const std::map<std::string, ExtLen>& sources) {
  std::map<std::string, ExtLen> dist;
  std::set<std::string> done;
  for (const auto& [v, d] : sources) dist[v] = d;
  for (;;) {
    // Select the unfinished vertex of smallest finite tentative distance.
    std::string best;
    ExtLen best_d = ExtLen::inf();
    for (const auto& [v, d] : dist)
      if (!done.count(v) && d < best_d) {
        best = v;
        best_d = d;
      }
    if (best.empty()) break;
    done.insert(best);
    for (const auto& [eid, slot] : m.incident(best)) {
      const EdgeRec& e = m.edge(eid);
      const std::string& w = e.ends[1 - slot];
      ExtLen nd = best_d + e.length;
      auto it = dist.find(w);
      if (it == dist.end() || nd < it->second) dist[w] = nd;
    }
  }
  for (const VertexRec& v : m.vertices)
    if (!dist.count(v.id)) dist[v.id] = ExtLen::inf();
  return dist;
}

ExtLen distance(const DerivedModel& m, const PointRef& x, const PointRef& y) {
  if (x == y) return ExtLen(Rat(0));
  DerivedModel r = refine(m, {x, y});
  PointRef vx = r.locate(x), vy = r.locate(y);
  auto dist = multi_source_distance(r.model, {{vx.vertex, ExtLen(Rat(0))}});
  return dist.at(vy.vertex);
}

ExtLen distance(const MetricGraphModel& m, const PointRef& x,
                const PointRef& y) {
  auto base = std::make_shared<MetricGraphModel>(m);
  base->finalize();
  return distance(DerivedModel::trivial(base), x, y);
}

bool is_cut_set(const DerivedModel& m, const std::vector<PointRef>& pts) {
  if (m.model.edges.empty()) return false;
  DerivedModel r = refine(m, pts);
  std::set<std::string> removed;
  for (const PointRef& p : pts) removed.insert(r.locate(p).vertex);
  // Union-find over surviving vertices and open edges.
  std::map<std::string, std::string> parent;
  std::function<std::string(std::string)> find = [&](std::string a) {
    while (parent[a] != a) a = parent[a] = parent[parent[a]];
    return a;
  };
  auto node_v = [](const std::string& v) { return "v:" + v; };
  auto node_e = [](const std::string& e) { return "e:" + e; };
  auto add = [&](const std::string& n) {
    if (!parent.count(n)) parent[n] = n;
  };
  auto unite = [&](const std::string& a, const std::string& b) {
    parent[find(a)] = find(b);
  };
  for (const VertexRec& v : r.model.vertices)
    if (!removed.count(v.id)) add(node_v(v.id));
  for (const EdgeRec& e : r.model.edges) {
    add(node_e(e.id));
    for (int s = 0; s < 2; ++s)
      if (!removed.count(e.ends[s])) unite(node_e(e.id), node_v(e.ends[s]));
  }
  std::set<std::string> roots;
  for (const auto& [n, p] : parent) roots.insert(find(n));
  return roots.size() > 1;
}

bool is_cut_set(const MetricGraphModel& m, const std::vector<PointRef>& pts) {
  auto base = std::make_shared<MetricGraphModel>(m);
  base->finalize();
  return is_cut_set(DerivedModel::trivial(base), pts);
}

}  // namespace troplin
