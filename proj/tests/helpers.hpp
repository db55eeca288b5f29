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

#ifndef TROPLIN_TESTS_HELPERS_HPP_
#define TROPLIN_TESTS_HELPERS_HPP_

#include <memory>
#include <random>
#include <string>
#include <vector>

#include "troplin/json_io.hpp"
#include "troplin/linear_system.hpp"

namespace troplin_test {

using namespace troplin;  // NOLINT(build/namespaces)

using Model = std::shared_ptr<const MetricGraphModel>;

inline Model build_model(std::vector<VertexRec> vs, std::vector<EdgeRec> es) {
  auto m = std::make_shared<MetricGraphModel>();
  m->vertices = std::move(vs);
  m->edges = std::move(es);
  m->finalize();
  return m;
}

// The unit segment [0,1] with endpoints a, b.
inline Model segment() {
  return build_model({{"a", false}, {"b", false}},
                     {{"s", {"a", "b"}, ExtLen(Rat(1))}});
}

// A circle of circumference 1: a single loop at p.
inline Model circle1() {
  return build_model({{"p", false}}, {{"loop", {"p", "p"}, ExtLen(Rat(1))}});
}

// A circle of circumference 2 with marked antipodal vertices v0, v1; the
// two arcs are `top` and `bot`.
inline Model circle2() {
  return build_model({{"v0", false}, {"v1", false}},
                     {{"top", {"v0", "v1"}, ExtLen(Rat(1))},
                      {"bot", {"v0", "v1"}, ExtLen(Rat(1))}});
}

// The theta graph: two branch vertices joined by three unit edges.
inline Model theta() {
  return build_model({{"a", false}, {"b", false}},
                     {{"e1", {"a", "b"}, ExtLen(Rat(1))},
                      {"e2", {"a", "b"}, ExtLen(Rat(1))},
                      {"e3", {"a", "b"}, ExtLen(Rat(1))}});
}

// A unit segment with an infinite ray attached at each end.
inline Model segment_with_rays() {
  return build_model(
      {{"a", false}, {"b", false}, {"ia", true}, {"ib", true}},
      {{"s", {"a", "b"}, ExtLen(Rat(1))},
       {"ra", {"a", "ia"}, ExtLen::inf()},
       {"rb", {"b", "ib"}, ExtLen::inf()}});
}

// The reflection of circle2 fixing v0 and v1, swapping the arcs.
inline GroupAction circle2_reflection(const Model& m) {
  Isometry s;
  s.vertex_map = {{"v0", "v0"}, {"v1", "v1"}};
  s.edge_map = {{"top", {"bot", false}}, {"bot", {"top", false}}};
  return close_group(m, {s});
}

// The half-turn rotation of circle2 (v0 <-> v1, arcs swapped end-for-end).
inline GroupAction circle2_rotation(const Model& m) {
  Isometry s;
  s.vertex_map = {{"v0", "v1"}, {"v1", "v0"}};
  s.edge_map = {{"top", {"bot", true}}, {"bot", {"top", true}}};
  return close_group(m, {s});
}

// Example-3 data: circle of circumference 2 with the reflection, and
// D = [0.5] + [0.75] on the top arc.
inline Divisor example3_divisor(const Model& m) {
  Divisor d;
  d.add(make_point(*m, "top", Rat(1, 2), "v0"), 1);
  d.add(make_point(*m, "top", Rat(3, 4), "v0"), 1);
  return d;
}

// Deterministic RNG for all randomized suites.
inline std::mt19937& rng() {
  static std::mt19937 gen(20260823);
  return gen;
}

inline long long rand_int(long long lo, long long hi) {
  std::uniform_int_distribution<long long> d(lo, hi);
  return d(rng());
}

inline Rat rand_rat(long long denom_bound, long long num_bound) {
  long long q = rand_int(1, denom_bound);
  long long p = rand_int(1, num_bound * q);
  return Rat(p, q);
}

// A random small connected model; with_rays adds up to two infinite edges.
inline Model random_model(bool with_rays) {
  int nv = static_cast<int>(rand_int(1, 4));
  std::vector<VertexRec> vs;
  for (int i = 0; i < nv; ++i) vs.push_back({"v" + std::to_string(i), false});
  std::vector<EdgeRec> es;
  int ne = 0;
  // A random spanning tree first, then extra edges (possibly loops).
  for (int i = 1; i < nv; ++i) {
    std::string u = "v" + std::to_string(rand_int(0, i - 1));
    es.push_back({"e" + std::to_string(ne++),
                  {u, "v" + std::to_string(i)},
                  ExtLen(rand_rat(3, 2))});
  }
  int extra = static_cast<int>(rand_int(0, 2));
  for (int i = 0; i < extra; ++i) {
    std::string u = "v" + std::to_string(rand_int(0, nv - 1));
    std::string w = "v" + std::to_string(rand_int(0, nv - 1));
    es.push_back(
        {"e" + std::to_string(ne++), {u, w}, ExtLen(rand_rat(3, 2))});
  }
  if (with_rays) {
    int nr = static_cast<int>(rand_int(0, 2));
    for (int i = 0; i < nr; ++i) {
      std::string u = "v" + std::to_string(rand_int(0, nv - 1));
      std::string t = "inf" + std::to_string(i);
      vs.push_back({t, true});
      es.push_back({"r" + std::to_string(i), {u, t}, ExtLen::inf()});
    }
  }
  return build_model(std::move(vs), std::move(es));
}

// A random point of the curve (finite points only).
inline PointRef random_point(const Model& m) {
  // Pick a vertex or an interior point of a finite edge.
  std::vector<PointRef> cands;
  for (const VertexRec& v : m->vertices)
    if (!v.at_infinity) cands.push_back(PointRef::at_vertex(v.id));
  for (const EdgeRec& e : m->edges) {
    if (e.length.infinite) {
      cands.push_back(make_point(*m, e.id, rand_rat(3, 2), m->origin(e)));
    } else {
      Rat t = e.length.value * Rat(rand_int(1, 7), 8);
      cands.push_back(make_point(*m, e.id, t, m->origin(e)));
    }
  }
  return cands[static_cast<std::size_t>(rand_int(
      0, static_cast<long long>(cands.size()) - 1))];
}

// A random rational function: a tropical combination of chip-firing moves.
inline PLFunction random_function(const Model& m, int moves) {
  PLFunction f = PLFunction::constant(m, Rat(0));
  for (int i = 0; i < moves; ++i) {
    std::vector<PointRef> pts;
    int np = static_cast<int>(rand_int(1, 2));
    for (int j = 0; j < np; ++j) pts.push_back(random_point(m));
    std::vector<PointRef> finite_pts;
    for (const PointRef& p : pts)
      if (!is_infinite_point(*m, p)) finite_pts.push_back(p);
    if (finite_pts.empty()) finite_pts.push_back(PointRef::at_vertex(
        m->vertices.front().id));
    Subgraph src = make_subgraph(m, finite_pts, {});
    bool has_ray = false;
    for (const EdgeRec& e : m->edges)
      if (e.length.infinite) has_ray = true;
    ExtLen reach = (has_ray && rand_int(0, 3) == 0)
                       ? ExtLen::inf()
                       : ExtLen(rand_rat(3, 2));
    PLFunction cf = chip_firing(src, reach);
    long long k = rand_int(1, 2);
    PLFunction scaled = scale_int(k, cf);
    f = trop_add(f, trop_scale(Rat(rand_int(-2, 2), rand_int(1, 3)), scaled));
  }
  return f;
}

}  // namespace troplin_test

#endif  // TROPLIN_TESTS_HELPERS_HPP_
