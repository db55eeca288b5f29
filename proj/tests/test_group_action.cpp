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

#include <doctest.h>

#include <algorithm>
#include <set>

#include "helpers.hpp"

namespace {

using namespace troplin_test;

TEST_CASE("close_group: trivial, reflection, rotation") {
  Model m = circle2();
  CHECK(trivial_group(m).order() == 1);
  CHECK(circle2_reflection(m).order() == 2);
  CHECK(circle2_rotation(m).order() == 2);
}

TEST_CASE("close_group validates generators and bounds") {
  Model m = circle2();
  Isometry bad;
  bad.vertex_map = {{"v0", "v0"}, {"v1", "v1"}};
  bad.edge_map = {{"top", {"top", false}}, {"bot", {"top", false}}};
  CHECK_THROWS_AS(close_group(m, {bad}), Error);
}

TEST_CASE("group axioms hold on the closed group") {
  Model m = circle2();
  for (GroupAction k : {circle2_reflection(m), circle2_rotation(m)}) {
    CHECK(k.elements[0] == identity_isometry(*m));
    for (const Isometry& a : k.elements) {
      Isometry ai = inverse(*m, a);
      CHECK(std::count(k.elements.begin(), k.elements.end(), ai) == 1);
      CHECK(compose(*m, a, ai) == identity_isometry(*m));
      for (const Isometry& b : k.elements) {
        Isometry ab = compose(*m, a, b);
        CHECK(std::count(k.elements.begin(), k.elements.end(), ab) == 1);
        for (const Isometry& c : k.elements)
          CHECK(compose(*m, compose(*m, a, b), c) ==
                compose(*m, a, compose(*m, b, c)));
      }
    }
  }
}

TEST_CASE("apply to points: identity and the reflection") {
  Model m = circle2();
  GroupAction k = circle2_reflection(m);
  PointRef half = make_point(*m, "top", Rat(1, 2), "v0");
  CHECK(apply(*m, k.elements[0], half) == half);
  // The reflection carries 0.5 (on top) to 1.5, i.e. bot at 1/2 from v0.
  const Isometry& s = k.elements[1];
  CHECK(apply(*m, s, half) == make_point(*m, "bot", Rat(1, 2), "v0"));
  CHECK(apply(*m, s, PointRef::at_vertex("v0")) == PointRef::at_vertex("v0"));
}

TEST_CASE("apply to divisors matches the reflection formula") {
  Model m = circle2();
  GroupAction k = circle2_reflection(m);
  Divisor d = example3_divisor(m);
  Divisor img = apply(*m, k.elements[1], d);
  Divisor expect;
  expect.add(make_point(*m, "bot", Rat(1, 2), "v0"), 1);   // 1.5
  expect.add(make_point(*m, "bot", Rat(3, 4), "v0"), 1);   // 1.25
  CHECK(img == expect);
  CHECK(!invariant_divisor(k, d));
  Divisor sym = d + img;
  CHECK(invariant_divisor(k, sym));
}

TEST_CASE("apply to functions: f o sigma, invariance") {
  Model m = circle2();
  GroupAction k = circle2_reflection(m);
  PointRef half = make_point(*m, "top", Rat(1, 2), "v0");
  PLFunction f = chip_firing(make_subgraph(m, {half}, {}), ExtLen(Rat(1, 4)));
  PLFunction fs = apply(m, k.elements[1], f);
  // (f o sigma)(1.5) = f(0.5) = 0.
  CHECK(fs.eval(make_point(*m, "bot", Rat(1, 2), "v0")) == ExtVal(Rat(0)));
  CHECK(fs.eval(half) == ExtVal(Rat(-1, 4)));
  CHECK(!invariant_function(k, f));
  PLFunction sym = chip_firing(
      make_subgraph(m, {PointRef::at_vertex("v0")}, {}), ExtLen(Rat(1, 3)));
  CHECK(invariant_function(k, sym));
  // (c (.) f) o sigma = c (.) (f o sigma); (f (+) g) o sigma distributes.
  PLFunction lhs = apply(m, k.elements[1], trop_scale(Rat(5, 3), f));
  CHECK(equal_functions(lhs, trop_scale(Rat(5, 3), fs)));
  PLFunction sum = apply(m, k.elements[1], trop_add(f, sym));
  CHECK(equal_functions(sum, trop_add(fs, sym)));
}

TEST_CASE("compute_V1 examples") {
  Model m = circle2();
  CHECK(compute_V1(trivial_group(m)).empty());

  std::vector<PointRef> v1 = compute_V1(circle2_reflection(m));
  std::set<PointRef> v1s(v1.begin(), v1.end());
  CHECK(v1s == std::set<PointRef>{PointRef::at_vertex("v0"),
                                  PointRef::at_vertex("v1")});

  CHECK(compute_V1(circle2_rotation(m)).empty());
}

TEST_CASE("compute_V1: reversed loop contributes its midpoint") {
  // A loop flipped by an order-2 isometry: fixed points are the loop vertex
  // and the midpoint.
  Model m = circle1();
  Isometry s;
  s.vertex_map = {{"p", "p"}};
  s.edge_map = {{"loop", {"loop", true}}};
  GroupAction k = close_group(m, {s});
  std::vector<PointRef> v1 = compute_V1(k);
  std::set<PointRef> v1s(v1.begin(), v1.end());
  CHECK(v1s == std::set<PointRef>{PointRef::at_vertex("p"),
                                  make_point(*m, "loop", Rat(1, 2), "p")});
}

TEST_CASE("stabilizers are locally constant off V1") {
  Model m = circle2();
  for (GroupAction k : {circle2_reflection(m), circle2_rotation(m)}) {
    std::vector<PointRef> v1 = compute_V1(k);
    std::set<PointRef> v1s(v1.begin(), v1.end());
    for (int trial = 0; trial < 100; ++trial) {
      // A random interior point off V1 and the model vertices.
      std::string eid = rand_int(0, 1) == 0 ? "top" : "bot";
      Rat t(rand_int(1, 99), 100);
      PointRef x = make_point(*m, eid, t, "v0");
      if (v1s.count(x)) continue;
      // Distance to V1 and the vertices, all on the two unit arcs.
      Rat eps = Rat(1, 2) * (t < Rat(1, 2) ? t : Rat(1) - t);
      for (const PointRef& p : v1) {
        ExtLen d = distance(*m, x, p);
        if (d.value / 2 < eps) eps = d.value / 2;
      }
      PointRef y = make_point(*m, eid, Rat(t + eps / 2), "v0");
      auto sx = point_stabilizer(k, x);
      auto sy = point_stabilizer(k, y);
      CHECK(sx == sy);
    }
  }
}

TEST_CASE("invariant_model examples") {
  // Trivial action on theta: the canonical loopless model.
  Model th = theta();
  InducedAction ia = invariant_model(trivial_group(th));
  CHECK(ia.derived.model.vertices.size() == 2);
  CHECK(ia.derived.model.edges.size() == 3);

  Model m = circle2();
  InducedAction refl = invariant_model(circle2_reflection(m));
  CHECK(refl.derived.model.vertices.size() == 2);
  CHECK(refl.derived.model.edges.size() == 2);

  // Rotation: the quotient of the 2-vertex model would be a loop, so the
  // invariant model subdivides further.
  InducedAction rot = invariant_model(circle2_rotation(m));
  CHECK(rot.derived.model.vertices.size() == 4);
  CHECK(rot.derived.model.edges.size() == 4);

  // Vertex set of the invariant model is K-stable.
  for (const auto& [name, act] :
       {std::pair<std::string, InducedAction>{"refl", refl},
        {"rot", rot}}) {
    for (const Isometry& s : act.elements)
      validate_isometry(act.derived.model, s);
  }
}

TEST_CASE("orbit_data and Orbit-Stabilizer") {
  Model m = circle2();
  GroupAction k = circle2_reflection(m);
  InducedAction ia = invariant_model(k);
  OrbitData od = orbit_data(ia.elements, ia.derived.model);
  // The two arcs form one orbit with trivial stabilizer.
  std::set<std::string> edge_orbits;
  for (const auto& [e, rep] : od.edge_orbit) edge_orbits.insert(rep);
  CHECK(edge_orbits.size() == 1);
  for (const auto& [e, st] : od.edge_stab) CHECK(st == 1);
  for (const auto& [v, st] : od.vertex_stab) CHECK(st == 2);

  GroupAction t = trivial_group(m);
  OrbitData td = orbit_data(t.elements, *m);
  for (const auto& [e, st] : td.edge_stab) CHECK(st == 1);
  std::set<std::string> reps;
  for (const auto& [e, rep] : td.edge_orbit) {
    CHECK(e == rep);
    reps.insert(rep);
  }
  CHECK(reps.size() == m->edges.size());
}

TEST_CASE("orbit_data: pointwise fixed edge has full stabilizer") {
  // Segment with a reflection of a 3-edge path that fixes the middle edge
  // setwise... simpler: an action with a pointwise-fixed edge.
  Model m = build_model({{"a", false}, {"b", false}, {"c", false}},
                        {{"e1", {"a", "b"}, ExtLen(Rat(1))},
                         {"e2", {"a", "b"}, ExtLen(Rat(1))},
                         {"s", {"b", "c"}, ExtLen(Rat(1))}});
  Isometry sw;
  sw.vertex_map = {{"a", "a"}, {"b", "b"}, {"c", "c"}};
  sw.edge_map = {{"e1", {"e2", false}}, {"e2", {"e1", false}},
                 {"s", {"s", false}}};
  GroupAction k = close_group(m, {sw});
  OrbitData od = orbit_data(k.elements, *m);
  CHECK(od.edge_stab.at("s") == 2);
  CHECK(od.edge_stab.at("e1") == 1);
  CHECK(od.edge_orbit.at("e2") == "e1");
}

}  // namespace
