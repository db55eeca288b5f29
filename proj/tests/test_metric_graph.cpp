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
#include <map>

#include "helpers.hpp"

namespace {

using namespace troplin_test;

// Multiset of edge lengths, to compare models up to isomorphism cheaply.
std::multiset<std::string> length_multiset(const MetricGraphModel& m) {
  std::multiset<std::string> s;
  for (const EdgeRec& e : m.edges) s.insert(format_extlen(e.length));
  return s;
}

TEST_CASE("canonical loopless model: smooth point removal on a segment") {
  Model m = build_model({{"a", false}, {"mid", false}, {"b", false}},
                        {{"s1", {"a", "mid"}, ExtLen(Rat(1, 2))},
                         {"s2", {"mid", "b"}, ExtLen(Rat(1, 2))}});
  MetricGraphModel c = canonical_loopless_model(*m);
  CHECK(c.vertices.size() == 2);
  CHECK(c.edges.size() == 1);
  CHECK(c.edges[0].length == ExtLen(Rat(1)));
}

TEST_CASE("canonical loopless model: circle as 3 arcs") {
  Model m = build_model({{"x", false}, {"y", false}, {"z", false}},
                        {{"a1", {"x", "y"}, ExtLen(Rat(1, 2))},
                         {"a2", {"y", "z"}, ExtLen(Rat(3, 4))},
                         {"a3", {"z", "x"}, ExtLen(Rat(3, 4))}});
  MetricGraphModel c = canonical_loopless_model(*m);
  // One chosen vertex plus its antipode: two vertices, two edges of length 1.
  CHECK(c.vertices.size() == 2);
  CHECK(c.edges.size() == 2);
  CHECK(length_multiset(c) == std::multiset<std::string>{"1", "1"});
}

TEST_CASE("canonical loopless model: theta graph unchanged") {
  Model m = theta();
  MetricGraphModel c = canonical_loopless_model(*m);
  CHECK(c.vertices.size() == 2);
  CHECK(c.edges.size() == 3);
}

TEST_CASE("canonical loopless model: loop midpoint added") {
  Model m = circle1();
  MetricGraphModel c = canonical_loopless_model(*m);
  CHECK(c.vertices.size() == 2);
  CHECK(c.edges.size() == 2);
  CHECK(length_multiset(c) == std::multiset<std::string>{"1/2", "1/2"});
}

TEST_CASE("refine: segment at interior point") {
  Model m = build_model({{"a", false}, {"b", false}},
                        {{"s", {"a", "b"}, ExtLen(Rat(2))}});
  DerivedModel r = refine(DerivedModel::trivial(m),
                          {make_point(*m, "s", Rat(1), "a")});
  CHECK(r.model.vertices.size() == 3);
  CHECK(r.model.edges.size() == 2);
  CHECK(length_multiset(r.model) == std::multiset<std::string>{"1", "1"});
}

TEST_CASE("refine: circle one-vertex model at midpoint") {
  Model m = circle1();
  DerivedModel r = refine(DerivedModel::trivial(m),
                          {make_point(*m, "loop", Rat(1, 2), "p")});
  CHECK(r.model.vertices.size() == 2);
  CHECK(r.model.edges.size() == 2);
}

TEST_CASE("refine: empty point set is the identity") {
  Model m = theta();
  DerivedModel r = refine(DerivedModel::trivial(m), {});
  CHECK(r.model.vertices.size() == m->vertices.size());
  CHECK(r.model.edges.size() == m->edges.size());
}

TEST_CASE("refine round-trip: canonical model is recovered") {
  for (Model m : {segment(), circle1(), theta(), segment_with_rays()}) {
    std::vector<PointRef> pts;
    for (const EdgeRec& e : m->edges)
      pts.push_back(make_point(*m, e.id, Rat(1, 3), m->origin(e)));
    DerivedModel r = refine(DerivedModel::trivial(m), pts);
    MetricGraphModel c0 = canonical_loopless_model(*m);
    MetricGraphModel c1 = canonical_loopless_model(r.model);
    CHECK(c0.vertices.size() == c1.vertices.size());
    CHECK(length_multiset(c0) == length_multiset(c1));
  }
}

TEST_CASE("distance: segment") {
  Model m = build_model({{"a", false}, {"b", false}},
                        {{"s", {"a", "b"}, ExtLen(Rat(3))}});
  PointRef x = PointRef::at_vertex("a");
  PointRef y = make_point(*m, "s", Rat(1), "a");
  CHECK(distance(*m, x, y) == ExtLen(Rat(1)));
}

TEST_CASE("distance: circle antipode") {
  Model m = circle2();
  CHECK(distance(*m, PointRef::at_vertex("v0"), PointRef::at_vertex("v1")) ==
        ExtLen(Rat(1)));
  PointRef q = make_point(*m, "top", Rat(1, 4), "v0");
  CHECK(distance(*m, PointRef::at_vertex("v0"), q) == ExtLen(Rat(1, 4)));
}

TEST_CASE("distance: point at infinity") {
  Model m = segment_with_rays();
  CHECK(distance(*m, PointRef::at_vertex("a"), PointRef::at_vertex("ia")) ==
        ExtLen::inf());
  CHECK(distance(*m, PointRef::at_vertex("ia"), PointRef::at_vertex("ia")) ==
        ExtLen(Rat(0)));
}

TEST_CASE("distance: metric axioms on random models") {
  for (int trial = 0; trial < 40; ++trial) {
    Model m = random_model(false);
    PointRef x = random_point(m);
    PointRef y = random_point(m);
    PointRef z = random_point(m);
    ExtLen dxy = distance(*m, x, y);
    ExtLen dyx = distance(*m, y, x);
    CHECK(dxy == dyx);
    CHECK((dxy == ExtLen(Rat(0))) == (x == y));
    ExtLen dxz = distance(*m, x, z);
    ExtLen dzy = distance(*m, z, y);
    CHECK(dxy <= dxz + dzy);
  }
}

TEST_CASE("dist_to_subgraph examples") {
  Model m = build_model({{"a", false}, {"b", false}},
                        {{"s", {"a", "b"}, ExtLen(Rat(3))}});
  Subgraph g = make_subgraph(m, {PointRef::at_vertex("a")}, {});
  CHECK(dist_to_subgraph(g, make_point(*m, "s", Rat(2), "a")) ==
        ExtLen(Rat(2)));

  Model c = circle2();
  Subgraph gp = make_subgraph(c, {PointRef::at_vertex("v0")}, {});
  PointRef x = make_point(*c, "top", Rat(3, 4), "v0");
  CHECK(dist_to_subgraph(gp, x) == ExtLen(Rat(3, 4)));

  Subgraph whole = whole_curve(c);
  CHECK(dist_to_subgraph(whole, x) == ExtLen(Rat(0)));
}

TEST_CASE("is_cut_set examples") {
  Model seg = segment();
  CHECK(is_cut_set(*seg, {make_point(*seg, "s", Rat(1, 2), "a")}));
  Model c = circle2();
  CHECK(!is_cut_set(*c, {make_point(*c, "top", Rat(1, 2), "v0")}));
  CHECK(is_cut_set(*c, {make_point(*c, "top", Rat(1, 2), "v0"),
                        make_point(*c, "bot", Rat(1, 2), "v0")}));
  Model th = theta();
  CHECK(!is_cut_set(*th, {make_point(*th, "e1", Rat(1, 2), "a")}));
}

TEST_CASE("is_cut_set monotone under subsets") {
  Model th = theta();
  std::vector<PointRef> pts = {make_point(*th, "e1", Rat(1, 2), "a"),
                               make_point(*th, "e2", Rat(1, 3), "a"),
                               PointRef::at_vertex("a")};
  for (unsigned mask = 0; mask < 8; ++mask) {
    std::vector<PointRef> a;
    for (int i = 0; i < 3; ++i)
      if (mask & (1u << i)) a.push_back(pts[i]);
    if (is_cut_set(*th, a)) continue;
    for (unsigned sub = mask; ; sub = (sub - 1) & mask) {
      std::vector<PointRef> b;
      for (int i = 0; i < 3; ++i)
        if (sub & (1u << i)) b.push_back(pts[i]);
      CHECK(!is_cut_set(*th, b));
      if (sub == 0) break;
    }
  }
}

TEST_CASE("valence examples") {
  Model th = theta();
  CHECK(valence(*th, make_point(*th, "e1", Rat(1, 2), "a")) == 2);
  CHECK(valence(*th, PointRef::at_vertex("a")) == 3);
  Model sr = segment_with_rays();
  CHECK(valence(*sr, PointRef::at_vertex("ia")) == 1);
  Model c1 = circle1();
  CHECK(valence(*c1, PointRef::at_vertex("p")) == 2);
}

TEST_CASE("cut-set brute force agreement on small point sets") {
  for (int trial = 0; trial < 20; ++trial) {
    Model m = random_model(false);
    std::vector<PointRef> pts;
    int np = static_cast<int>(rand_int(0, 3));
    for (int i = 0; i < np; ++i) pts.push_back(random_point(m));
    // Independent check: refine at the points, drop them, count components
    // by union-find on the remaining cells.
    DerivedModel r = refine(DerivedModel::trivial(m), pts);
    std::set<std::string> removed;
    for (const PointRef& p : pts) removed.insert(r.locate(p).vertex);
    std::map<std::string, std::string> parent;
    std::function<std::string(std::string)> find = [&](std::string s) {
      while (parent[s] != s) s = parent[s] = parent[parent[s]];
      return s;
    };
    int cells = 0;
    for (const VertexRec& v : r.model.vertices)
      if (!removed.count(v.id)) {
        parent["v" + v.id] = "v" + v.id;
        ++cells;
      }
    for (const EdgeRec& e : r.model.edges) {
      parent["e" + e.id] = "e" + e.id;
      ++cells;
    }
    int merges = 0;
    for (const EdgeRec& e : r.model.edges)
      for (int sl = 0; sl < 2; ++sl)
        if (!removed.count(e.ends[sl])) {
          std::string ra = find("e" + e.id), rb = find("v" + e.ends[sl]);
          if (ra != rb) {
            parent[ra] = rb;
            ++merges;
          }
        }
    bool disconnected = (cells - merges) > 1;
    CHECK(is_cut_set(*m, pts) == disconnected);
  }
}

}  // namespace
