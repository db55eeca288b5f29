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

#include "helpers.hpp"

namespace {

using namespace troplin_test;

Model segment3() {
  return build_model({{"a", false}, {"b", false}},
                     {{"s", {"a", "b"}, ExtLen(Rat(3))}});
}

// f = -min(1, d(x, a)) on the length-3 segment.
PLFunction tent_on_segment3(const Model& m) {
  return chip_firing(make_subgraph(m, {PointRef::at_vertex("a")}, {}),
                     ExtLen(Rat(1)));
}

TEST_CASE("eval: constants and interpolation") {
  Model m = segment3();
  PLFunction c5 = PLFunction::constant(m, Rat(5));
  CHECK(c5.eval(PointRef::at_vertex("b")) == ExtVal(Rat(5)));
  CHECK(c5.eval(make_point(*m, "s", Rat(7, 5), "a")) == ExtVal(Rat(5)));

  PLFunction f = tent_on_segment3(m);
  CHECK(f.eval(PointRef::at_vertex("a")) == ExtVal(Rat(0)));
  CHECK(f.eval(make_point(*m, "s", Rat(1, 2), "a")) == ExtVal(Rat(-1, 2)));
  CHECK(f.eval(PointRef::at_vertex("b")) == ExtVal(Rat(-1)));
}

TEST_CASE("eval: +inf at infinity with positive slope toward it") {
  Model m = segment_with_rays();
  // f = x on the ray at a: slope +1 toward infinity.
  DerivedModel triv = DerivedModel::trivial(m);
  std::map<std::string, ExtVal> vals = {{"a", ExtVal(Rat(0))},
                                        {"b", ExtVal(Rat(0))}};
  PLFunction f = make_plfunction(triv, vals, {{"ra", 1}, {"rb", 0}});
  CHECK(f.eval(PointRef::at_vertex("ia")) == ExtVal::pos_inf());
  CHECK(f.eval(PointRef::at_vertex("ib")) == ExtVal(Rat(0)));
  CHECK(f.eval(make_point(*m, "ra", Rat(42), "a")) == ExtVal(Rat(42)));
}

TEST_CASE("ord and principal divisor of a tent on the segment") {
  Model m = segment3();
  PLFunction f = tent_on_segment3(m);
  PointRef brk = make_point(*m, "s", Rat(1), "a");
  CHECK(ord(f, PointRef::at_vertex("a")) == -1);
  CHECK(ord(f, brk) == 1);
  CHECK(ord(f, make_point(*m, "s", Rat(1, 2), "a")) == 0);
  CHECK(ord(f, PointRef::at_vertex("b")) == 0);

  Divisor d = principal_divisor(f);
  CHECK(d.degree() == 0);
  CHECK(d.at(PointRef::at_vertex("a")) == -1);
  CHECK(d.at(brk) == 1);
  CHECK(d.coeffs.size() == 2);
}

TEST_CASE("ord on the circle tent: -2 at the source") {
  Model m = circle2();
  PLFunction f = chip_firing(
      make_subgraph(m, {PointRef::at_vertex("v0")}, {}), ExtLen(Rat(1, 2)));
  CHECK(ord(f, PointRef::at_vertex("v0")) == -2);
  Divisor d = principal_divisor(f);
  CHECK(d.degree() == 0);
  CHECK(d.at(PointRef::at_vertex("v0")) == -2);
  CHECK(d.at(make_point(*m, "top", Rat(1, 2), "v0")) == 1);
  CHECK(d.at(make_point(*m, "bot", Rat(1, 2), "v0")) == 1);
}

TEST_CASE("principal divisor of a constant is zero") {
  Model m = theta();
  CHECK(principal_divisor(PLFunction::constant(m, Rat(7))).coeffs.empty());
  CHECK_THROWS_AS(principal_divisor(PLFunction::constant_minus_inf(m)),
                  Error);
}

TEST_CASE("tropical operations") {
  Model m = segment();
  PLFunction f = tent_on_segment3(m);  // works on unit segment too
  CHECK(equal_functions(trop_add(f, f), f));
  CHECK(equal_functions(trop_scale(Rat(0), f), f));

  // max(-x, x-1) on [0,1]: breakpoint 1/2, value -1/2.
  DerivedModel triv = DerivedModel::trivial(m);
  PLFunction negx = make_plfunction(
      triv, {{"a", ExtVal(Rat(0))}, {"b", ExtVal(Rat(-1))}}, {});
  PLFunction xm1 = make_plfunction(
      triv, {{"a", ExtVal(Rat(-1))}, {"b", ExtVal(Rat(0))}}, {});
  PLFunction mx = trop_add(negx, xm1);
  CHECK(mx.eval(make_point(*m, "s", Rat(1, 2), "a")) == ExtVal(Rat(-1, 2)));
  CHECK(mx.eval(make_point(*m, "s", Rat(1, 4), "a")) == ExtVal(Rat(-1, 4)));
  CHECK(mx.eval(make_point(*m, "s", Rat(3, 4), "a")) == ExtVal(Rat(-1, 4)));
  Divisor d = principal_divisor(mx);
  CHECK(d.at(make_point(*m, "s", Rat(1, 2), "a")) == 2);
}

TEST_CASE("chip firing: whole curve and simple sources") {
  Model m = segment3();
  CHECK(equal_functions(chip_firing(whole_curve(m), ExtLen(Rat(5))),
                        PLFunction::constant(m, Rat(0))));
  PLFunction f = tent_on_segment3(m);
  CHECK(f.eval(PointRef::at_vertex("a")) == ExtVal(Rat(0)));
  CHECK(f.eval(make_point(*m, "s", Rat(2), "a")) == ExtVal(Rat(-1)));
  CHECK(f.eval(PointRef::at_vertex("b")) == ExtVal(Rat(-1)));
}

TEST_CASE("chip firing with infinite reach on an unbounded edge") {
  Model m = build_model({{"a", false}, {"i", true}},
                        {{"r", {"a", "i"}, ExtLen::inf()}});
  PLFunction f = chip_firing(make_subgraph(m, {PointRef::at_vertex("a")}, {}),
                             ExtLen::inf());
  CHECK(f.eval(make_point(*m, "r", Rat(3), "a")) == ExtVal(Rat(-3)));
  CHECK(f.eval(PointRef::at_vertex("i")) == ExtVal::neg_inf());
}

TEST_CASE("chip firing rejects bad sources") {
  Model m = segment_with_rays();
  Subgraph empty;
  empty.ref = DerivedModel::trivial(m);
  CHECK_THROWS_AS(chip_firing(empty, ExtLen(Rat(1))), Error);
  Subgraph tip = make_subgraph(m, {PointRef::at_vertex("ia")}, {});
  CHECK_THROWS_AS(chip_firing(tip, ExtLen(Rat(1))), Error);
  Subgraph ok = make_subgraph(m, {PointRef::at_vertex("a")}, {});
  CHECK_THROWS_AS(chip_firing(ok, ExtLen(Rat(0))), Error);
}

TEST_CASE("decompose: trivial cases") {
  Model m = theta();
  ChipFiringDecomposition dec =
      decompose_chip_firing(PLFunction::constant(m, Rat(9, 2)));
  CHECK(dec.constant == Rat(9, 2));
  CHECK(dec.terms.empty());
  CHECK_THROWS_AS(decompose_chip_firing(PLFunction::constant_minus_inf(m)),
                  Error);
}

TEST_CASE("decompose: a single move reconstructs itself") {
  Model m = segment3();
  PLFunction f = tent_on_segment3(m);
  ChipFiringDecomposition dec = decompose_chip_firing(f);
  CHECK(dec.constant == Rat(0));
  REQUIRE(dec.terms.size() == 1);
  CHECK(dec.terms[0].second == 1);
  CHECK(dec.terms[0].first.reach == ExtLen(Rat(1)));
  CHECK(equal_functions(realize(m, dec), f));

  Model c = circle2();
  PLFunction tent = chip_firing(
      make_subgraph(c, {PointRef::at_vertex("v0")}, {}), ExtLen(Rat(1, 2)));
  ChipFiringDecomposition dc = decompose_chip_firing(tent);
  CHECK(dc.constant == Rat(0));
  REQUIRE(dc.terms.size() == 1);
  CHECK(dc.terms[0].first.reach == ExtLen(Rat(1, 2)));
  CHECK(equal_functions(realize(c, dc), tent));
}

TEST_CASE("decompose round-trip on random functions") {
  for (int trial = 0; trial < 60; ++trial) {
    Model m = random_model(trial % 2 == 1);
    PLFunction f = random_function(m, static_cast<int>(rand_int(1, 3)));
    ChipFiringDecomposition dec = decompose_chip_firing(f);
    for (const auto& [move, coeff] : dec.terms) CHECK(coeff > 0);
    CHECK(equal_functions(realize(m, dec), f));
  }
}

TEST_CASE("principal divisors of random functions have degree zero") {
  for (int trial = 0; trial < 40; ++trial) {
    Model m = random_model(trial % 2 == 0);
    PLFunction f = random_function(m, static_cast<int>(rand_int(1, 3)));
    Divisor d = principal_divisor(f);
    CHECK(d.degree() == 0);
    CHECK(principal_divisor(trop_scale(Rat(17, 3), f)) == d);
    // ord vanishes off the stored breakpoints.
    for (const EdgeRec& e : m->edges) {
      if (e.length.infinite) continue;
      PointRef probe = make_point(*m, e.id, e.length.value * Rat(13, 29),
                                  m->origin(e));
      if (d.at(probe) == 0) CHECK(ord(f, probe) == 0);
    }
  }
}

TEST_CASE("scale_int and add_functions basics") {
  Model m = segment3();
  PLFunction f = tent_on_segment3(m);
  PLFunction g = scale_int(2, f);
  CHECK(g.eval(PointRef::at_vertex("b")) == ExtVal(Rat(-2)));
  PLFunction z = add_functions(f, negate(f));
  CHECK(equal_functions(z, PLFunction::constant(m, Rat(0))));
}

TEST_CASE("conflicting infinities in a pointwise sum are rejected") {
  Model m = build_model({{"a", false}, {"i", true}},
                        {{"r", {"a", "i"}, ExtLen::inf()}});
  DerivedModel triv = DerivedModel::trivial(m);
  PLFunction up = make_plfunction(triv, {{"a", ExtVal(Rat(0))}}, {{"r", 1}});
  PLFunction down = make_plfunction(triv, {{"a", ExtVal(Rat(0))}},
                                    {{"r", -1}});
  CHECK_THROWS_AS(add_functions(up, down), Error);
  // With cancellation allowed the finite continuation is used.
  PLFunction s = add_functions(up, down, true);
  CHECK(s.eval(PointRef::at_vertex("i")) == ExtVal(Rat(0)));
}

}  // namespace
