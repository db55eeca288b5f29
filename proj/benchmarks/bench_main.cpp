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

#include <benchmark/benchmark.h>

#include "troplin/linear_system.hpp"

namespace {

using namespace troplin;

std::shared_ptr<const MetricGraphModel> theta_graph() {
  auto m = std::make_shared<MetricGraphModel>();
  m->vertices = {{"a", false}, {"b", false}};
  m->edges = {{"e1", {"a", "b"}, ExtLen(Rat(1))},
              {"e2", {"a", "b"}, ExtLen(Rat(2))},
              {"e3", {"a", "b"}, ExtLen(Rat(3))}};
  m->finalize();
  return m;
}

std::shared_ptr<const MetricGraphModel> circle2() {
  auto m = std::make_shared<MetricGraphModel>();
  m->vertices = {{"p", false}, {"q", false}};
  m->edges = {{"top", {"p", "q"}, ExtLen(Rat(1))},
              {"bot", {"p", "q"}, ExtLen(Rat(1))}};
  m->finalize();
  return m;
}

void BM_Distance(benchmark::State& state) {
  auto m = theta_graph();
  PointRef x = make_point(*m, "e2", Rat(1, 3), "a");
  PointRef y = make_point(*m, "e3", Rat(7, 5), "a");
  for (auto _ : state) {
    benchmark::DoNotOptimize(distance(*m, x, y));
  }
}
BENCHMARK(BM_Distance);

void BM_EnumerateS(benchmark::State& state) {
  auto m = theta_graph();
  Divisor d;
  d.add(PointRef::at_vertex("a"), state.range(0));
  for (auto _ : state) {
    LinSysContext ctx = make_context(m, d);
    benchmark::DoNotOptimize(enumerate_S(ctx).gens.size());
  }
}
BENCHMARK(BM_EnumerateS)->Arg(1)->Arg(2);

void BM_Decompose(benchmark::State& state) {
  auto m = circle2();
  Subgraph src = make_subgraph(m, {PointRef::at_vertex("p")}, {});
  PLFunction f = chip_firing(src, ExtLen(Rat(1, 3)));
  PLFunction g = trop_add(f, trop_scale(Rat(-1, 7), chip_firing(
      make_subgraph(m, {make_point(*m, "top", Rat(1, 2), "p")}, {}),
      ExtLen(Rat(1, 4)))));
  for (auto _ : state) {
    benchmark::DoNotOptimize(decompose_chip_firing(g).terms.size());
  }
}
BENCHMARK(BM_Decompose);

}  // namespace

BENCHMARK_MAIN();
