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

#ifndef TROPLIN_PLFUNCTION_HPP_
#define TROPLIN_PLFUNCTION_HPP_

#include <map>
#include <memory>
#include <string>
#include <vector>

#include "troplin/divisor.hpp"
#include "troplin/metric_graph.hpp"

namespace troplin {

// A value in Q together with the two infinite symbols.
struct ExtVal {
  int cls = 0;  // -1, 0, +1 for -inf, finite, +inf
  Rat v;

  ExtVal() = default;
  ExtVal(const Rat& r) : cls(0), v(r) {}  // NOLINT(runtime/explicit)
  static ExtVal pos_inf() { return ExtVal(+1); }
  static ExtVal neg_inf() { return ExtVal(-1); }
  bool finite() const { return cls == 0; }

  friend bool operator==(const ExtVal& a, const ExtVal& b) {
    if (a.cls != b.cls) return false;
    return a.cls != 0 || a.v == b.v;
  }
  friend bool operator!=(const ExtVal& a, const ExtVal& b) { return !(a == b); }
  friend bool operator<(const ExtVal& a, const ExtVal& b) {
    if (a.cls != b.cls) return a.cls < b.cls;
    return a.cls == 0 && a.v < b.v;
  }
  friend ExtVal max(const ExtVal& a, const ExtVal& b) { return a < b ? b : a; }

 private:
  explicit ExtVal(int c) : cls(c) {}
};

// A piecewise linear function with integer slopes on a refinement of the
// base curve.  Values are stored per refinement vertex; each edge carries
// the slope measured from its canonical origin.  Values are finite at all
// finite vertices; at an at_infinity vertex the value follows the sign of
// the slope toward it.
class PLFunction {
 public:
  DerivedModel ref;
  std::map<std::string, ExtVal> values;
  std::map<std::string, long long> slopes;
  bool minus_inf = false;  // the constant -infinity function

  std::shared_ptr<const MetricGraphModel> base() const { return ref.base; }

  static PLFunction constant(std::shared_ptr<const MetricGraphModel> base,
                             const Rat& c);
  static PLFunction constant_minus_inf(
      std::shared_ptr<const MetricGraphModel> base);

  ExtVal eval(const PointRef& base_pt) const;
};

// Builds a function from finite-vertex values and ray slopes on a given
// refinement; finite-edge slopes are derived from the values and checked
// for integrality, values at infinity follow from the ray slopes.
PLFunction make_plfunction(const DerivedModel& ref,
                           const std::map<std::string, ExtVal>& finite_values,
                           const std::map<std::string, long long>& ray_slopes);

// Re-expresses f on a refinement whose vertex set contains every breakpoint
// of f (f is linear on each edge of `target`).
PLFunction transport(const PLFunction& f, const DerivedModel& target);

// A common refinement of the two functions' models (also containing every
// base vertex).
DerivedModel common_refinement(const PLFunction& f, const PLFunction& g);

long long ord(const PLFunction& f, const PointRef& base_pt);
Divisor principal_divisor(const PLFunction& f);

PLFunction trop_add(const PLFunction& f, const PLFunction& g);  // max
PLFunction trop_scale(const Rat& c, const PLFunction& f);       // f + c

// Pointwise sum.  At a point at infinity where the slope sum vanishes but
// the operands take opposite infinite values the sum is rejected unless
// `allow_cancellation` is set, in which case the finite linear continuation
// is used.
PLFunction add_functions(const PLFunction& f, const PLFunction& g,
                         bool allow_cancellation = false);
PLFunction negate(const PLFunction& f);
PLFunction scale_int(long long k, const PLFunction& f);

bool equal_functions(const PLFunction& f, const PLFunction& g);

// Representative of f with breakpoints and base vertices only, normalized
// deterministically; equal functions canonicalize identically.
PLFunction canonical_form(const PLFunction& f);

// f minus its value at the normalization base point (the first vertex id in
// sort order with a finite value); representatives modulo tropical scaling.
PLFunction normalize_mod_scaling(const PLFunction& f);

}  // namespace troplin

#endif  // TROPLIN_PLFUNCTION_HPP_
