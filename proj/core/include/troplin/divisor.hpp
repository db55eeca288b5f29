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

#ifndef TROPLIN_DIVISOR_HPP_
#define TROPLIN_DIVISOR_HPP_

#include <map>
#include <vector>

#include "troplin/metric_graph.hpp"

namespace troplin {

// A finite formal integer combination of points of the base curve.
class Divisor {
 public:
  std::map<PointRef, long long> coeffs;  // nonzero entries only

  void add(const PointRef& p, long long c) {
    if (c == 0) return;
    auto [it, fresh] = coeffs.emplace(p, c);
    if (!fresh && (it->second += c) == 0) coeffs.erase(it);
  }

  long long at(const PointRef& p) const {
    auto it = coeffs.find(p);
    return it == coeffs.end() ? 0 : it->second;
  }

  long long degree() const {
    long long d = 0;
    for (const auto& [p, c] : coeffs) d += c;
    return d;
  }

  bool effective() const {
    for (const auto& [p, c] : coeffs)
      if (c < 0) return false;
    return true;
  }

  std::vector<PointRef> support() const {
    std::vector<PointRef> s;
    for (const auto& [p, c] : coeffs) s.push_back(p);
    return s;
  }

  friend Divisor operator+(const Divisor& a, const Divisor& b) {
    Divisor r = a;
    for (const auto& [p, c] : b.coeffs) r.add(p, c);
    return r;
  }

  friend bool operator==(const Divisor& a, const Divisor& b) {
    return a.coeffs == b.coeffs;
  }
  friend bool operator!=(const Divisor& a, const Divisor& b) {
    return !(a == b);
  }
};

}  // namespace troplin

#endif  // TROPLIN_DIVISOR_HPP_
