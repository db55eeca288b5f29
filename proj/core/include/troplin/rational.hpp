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

#ifndef TROPLIN_RATIONAL_HPP_
#define TROPLIN_RATIONAL_HPP_

#include <boost/multiprecision/cpp_int.hpp>

#include <optional>
#include <stdexcept>
#include <string>

namespace troplin {

// All coordinates, lengths and function values are exact rationals.
// No floating point is used anywhere in the library.
using Rat = boost::multiprecision::cpp_rational;
using Int = boost::multiprecision::cpp_int;

class Error : public std::runtime_error {
 public:
  Error(std::string code, const std::string& what)
      : std::runtime_error(what), code_(std::move(code)) {}
  const std::string& code() const { return code_; }

 private:
  std::string code_;
};

inline Rat parse_rat(const std::string& s) {
  auto slash = s.find('/');
  try {
    if (slash == std::string::npos) return Rat(Int(s));
    Int num(s.substr(0, slash));
    Int den(s.substr(slash + 1));
    if (den <= 0) throw Error("bad rational", "nonpositive denominator: " + s);
    return Rat(num, den);
  } catch (const Error&) {
    throw;
  } catch (const std::exception&) {
    throw Error("bad rational", "malformed rational: " + s);
  }
}

inline std::string format_rat(const Rat& r) {
  if (denominator(r) == 1) return numerator(r).str();
  return numerator(r).str() + "/" + denominator(r).str();
}

// A length or distance: a positive rational or +infinity.  Also reused for
// extended values where the sign convention is handled by the caller.
struct ExtLen {
  bool infinite = false;
  Rat value;  // meaningful only when !infinite

  ExtLen() = default;
  ExtLen(const Rat& v) : infinite(false), value(v) {}  // NOLINT(runtime/explicit)
  static ExtLen inf() {
    ExtLen e;
    e.infinite = true;
    return e;
  }

  bool is_finite() const { return !infinite; }

  friend bool operator==(const ExtLen& a, const ExtLen& b) {
    if (a.infinite || b.infinite) return a.infinite == b.infinite;
    return a.value == b.value;
  }
  friend bool operator!=(const ExtLen& a, const ExtLen& b) { return !(a == b); }
  friend bool operator<(const ExtLen& a, const ExtLen& b) {
    if (a.infinite) return false;
    if (b.infinite) return true;
    return a.value < b.value;
  }
  friend bool operator<=(const ExtLen& a, const ExtLen& b) { return !(b < a); }

  // Saturating addition: x + inf = inf.
  friend ExtLen operator+(const ExtLen& a, const ExtLen& b) {
    if (a.infinite || b.infinite) return inf();
    return ExtLen(a.value + b.value);
  }

  friend ExtLen min(const ExtLen& a, const ExtLen& b) { return a < b ? a : b; }
};

inline ExtLen parse_extlen(const std::string& s) {
  if (s == "inf" || s == "+inf") return ExtLen::inf();
  return ExtLen(parse_rat(s));
}

inline std::string format_extlen(const ExtLen& e) {
  return e.infinite ? "inf" : format_rat(e.value);
}

}  // namespace troplin

#endif  // TROPLIN_RATIONAL_HPP_
