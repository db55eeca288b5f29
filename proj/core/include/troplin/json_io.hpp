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

#ifndef TROPLIN_JSON_IO_HPP_
#define TROPLIN_JSON_IO_HPP_

#include <json.hpp>

#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "troplin/linear_system.hpp"

namespace troplin {

using Json = nlohmann::json;

// One problem in a validation report; `path` locates the offending input.
struct ValidationError {
  std::string code;
  std::string path;
  std::string message;
};

// Carries every validation problem found, not just the first.
class ValidationFailure : public Error {
 public:
  std::vector<ValidationError> items;

  explicit ValidationFailure(std::vector<ValidationError> its)
      : Error("invalid input", summarize(its)), items(std::move(its)) {}

 private:
  static std::string summarize(const std::vector<ValidationError>& its);
};

// Parsers.  The `path` argument only labels error locations.  Each throws
// ValidationFailure listing all problems found in its input.
std::shared_ptr<const MetricGraphModel> parse_curve_json(
    const Json& j, const std::string& path);
Divisor parse_divisor_json(const Json& j, const MetricGraphModel& base,
                           const std::string& path);
PointRef parse_point_json(const Json& j, const MetricGraphModel& base,
                          const std::string& path);
PLFunction parse_function_json(const Json& j,
                               std::shared_ptr<const MetricGraphModel> base,
                               const std::string& path);
// The group's working model is parsed from the document itself; when `base`
// is given the model must match it structurally and `base` becomes the
// working model pointer.
GroupAction parse_group_json(const Json& j,
                             std::shared_ptr<const MetricGraphModel> base,
                             const std::string& path);

// Serializers; output is deterministic, rationals in lowest terms.
Json curve_to_json(const MetricGraphModel& m);
Json point_to_json(const MetricGraphModel& base, const PointRef& p);
Json divisor_to_json(const MetricGraphModel& base, const Divisor& d);
Json function_to_json(const PLFunction& f);
Json subgraph_to_json(const Subgraph& g);
Json decomposition_to_json(const ChipFiringDecomposition& dec);
Json quotient_to_json(const QuotientResult& q);
Json generators_to_json(const GeneratorSet& g);
Json combination_to_json(const TropicalCombination& c);

// File paths of one problem instance.
struct BundlePaths {
  std::string curve;
  std::string divisor;
  std::string group;
  std::vector<std::string> functions;
};

// A fully validated problem instance.
struct ProblemBundle {
  std::shared_ptr<const MetricGraphModel> curve;
  std::optional<Divisor> divisor;
  std::optional<GroupAction> group;
  std::vector<PLFunction> functions;

  LinSysContext context() const;
};

// Reads and validates all listed files, collecting every error.
ProblemBundle parse_bundle(const BundlePaths& paths);

// The command-line entry point: exit 0 on success, 2 on invalid input,
// 3 on a membership-precondition failure.
int run_cli(int argc, const char* const* argv);

}  // namespace troplin

#endif  // TROPLIN_JSON_IO_HPP_
