//
// Copyright 2026 The SDC Toolkit Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.
//

#ifndef SDC_GENERATOR_H_
#define SDC_GENERATOR_H_

#include <cstdint>
#include <map>
#include <memory>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "absl/status/status.h"
#include "absl/status/statusor.h"
#include "absl/strings/string_view.h"
#include "sdc/dataset.h"
#include "sdc/schema.h"

namespace sdc {

struct Marginal {
  enum class Type {
    kUniform,     // numeric; bounds default to the attribute's
    kNormal,      // numeric; clamped to the attribute bounds
    kZipfBins,    // numeric; bin b has weight (b+1)^-s, uniform inside
    kTable,       // categorical; explicit probabilities
    kZipf,        // categorical; domain value i has weight (i+1)^-s
    kSequence,    // categorical; prefix + zero-padded record number
    kDifference,  // numeric; minuend - subtrahend, computed last
  };
  Type type = Type::kUniform;
  std::optional<double> min;
  std::optional<double> max;
  double mu = 0;
  double sigma = 1;
  double s = 1;
  int n_bins = 1;
  // Round numeric draws to integers. Defaults to true for dates.
  bool integer = false;
  std::vector<std::pair<std::string, double>> table;
  std::string prefix;
  int width = 0;
  std::string minuend;
  std::string subtrahend;
};

struct RankCorrelation {
  std::string a;
  std::string b;
  double rho = 0;
};

struct GeneratorSpec {
  std::shared_ptr<const Schema> schema;
  uint64_t n_records = 0;
  uint64_t seed = 0;
  // Keyed by attribute name; every schema attribute needs one.
  std::map<std::string, Marginal> marginals;
  // (lower, upper): draws are repeated until lower <= upper.
  std::vector<std::pair<std::string, std::string>> ordered_pairs;
  std::vector<RankCorrelation> correlations;
};

// `base_dir` resolves a "schema" given as a relative path.
absl::StatusOr<GeneratorSpec> ParseGeneratorSpec(absl::string_view json_text,
                                                 const std::string& base_dir);

absl::Status ValidateGeneratorSpec(const GeneratorSpec& spec);

// Deterministic in (spec, seed). Correlation targets reorder the second
// attribute of each pair against normal scores of the first.
absl::StatusOr<Dataset> GenerateSynthetic(const GeneratorSpec& spec);

}  // namespace sdc

#endif  // SDC_GENERATOR_H_
