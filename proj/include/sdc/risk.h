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

#ifndef SDC_RISK_H_
#define SDC_RISK_H_

#include <cstddef>
#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include "absl/status/statusor.h"
#include "absl/types/span.h"
#include "sdc/dataset.h"

namespace sdc {

// Records grouped by exact equality on `key_attrs`. Classes are ordered by
// their smallest member and members are ascending, so a partition has one
// canonical representation.
struct EquivalenceClassPartition {
  std::vector<std::vector<size_t>> classes;
  std::vector<std::string> key_attrs;
};

// Reidentification risk of an attacker who knows each target's values on a
// set of attributes.
struct RiskReport {
  size_t n = 0;
  size_t n_classes = 0;
  // Fraction of records alone in their class.
  double unicity = 0;
  // Same as unicity: a singleton match is an unequivocal reidentification.
  double unequivocal_rate = 0;
  // Expected success of one uniform guess inside the matching class,
  // averaged over all records: n_classes / n.
  double random_correct_rate = 0;
  // class size -> number of classes of that size.
  std::map<size_t, size_t> class_size_histogram;
};

// Grouping is by structural cell equality (intervals by their bounds, value
// sets by membership). Identifier attributes and unknown names are rejected,
// as are missing cells.
absl::StatusOr<EquivalenceClassPartition> EquivalenceClasses(
    const Dataset& ds, const std::vector<std::string>& attrs);

// Dense class id per record, numbered by first occurrence. Shared by the
// partition and report builders.
absl::StatusOr<std::vector<uint32_t>> ClassIds(const Dataset& ds,
                                               absl::Span<const size_t> attrs);

RiskReport RiskReportFromPartition(const EquivalenceClassPartition& partition,
                                   size_t n);

absl::StatusOr<RiskReport> ComputeRiskReport(
    const Dataset& ds, const std::vector<std::string>& attrs);

struct RiskCurvePoint {
  std::vector<std::string> prefix;
  RiskReport report;
};

// One report per prefix attr_order[0..i], i = 1..len, in prefix order.
absl::StatusOr<std::vector<RiskCurvePoint>> RiskCurve(
    const Dataset& ds, const std::vector<std::string>& attr_order);

struct SamplingTrial {
  size_t sample_size = 0;
  // Fraction of sampled records that are unique within the sample.
  double sample_unicity = 0;
  // Fraction of sampled records that are unique in the whole dataset.
  double population_unique_fraction_in_sample = 0;
};

// Sample-vs-population uniqueness for an explicit sample of record indices.
absl::StatusOr<SamplingTrial> SampleUniqueness(
    const Dataset& ds, const std::vector<std::string>& attrs,
    absl::Span<const size_t> sample);

// Draws `trials` simple random samples without replacement of
// round(fraction * N) records; trial i uses seed + i.
absl::StatusOr<std::vector<SamplingTrial>> SamplingUnicity(
    const Dataset& ds, const std::vector<std::string>& attrs, double fraction,
    int trials, uint64_t seed);

}  // namespace sdc

#endif  // SDC_RISK_H_
