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

#include "sdc/risk.h"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <random>
#include <string>
#include <utility>
#include <vector>

#include "absl/container/flat_hash_map.h"
#include "absl/status/status.h"
#include "absl/strings/str_cat.h"
#include "sdc/status_macros.h"

namespace sdc {
namespace {

absl::StatusOr<std::vector<uint32_t>> ColumnCodes(const Dataset& ds,
                                                  size_t attr) {
  absl::flat_hash_map<CellValue, uint32_t> intern;
  std::vector<uint32_t> codes;
  codes.reserve(ds.size());
  for (size_t i = 0; i < ds.size(); ++i) {
    const CellValue& v = ds.cell(i, attr);
    if (v.is_missing()) {
      return absl::FailedPreconditionError(
          absl::StrCat("missing value in attribute '",
                       ds.schema().attribute(attr).name, "' at record ", i));
    }
    auto [it, inserted] =
        intern.try_emplace(v, static_cast<uint32_t>(intern.size()));
    codes.push_back(it->second);
  }
  return codes;
}

// Splits every class of `ids` by `codes`, renumbering by first occurrence.
void Refine(std::vector<uint32_t>& ids, const std::vector<uint32_t>& codes) {
  absl::flat_hash_map<uint64_t, uint32_t> next;
  for (size_t i = 0; i < ids.size(); ++i) {
    const uint64_t key = (static_cast<uint64_t>(ids[i]) << 32) | codes[i];
    auto [it, inserted] =
        next.try_emplace(key, static_cast<uint32_t>(next.size()));
    ids[i] = it->second;
  }
}

RiskReport ReportFromIds(const std::vector<uint32_t>& ids) {
  std::vector<size_t> sizes;
  for (uint32_t id : ids) {
    if (id >= sizes.size()) sizes.resize(id + 1, 0);
    ++sizes[id];
  }
  RiskReport report;
  report.n = ids.size();
  report.n_classes = sizes.size();
  size_t singletons = 0;
  for (size_t s : sizes) {
    ++report.class_size_histogram[s];
    if (s == 1) ++singletons;
  }
  if (report.n > 0) {
    const double n = static_cast<double>(report.n);
    report.unicity = static_cast<double>(singletons) / n;
    report.unequivocal_rate = report.unicity;
    report.random_correct_rate = static_cast<double>(report.n_classes) / n;
  }
  return report;
}

}  // namespace

absl::StatusOr<std::vector<uint32_t>> ClassIds(const Dataset& ds,
                                               absl::Span<const size_t> attrs) {
  if (attrs.empty()) {
    return absl::InvalidArgumentError("attribute list is empty");
  }
  std::vector<uint32_t> ids(ds.size(), 0);
  for (size_t attr : attrs) {
    SDC_ASSIGN_OR_RETURN(std::vector<uint32_t> codes, ColumnCodes(ds, attr));
    Refine(ids, codes);
  }
  return ids;
}

absl::StatusOr<EquivalenceClassPartition> EquivalenceClasses(
    const Dataset& ds, const std::vector<std::string>& attrs) {
  SDC_ASSIGN_OR_RETURN(std::vector<size_t> idx,
                       ResolveAttributes(ds.schema(), attrs));
  SDC_ASSIGN_OR_RETURN(std::vector<uint32_t> ids, ClassIds(ds, idx));
  EquivalenceClassPartition partition;
  partition.key_attrs = attrs;
  for (size_t i = 0; i < ids.size(); ++i) {
    if (ids[i] >= partition.classes.size()) {
      partition.classes.resize(ids[i] + 1);
    }
    partition.classes[ids[i]].push_back(i);
  }
  return partition;
}

RiskReport RiskReportFromPartition(const EquivalenceClassPartition& partition,
                                   size_t n) {
  std::vector<uint32_t> ids(n, 0);
  for (size_t c = 0; c < partition.classes.size(); ++c) {
    for (size_t i : partition.classes[c]) ids[i] = static_cast<uint32_t>(c);
  }
  return ReportFromIds(ids);
}

absl::StatusOr<RiskReport> ComputeRiskReport(
    const Dataset& ds, const std::vector<std::string>& attrs) {
  SDC_ASSIGN_OR_RETURN(std::vector<size_t> idx,
                       ResolveAttributes(ds.schema(), attrs));
  SDC_ASSIGN_OR_RETURN(std::vector<uint32_t> ids, ClassIds(ds, idx));
  return ReportFromIds(ids);
}

absl::StatusOr<std::vector<RiskCurvePoint>> RiskCurve(
    const Dataset& ds, const std::vector<std::string>& attr_order) {
  SDC_ASSIGN_OR_RETURN(std::vector<size_t> idx,
                       ResolveAttributes(ds.schema(), attr_order));
  std::vector<RiskCurvePoint> curve;
  std::vector<uint32_t> ids(ds.size(), 0);
  for (size_t i = 0; i < idx.size(); ++i) {
    SDC_ASSIGN_OR_RETURN(std::vector<uint32_t> codes, ColumnCodes(ds, idx[i]));
    Refine(ids, codes);
    RiskCurvePoint point;
    point.prefix.assign(attr_order.begin(), attr_order.begin() + i + 1);
    point.report = ReportFromIds(ids);
    curve.push_back(std::move(point));
  }
  return curve;
}

namespace {

absl::StatusOr<SamplingTrial> TrialFromIds(const std::vector<uint32_t>& ids,
                                           absl::Span<const size_t> sample) {
  if (sample.empty()) return absl::InvalidArgumentError("empty sample");
  size_t num_classes = 0;
  for (uint32_t id : ids) num_classes = std::max<size_t>(num_classes, id + 1);
  std::vector<uint32_t> population(num_classes, 0);
  for (uint32_t id : ids) ++population[id];
  std::vector<uint32_t> in_sample(num_classes, 0);
  std::vector<uint8_t> seen(ids.size(), 0);
  for (size_t i : sample) {
    if (i >= ids.size()) {
      return absl::OutOfRangeError(absl::StrCat("sample index ", i));
    }
    if (seen[i]++) {
      return absl::InvalidArgumentError(
          absl::StrCat("record ", i, " sampled twice"));
    }
    ++in_sample[ids[i]];
  }
  size_t sample_unique = 0;
  size_t population_unique = 0;
  for (size_t i : sample) {
    if (in_sample[ids[i]] == 1) ++sample_unique;
    if (population[ids[i]] == 1) ++population_unique;
  }
  SamplingTrial trial;
  trial.sample_size = sample.size();
  const double m = static_cast<double>(sample.size());
  trial.sample_unicity = static_cast<double>(sample_unique) / m;
  trial.population_unique_fraction_in_sample =
      static_cast<double>(population_unique) / m;
  return trial;
}

}  // namespace

absl::StatusOr<SamplingTrial> SampleUniqueness(
    const Dataset& ds, const std::vector<std::string>& attrs,
    absl::Span<const size_t> sample) {
  SDC_ASSIGN_OR_RETURN(std::vector<size_t> idx,
                       ResolveAttributes(ds.schema(), attrs));
  SDC_ASSIGN_OR_RETURN(std::vector<uint32_t> ids, ClassIds(ds, idx));
  return TrialFromIds(ids, sample);
}

absl::StatusOr<std::vector<SamplingTrial>> SamplingUnicity(
    const Dataset& ds, const std::vector<std::string>& attrs, double fraction,
    int trials, uint64_t seed) {
  if (!(fraction > 0 && fraction <= 1)) {
    return absl::InvalidArgumentError(
        absl::StrCat("sample fraction ", fraction, " is outside (0, 1]"));
  }
  if (trials < 1) {
    return absl::InvalidArgumentError("trials must be positive");
  }
  const size_t m = static_cast<size_t>(
      std::llround(fraction * static_cast<double>(ds.size())));
  if (m < 2) {
    return absl::InvalidArgumentError(absl::StrCat(
        "sample of ", m, " records is degenerate; need at least 2"));
  }
  SDC_ASSIGN_OR_RETURN(std::vector<size_t> idx,
                       ResolveAttributes(ds.schema(), attrs));
  SDC_ASSIGN_OR_RETURN(std::vector<uint32_t> ids, ClassIds(ds, idx));
  std::vector<size_t> all(ds.size());
  std::iota(all.begin(), all.end(), size_t{0});
  std::vector<SamplingTrial> out;
  std::vector<size_t> sample;
  for (int t = 0; t < trials; ++t) {
    std::mt19937_64 rng(seed + static_cast<uint64_t>(t));
    sample.clear();
    std::sample(all.begin(), all.end(), std::back_inserter(sample), m, rng);
    SDC_ASSIGN_OR_RETURN(SamplingTrial trial, TrialFromIds(ids, sample));
    out.push_back(trial);
  }
  return out;
}

}  // namespace sdc
