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

#include "sdc/info_loss.h"

#include <cmath>
#include <string>
#include <vector>

#include "absl/container/flat_hash_set.h"
#include "absl/status/status.h"
#include "absl/strings/str_cat.h"
#include "sdc/distance.h"
#include "sdc/status_macros.h"

namespace sdc {
namespace {

double Spread(size_t members, size_t domain_size) {
  if (domain_size <= 1) return 0.0;
  return static_cast<double>(members - 1) /
         static_cast<double>(domain_size - 1);
}

}  // namespace

absl::StatusOr<double> CellLoss(const CellValue& original,
                                const CellValue& released,
                                const AttributeSchema& attr,
                                std::optional<size_t> domain_size) {
  if (original.is_generalized()) {
    return absl::InvalidArgumentError(absl::StrCat(
        "original value of '", attr.name, "' must be concrete, got ",
        original.DebugString()));
  }
  SDC_ASSIGN_OR_RETURN(bool contained,
                       released.is_generalized()
                           ? GeneralizedContains(released, original, attr)
                           : absl::StatusOr<bool>(true));
  if (!contained) {
    return absl::InternalError(absl::StrCat(
        "released value ", released.DebugString(), " of '", attr.name,
        "' does not contain the original ", original.DebugString()));
  }
  if (attr.is_numeric()) {
    // ValueDistance uses the same midpoint representative.
    return ValueDistance(original, released, attr);
  }
  const size_t domain = domain_size.value_or(
      attr.has_hierarchy() ? attr.hierarchy->leaves().size()
                           : attr.domain.size());
  if (released.is_value_set()) {
    return Spread(released.value_set().size(), domain);
  }
  if (released.is_node()) {
    return Spread(static_cast<size_t>(attr.hierarchy->LeavesUnder(released.node())),
                  domain);
  }
  if (!released.is_category() || !original.is_category()) {
    return absl::InvalidArgumentError(absl::StrCat(
        "incompatible cells for '", attr.name, "': ", original.DebugString(),
        " vs ", released.DebugString()));
  }
  return original.category() == released.category() ? 0.0 : 1.0;
}

absl::StatusOr<LossReport> InformationLoss(const Dataset& original,
                                           const Dataset& released) {
  if (original.size() != released.size()) {
    return absl::InvalidArgumentError(absl::StrCat(
        "record counts differ: ", original.size(), " vs ", released.size()));
  }
  const Schema& os = original.schema();
  const Schema& rs = released.schema();
  LossReport report;
  if (original.size() == 0) {
    return absl::InvalidArgumentError("datasets are empty");
  }
  const double n = static_cast<double>(original.size());
  double overall = 0;
  for (size_t a : os.quasi_identifiers()) {
    const AttributeSchema& attr = os.attribute(a);
    std::optional<size_t> ra = rs.IndexOf(attr.name);
    if (!ra.has_value() || rs.attribute(*ra).kind != attr.kind ||
        rs.attribute(*ra).role != attr.role) {
      return absl::InvalidArgumentError(absl::StrCat(
          "released schema lacks quasi-identifier '", attr.name, "'"));
    }
    std::optional<size_t> domain_size;
    if (!attr.is_numeric() && attr.domain.empty()) {
      absl::flat_hash_set<std::string> seen;
      for (const Record& r : original.records()) {
        if (r.cells[a].is_category()) seen.insert(r.cells[a].category());
      }
      domain_size = seen.size();
    }
    double loss_sum = 0;
    double width_sum = 0;
    for (size_t i = 0; i < original.size(); ++i) {
      const CellValue& o = original.cell(i, a);
      const CellValue& r = released.cell(i, *ra);
      if (o.is_missing() || r.is_missing()) {
        return absl::FailedPreconditionError(absl::StrCat(
            "missing value in attribute '", attr.name, "' at record ", i));
      }
      SDC_ASSIGN_OR_RETURN(double loss, CellLoss(o, r, attr, domain_size));
      loss_sum += loss;
      if (attr.is_numeric()) {
        if (r.is_interval()) {
          width_sum += (r.interval().hi - r.interval().lo) / attr.range();
        }
      } else {
        width_sum += loss;
      }
    }
    const double per_attr = loss_sum / n;
    report.per_attribute_loss.emplace_back(attr.name, per_attr);
    report.per_attribute_width.emplace_back(attr.name, width_sum / n);
    overall += per_attr;
  }
  report.overall_loss =
      overall / static_cast<double>(os.quasi_identifiers().size());
  return report;
}

}  // namespace sdc
