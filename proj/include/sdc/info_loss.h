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

#ifndef SDC_INFO_LOSS_H_
#define SDC_INFO_LOSS_H_

#include <cstddef>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "absl/status/statusor.h"
#include "sdc/cell_value.h"
#include "sdc/dataset.h"
#include "sdc/schema.h"

namespace sdc {

// Normalized distance between an original concrete cell and what was
// released for it, in [0, 1]:
//
//   numeric/date  |original - repr(released)| / (max - min), with the
//                 midpoint as representative of an interval;
//   value set     (|set| - 1) / (|domain| - 1);
//   node          (leaves under node - 1) / (|domain| - 1);
//   category      0 if equal, else 1.
//
// `domain_size` overrides the attribute's domain size (needed for open
// domains). Fails if a generalized release does not contain the original.
absl::StatusOr<double> CellLoss(const CellValue& original,
                                const CellValue& released,
                                const AttributeSchema& attr,
                                std::optional<size_t> domain_size = std::nullopt);

struct LossReport {
  double overall_loss = 0;
  // Quasi-identifiers in schema order.
  std::vector<std::pair<std::string, double>> per_attribute_loss;
  // Diagnostic: mean normalized interval width for numeric attributes, mean
  // generalization spread (same as the loss) for categorical ones.
  std::vector<std::pair<std::string, double>> per_attribute_width;
};

// Average record-to-record loss between `original` and an aligned release
// (same record count and order). The release may lack identifier columns;
// every quasi-identifier of the original must be present in it.
absl::StatusOr<LossReport> InformationLoss(const Dataset& original,
                                           const Dataset& released);

}  // namespace sdc

#endif  // SDC_INFO_LOSS_H_
