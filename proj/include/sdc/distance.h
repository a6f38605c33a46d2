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

#ifndef SDC_DISTANCE_H_
#define SDC_DISTANCE_H_

#include <cstdint>

#include "absl/status/statusor.h"
#include "absl/types/span.h"
#include "sdc/cell_value.h"
#include "sdc/dataset.h"
#include "sdc/schema.h"

namespace sdc {

// Heterogeneous distance between two cells of `attr`, in [0, 1].
//
//   numeric/date: |repr(a) - repr(b)| / (max - min), clamped to 1, where the
//                 representative of an interval is its midpoint;
//   hierarchical: 0 if equal, else (H - depth(lca)) / H with H the tree
//                 height (concrete leaves and published nodes alike);
//   flat:         0 if structurally equal, else 1.
//
// Missing cells yield FailedPrecondition ("missing value"); cells that do not
// belong to the attribute's kind yield InvalidArgument.
absl::StatusOr<double> ValueDistance(const CellValue& a, const CellValue& b,
                                     const AttributeSchema& attr);

// Unweighted mean of ValueDistance over the schema's quasi-identifiers.
absl::StatusOr<double> RecordDistance(const Record& a, const Record& b,
                                      const Schema& schema);

// Same as RecordDistance, for two QI cell lists aligned with
// schema.quasi_identifiers() (e.g. the generalized cells of a cluster).
absl::StatusOr<double> QiCellsDistance(absl::Span<const CellValue> a,
                                       absl::Span<const CellValue> b,
                                       const Schema& schema);

// Does generalized (or concrete) value `g` cover concrete value `v`?
absl::StatusOr<bool> GeneralizedContains(const CellValue& g, const CellValue& v,
                                         const AttributeSchema& attr);

namespace internal {

inline double NumericDistance(double a, double b, double range) {
  const double d = (a > b ? a - b : b - a) / range;
  return d > 1.0 ? 1.0 : d;
}

inline double HierarchyDistance(int height, int lca_depth) {
  return static_cast<double>(height - lca_depth) / height;
}

}  // namespace internal
}  // namespace sdc

#endif  // SDC_DISTANCE_H_
