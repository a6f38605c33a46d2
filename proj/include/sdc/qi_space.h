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

#ifndef SDC_QI_SPACE_H_
#define SDC_QI_SPACE_H_

#include <cstddef>
#include <cstdint>
#include <memory>
#include <vector>

#include "absl/status/statusor.h"
#include "absl/types/span.h"
#include "sdc/dataset.h"
#include "sdc/distance.h"
#include "sdc/schema.h"

namespace sdc {

// Column-major compilation of a dataset's quasi-identifier cells, for the
// O(N^2) loops of the clustering algorithms. Distance(i, j) is bit-identical
// to RecordDistance(ds.record(i), ds.record(j), ds.schema()).
class QiSpace {
 public:
  enum class ColumnKind { kNumeric, kFlat, kHierarchy };

  struct Column {
    ColumnKind kind = ColumnKind::kNumeric;
    // kNumeric: representative per record and the domain width.
    std::vector<double> values;
    double range = 1;
    // kFlat: interned cell id per record. kHierarchy: node id per record.
    std::vector<int32_t> codes;
    int32_t num_codes = 0;
    const Hierarchy* hierarchy = nullptr;
    int height = 0;
    // kHierarchy: depth of LCA(a, b) at [a * num_codes + b], for small trees.
    std::vector<uint8_t> lca_depth;
  };

  // Fails with FailedPrecondition if any quasi-identifier cell is missing.
  static absl::StatusOr<QiSpace> Build(const Dataset& ds);

  size_t size() const { return size_; }
  size_t dims() const { return columns_.size(); }
  const std::vector<Column>& columns() const { return columns_; }

  double AttributeDistance(size_t column, size_t i, size_t j) const;
  // Distance between two codes of a categorical column.
  double CodeDistance(size_t column, int32_t a, int32_t b) const;
  double Distance(size_t i, size_t j) const;

  // out[t] = Distance(from, targets[t]).
  void DistancesFrom(size_t from, absl::Span<const size_t> targets,
                     absl::Span<double> out) const;

 private:
  QiSpace() = default;

  std::shared_ptr<const Schema> schema_;  // keeps hierarchies alive
  std::vector<Column> columns_;
  size_t size_ = 0;
};

}  // namespace sdc

#endif  // SDC_QI_SPACE_H_
