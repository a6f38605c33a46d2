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

#ifndef SDC_DATASET_H_
#define SDC_DATASET_H_

#include <cstddef>
#include <cstdint>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "absl/status/status.h"
#include "absl/status/statusor.h"
#include "absl/strings/string_view.h"
#include "sdc/cell_value.h"
#include "sdc/schema.h"

namespace sdc {

struct Record {
  // Positionally aligned with Schema::attributes().
  std::vector<CellValue> cells;
  // Ordinal position in the owning dataset.
  size_t index = 0;
};

enum class Mechanism { kOriginal, kCoarsened, kKAnonymous, kTClose };

absl::string_view MechanismName(Mechanism m);

// How a dataset was produced, with the parameters that were used.
struct Provenance {
  Mechanism mechanism = Mechanism::kOriginal;
  std::optional<int> k;
  std::optional<double> t;
  std::optional<double> fraction;
  std::optional<uint64_t> seed;
};

// Checks that `cell` is a legal value of `attr`: the variant matches the kind,
// concrete values lie inside the declared domain and generalized values are
// well formed (lo <= hi inside bounds, non-empty set of domain members,
// existing internal node).
absl::Status CheckCell(const CellValue& cell, const Schema& schema,
                       size_t attr);

// An immutable, schema-conforming table.
class Dataset {
 public:
  // Validates every cell with CheckCell. Record indices are assigned 0..N-1.
  static absl::StatusOr<Dataset> Create(
      std::shared_ptr<const Schema> schema,
      std::vector<std::vector<CellValue>> rows,
      Provenance provenance = Provenance{});

  const Schema& schema() const { return *schema_; }
  const std::shared_ptr<const Schema>& shared_schema() const {
    return schema_;
  }
  const std::vector<Record>& records() const { return records_; }
  const Record& record(size_t i) const { return records_[i]; }
  const CellValue& cell(size_t row, size_t attr) const {
    return records_[row].cells[attr];
  }
  size_t size() const { return records_.size(); }
  const Provenance& provenance() const { return provenance_; }

  // Cell-for-cell equality of schema and records (provenance ignored).
  bool SameContent(const Dataset& other) const;

 private:
  Dataset() = default;

  std::shared_ptr<const Schema> schema_;
  std::vector<Record> records_;
  Provenance provenance_;
};

// Resolves attribute names against the schema. Rejects unknown names,
// duplicates, and (unless `allow_identifiers`) identifier-role attributes.
absl::StatusOr<std::vector<size_t>> ResolveAttributes(
    const Schema& schema, const std::vector<std::string>& names,
    bool allow_identifiers = false);

}  // namespace sdc

#endif  // SDC_DATASET_H_
