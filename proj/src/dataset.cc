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

#include "sdc/dataset.h"

#include <cmath>
#include <memory>
#include <string>
#include <utility>
#include <vector>

#include "absl/container/flat_hash_set.h"
#include "absl/strings/str_cat.h"

namespace sdc {

absl::string_view MechanismName(Mechanism m) {
  switch (m) {
    case Mechanism::kOriginal:
      return "original";
    case Mechanism::kCoarsened:
      return "coarsened";
    case Mechanism::kKAnonymous:
      return "k_anonymous";
    case Mechanism::kTClose:
      return "t_close";
  }
  return "";
}

absl::Status CheckCell(const CellValue& cell, const Schema& schema,
                       size_t attr_index) {
  const AttributeSchema& attr = schema.attribute(attr_index);
  auto fail = [&](absl::string_view why) {
    return absl::InvalidArgumentError(absl::StrCat(
        "attribute '", attr.name, "': ", why, " (", cell.DebugString(), ")"));
  };
  auto in_bounds = [&attr](double v) {
    return std::isfinite(v) && v >= attr.min && v <= attr.max;
  };
  switch (cell.tag()) {
    case CellValue::Tag::kMissing:
      return absl::OkStatus();
    case CellValue::Tag::kNumber:
      if (!attr.is_numeric()) return fail("number in a categorical column");
      if (!in_bounds(cell.number())) return fail("value outside domain");
      return absl::OkStatus();
    case CellValue::Tag::kInterval:
      if (!attr.is_numeric()) return fail("interval in a categorical column");
      if (!(cell.interval().lo <= cell.interval().hi)) {
        return fail("interval with lo > hi");
      }
      if (!in_bounds(cell.interval().lo) || !in_bounds(cell.interval().hi)) {
        return fail("interval outside domain");
      }
      return absl::OkStatus();
    case CellValue::Tag::kCategory:
      if (attr.is_numeric()) return fail("category in a numeric column");
      if (cell.category().empty() || cell.category().front() == '{' ||
          cell.category().front() == '[' ||
          cell.category().find('|') != std::string::npos) {
        return fail("category clashes with the cell encoding");
      }
      if (!schema.InDomain(attr_index, cell.category())) {
        return fail("value outside domain");
      }
      return absl::OkStatus();
    case CellValue::Tag::kValueSet:
      if (attr.is_numeric()) return fail("value set in a numeric column");
      if (attr.has_hierarchy()) {
        return fail("value set in a hierarchical column");
      }
      if (cell.value_set().empty()) return fail("empty value set");
      for (const std::string& m : cell.value_set()) {
        if (!schema.InDomain(attr_index, m)) {
          return fail("value set member outside domain");
        }
      }
      return absl::OkStatus();
    case CellValue::Tag::kNode:
      if (!attr.has_hierarchy()) {
        return fail("hierarchy node in a column without hierarchy");
      }
      if (cell.node() < 0 || cell.node() >= attr.hierarchy->size() ||
          attr.hierarchy->IsLeaf(cell.node())) {
        return fail("not an internal hierarchy node");
      }
      return absl::OkStatus();
  }
  return absl::OkStatus();
}

absl::StatusOr<Dataset> Dataset::Create(
    std::shared_ptr<const Schema> schema,
    std::vector<std::vector<CellValue>> rows, Provenance provenance) {
  Dataset ds;
  ds.records_.reserve(rows.size());
  for (size_t r = 0; r < rows.size(); ++r) {
    if (rows[r].size() != schema->size()) {
      return absl::InvalidArgumentError(
          absl::StrCat("record ", r, " has ", rows[r].size(),
                       " cells, schema declares ", schema->size()));
    }
    for (size_t a = 0; a < rows[r].size(); ++a) {
      if (absl::Status s = CheckCell(rows[r][a], *schema, a); !s.ok()) {
        return absl::InvalidArgumentError(
            absl::StrCat("record ", r, ": ", s.message()));
      }
    }
    ds.records_.push_back(Record{std::move(rows[r]), r});
  }
  ds.schema_ = std::move(schema);
  ds.provenance_ = provenance;
  return ds;
}

bool Dataset::SameContent(const Dataset& other) const {
  if (!(*schema_ == *other.schema_) || size() != other.size()) return false;
  for (size_t i = 0; i < size(); ++i) {
    if (records_[i].cells != other.records_[i].cells) return false;
  }
  return true;
}

absl::StatusOr<std::vector<size_t>> ResolveAttributes(
    const Schema& schema, const std::vector<std::string>& names,
    bool allow_identifiers) {
  if (names.empty()) {
    return absl::InvalidArgumentError("attribute list is empty");
  }
  std::vector<size_t> out;
  absl::flat_hash_set<size_t> seen;
  for (const std::string& name : names) {
    std::optional<size_t> idx = schema.IndexOf(name);
    if (!idx.has_value()) {
      return absl::NotFoundError(absl::StrCat("unknown attribute '", name, "'"));
    }
    if (!allow_identifiers &&
        schema.attribute(*idx).role == AttributeRole::kIdentifier) {
      return absl::InvalidArgumentError(absl::StrCat(
          "attribute '", name, "' is an identifier and cannot be used here"));
    }
    if (!seen.insert(*idx).second) {
      return absl::InvalidArgumentError(
          absl::StrCat("attribute '", name, "' listed twice"));
    }
    out.push_back(*idx);
  }
  return out;
}

}  // namespace sdc
