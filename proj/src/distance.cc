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

#include "sdc/distance.h"

#include <algorithm>
#include <optional>
#include <string>

#include "absl/status/status.h"
#include "absl/strings/str_cat.h"
#include "sdc/status_macros.h"

namespace sdc {
namespace {

absl::Status MissingError(const AttributeSchema& attr) {
  return absl::FailedPreconditionError(
      absl::StrCat("missing value in attribute '", attr.name, "'"));
}

absl::Status KindError(const AttributeSchema& attr, const CellValue& v) {
  return absl::InvalidArgumentError(absl::StrCat(
      "value ", v.DebugString(), " is incompatible with ",
      KindName(attr.kind), " attribute '", attr.name, "'"));
}

absl::StatusOr<double> NumericRepresentative(const CellValue& v,
                                             const AttributeSchema& attr) {
  if (v.is_number()) return v.number();
  if (v.is_interval()) return v.interval().Midpoint();
  return KindError(attr, v);
}

// Hierarchy node of a concrete leaf or a published node.
absl::StatusOr<int32_t> NodeOf(const CellValue& v, const AttributeSchema& attr) {
  const Hierarchy& h = *attr.hierarchy;
  if (v.is_node() && v.node() >= 0 && v.node() < h.size()) return v.node();
  if (v.is_category()) {
    if (std::optional<int32_t> id = h.Find(v.category());
        id.has_value() && h.IsLeaf(*id)) {
      return *id;
    }
  }
  return KindError(attr, v);
}

}  // namespace

absl::StatusOr<double> ValueDistance(const CellValue& a, const CellValue& b,
                                     const AttributeSchema& attr) {
  if (a.is_missing() || b.is_missing()) return MissingError(attr);
  if (attr.is_numeric()) {
    SDC_ASSIGN_OR_RETURN(double ra, NumericRepresentative(a, attr));
    SDC_ASSIGN_OR_RETURN(double rb, NumericRepresentative(b, attr));
    return internal::NumericDistance(ra, rb, attr.range());
  }
  if (attr.has_hierarchy()) {
    SDC_ASSIGN_OR_RETURN(int32_t na, NodeOf(a, attr));
    SDC_ASSIGN_OR_RETURN(int32_t nb, NodeOf(b, attr));
    if (na == nb) return 0.0;
    const Hierarchy& h = *attr.hierarchy;
    return internal::HierarchyDistance(h.height(), h.Depth(h.Lca(na, nb)));
  }
  for (const CellValue* v : {&a, &b}) {
    if (!v->is_category() && !v->is_value_set()) return KindError(attr, *v);
  }
  return a == b ? 0.0 : 1.0;
}

absl::StatusOr<double> RecordDistance(const Record& a, const Record& b,
                                      const Schema& schema) {
  const std::vector<size_t>& qi = schema.quasi_identifiers();
  if (qi.empty()) {
    return absl::FailedPreconditionError("schema has no quasi-identifiers");
  }
  if (a.cells.size() != schema.size() || b.cells.size() != schema.size()) {
    return absl::InvalidArgumentError("record does not conform to schema");
  }
  double sum = 0;
  for (size_t attr : qi) {
    SDC_ASSIGN_OR_RETURN(
        double d,
        ValueDistance(a.cells[attr], b.cells[attr], schema.attribute(attr)));
    sum += d;
  }
  return sum / static_cast<double>(qi.size());
}

absl::StatusOr<double> QiCellsDistance(absl::Span<const CellValue> a,
                                       absl::Span<const CellValue> b,
                                       const Schema& schema) {
  const std::vector<size_t>& qi = schema.quasi_identifiers();
  if (a.size() != qi.size() || b.size() != qi.size()) {
    return absl::InvalidArgumentError(
        "cell lists are not aligned with the quasi-identifiers");
  }
  double sum = 0;
  for (size_t q = 0; q < qi.size(); ++q) {
    SDC_ASSIGN_OR_RETURN(double d,
                         ValueDistance(a[q], b[q], schema.attribute(qi[q])));
    sum += d;
  }
  return sum / static_cast<double>(qi.size());
}

absl::StatusOr<bool> GeneralizedContains(const CellValue& g, const CellValue& v,
                                         const AttributeSchema& attr) {
  if (g.is_missing() || v.is_missing()) return MissingError(attr);
  if (v.is_generalized()) {
    return absl::InvalidArgumentError(absl::StrCat(
        "containment test needs a concrete value, got ", v.DebugString()));
  }
  if (attr.is_numeric()) {
    if (!v.is_number()) return KindError(attr, v);
    if (g.is_number()) return g.number() == v.number();
    if (g.is_interval()) {
      return g.interval().lo <= v.number() && v.number() <= g.interval().hi;
    }
    return KindError(attr, g);
  }
  if (!v.is_category()) return KindError(attr, v);
  if (g.is_category()) return g.category() == v.category();
  if (g.is_value_set()) {
    const std::vector<std::string>& m = g.value_set();
    return std::binary_search(m.begin(), m.end(), v.category());
  }
  if (g.is_node()) {
    if (!attr.has_hierarchy()) return KindError(attr, g);
    SDC_ASSIGN_OR_RETURN(int32_t leaf, NodeOf(v, attr));
    SDC_ASSIGN_OR_RETURN(int32_t node, NodeOf(g, attr));
    return attr.hierarchy->IsAncestorOrSelf(node, leaf);
  }
  return KindError(attr, g);
}

}  // namespace sdc
