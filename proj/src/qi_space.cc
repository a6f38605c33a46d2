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

#include "sdc/qi_space.h"

#include <string>
#include <utility>
#include <vector>

#include "absl/container/flat_hash_map.h"
#include "absl/status/status.h"
#include "absl/strings/str_cat.h"

namespace sdc {
namespace {

constexpr int32_t kMaxLcaTableNodes = 2048;

}  // namespace

absl::StatusOr<QiSpace> QiSpace::Build(const Dataset& ds) {
  QiSpace space;
  space.schema_ = ds.shared_schema();
  space.size_ = ds.size();
  const Schema& schema = ds.schema();
  for (size_t attr : schema.quasi_identifiers()) {
    const AttributeSchema& a = schema.attribute(attr);
    Column col;
    for (size_t i = 0; i < ds.size(); ++i) {
      if (ds.cell(i, attr).is_missing()) {
        return absl::FailedPreconditionError(absl::StrCat(
            "missing value in attribute '", a.name, "' at record ", i));
      }
    }
    if (a.is_numeric()) {
      col.kind = ColumnKind::kNumeric;
      col.range = a.range();
      col.values.reserve(ds.size());
      for (size_t i = 0; i < ds.size(); ++i) {
        const CellValue& v = ds.cell(i, attr);
        col.values.push_back(v.is_number() ? v.number()
                                           : v.interval().Midpoint());
      }
    } else if (a.has_hierarchy()) {
      const Hierarchy& h = *a.hierarchy;
      col.kind = ColumnKind::kHierarchy;
      col.hierarchy = &h;
      col.height = h.height();
      col.num_codes = h.size();
      col.codes.reserve(ds.size());
      for (size_t i = 0; i < ds.size(); ++i) {
        const CellValue& v = ds.cell(i, attr);
        col.codes.push_back(v.is_node() ? v.node() : *h.Find(v.category()));
      }
      if (h.size() <= kMaxLcaTableNodes) {
        const size_t n = static_cast<size_t>(h.size());
        col.lca_depth.resize(n * n);
        for (int32_t x = 0; x < h.size(); ++x) {
          for (int32_t y = 0; y < h.size(); ++y) {
            col.lca_depth[x * n + y] =
                static_cast<uint8_t>(h.Depth(h.Lca(x, y)));
          }
        }
      }
    } else {
      col.kind = ColumnKind::kFlat;
      absl::flat_hash_map<CellValue, int32_t> intern;
      col.codes.reserve(ds.size());
      for (size_t i = 0; i < ds.size(); ++i) {
        auto [it, inserted] = intern.try_emplace(
            ds.cell(i, attr), static_cast<int32_t>(intern.size()));
        col.codes.push_back(it->second);
      }
      col.num_codes = static_cast<int32_t>(intern.size());
    }
    space.columns_.push_back(std::move(col));
  }
  return space;
}

double QiSpace::AttributeDistance(size_t column, size_t i, size_t j) const {
  const Column& c = columns_[column];
  switch (c.kind) {
    case ColumnKind::kNumeric:
      return internal::NumericDistance(c.values[i], c.values[j], c.range);
    case ColumnKind::kFlat:
    case ColumnKind::kHierarchy:
      return CodeDistance(column, c.codes[i], c.codes[j]);
  }
  return 0.0;
}

double QiSpace::CodeDistance(size_t column, int32_t a, int32_t b) const {
  const Column& c = columns_[column];
  switch (c.kind) {
    case ColumnKind::kNumeric:
      return 0.0;
    case ColumnKind::kFlat:
      return a == b ? 0.0 : 1.0;
    case ColumnKind::kHierarchy: {
      if (a == b) return 0.0;
      const int depth =
          c.lca_depth.empty()
              ? c.hierarchy->Depth(c.hierarchy->Lca(a, b))
              : c.lca_depth[static_cast<size_t>(a) * c.num_codes + b];
      return internal::HierarchyDistance(c.height, depth);
    }
  }
  return 0.0;
}

double QiSpace::Distance(size_t i, size_t j) const {
  double sum = 0;
  for (size_t c = 0; c < columns_.size(); ++c) sum += AttributeDistance(c, i, j);
  return sum / static_cast<double>(columns_.size());
}

void QiSpace::DistancesFrom(size_t from, absl::Span<const size_t> targets,
                            absl::Span<double> out) const {
  const size_t n = targets.size();
  for (size_t t = 0; t < n; ++t) out[t] = 0.0;
  for (size_t ci = 0; ci < columns_.size(); ++ci) {
    const Column& c = columns_[ci];
    switch (c.kind) {
      case ColumnKind::kNumeric: {
        const double x = c.values[from];
        const double* v = c.values.data();
        for (size_t t = 0; t < n; ++t) {
          out[t] += internal::NumericDistance(x, v[targets[t]], c.range);
        }
        break;
      }
      case ColumnKind::kFlat: {
        const int32_t x = c.codes[from];
        const int32_t* codes = c.codes.data();
        for (size_t t = 0; t < n; ++t) {
          out[t] += codes[targets[t]] == x ? 0.0 : 1.0;
        }
        break;
      }
      case ColumnKind::kHierarchy: {
        if (c.lca_depth.empty()) {
          for (size_t t = 0; t < n; ++t) {
            out[t] += AttributeDistance(ci, from, targets[t]);
          }
          break;
        }
        const int32_t x = c.codes[from];
        const uint8_t* row =
            c.lca_depth.data() + static_cast<size_t>(x) * c.num_codes;
        // Per-node distance to x, looked up per target.
        std::vector<double> to_x(c.num_codes);
        for (int32_t y = 0; y < c.num_codes; ++y) {
          to_x[y] = y == x ? 0.0 : internal::HierarchyDistance(c.height, row[y]);
        }
        const int32_t* codes = c.codes.data();
        for (size_t t = 0; t < n; ++t) out[t] += to_x[codes[targets[t]]];
        break;
      }
    }
  }
  const double dims = static_cast<double>(columns_.size());
  for (size_t t = 0; t < n; ++t) out[t] /= dims;
}

}  // namespace sdc
