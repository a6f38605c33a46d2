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

#ifndef SDC_CELL_VALUE_H_
#define SDC_CELL_VALUE_H_

#include <cstdint>
#include <string>
#include <utility>
#include <variant>
#include <vector>

#include "absl/hash/hash.h"

namespace sdc {

// Closed numeric range [lo, hi] published in place of a concrete number.
struct Range {
  double lo = 0;
  double hi = 0;

  double Midpoint() const { return 0.5 * (lo + hi); }
  bool operator==(const Range&) const = default;
};

// Set of categorical values published in place of a concrete category.
// Members are kept sorted and unique.
struct CategorySet {
  std::vector<std::string> members;

  bool operator==(const CategorySet&) const = default;
};

// Internal node of an attribute's generalization hierarchy.
struct HierarchyNode {
  int32_t id = 0;

  bool operator==(const HierarchyNode&) const = default;
};

struct MissingValue {
  bool operator==(const MissingValue&) const = default;
};

// One cell of a record. Either a concrete value (Number, Category), a
// generalized value (Interval, ValueSet, Node) or Missing.
//
// Equality is structural: Number(3) != Interval(3, 3), and two value sets are
// equal iff they contain the same members.
class CellValue {
 public:
  enum class Tag { kNumber, kCategory, kInterval, kValueSet, kNode, kMissing };

  CellValue() : value_(MissingValue{}) {}

  static CellValue Number(double v) { return CellValue(v); }
  static CellValue Category(std::string v) { return CellValue(std::move(v)); }
  static CellValue Interval(double lo, double hi) {
    return CellValue(Range{lo, hi});
  }
  // Sorts and deduplicates `members`.
  static CellValue ValueSet(std::vector<std::string> members);
  static CellValue Node(int32_t id) { return CellValue(HierarchyNode{id}); }
  static CellValue Missing() { return CellValue(); }

  Tag tag() const { return static_cast<Tag>(value_.index()); }
  bool is_number() const { return tag() == Tag::kNumber; }
  bool is_category() const { return tag() == Tag::kCategory; }
  bool is_interval() const { return tag() == Tag::kInterval; }
  bool is_value_set() const { return tag() == Tag::kValueSet; }
  bool is_node() const { return tag() == Tag::kNode; }
  bool is_missing() const { return tag() == Tag::kMissing; }
  bool is_generalized() const {
    return is_interval() || is_value_set() || is_node();
  }

  double number() const { return std::get<double>(value_); }
  const std::string& category() const { return std::get<std::string>(value_); }
  const Range& interval() const { return std::get<Range>(value_); }
  const std::vector<std::string>& value_set() const {
    return std::get<CategorySet>(value_).members;
  }
  int32_t node() const { return std::get<HierarchyNode>(value_).id; }

  // Human-readable rendering for diagnostics; node ids are not resolved.
  std::string DebugString() const;

  bool operator==(const CellValue& other) const = default;

  template <typename H>
  friend H AbslHashValue(H h, const CellValue& v) {
    h = H::combine(std::move(h), v.value_.index());
    switch (v.tag()) {
      case Tag::kNumber:
        // +0.0 and -0.0 compare equal and must hash equal.
        return H::combine(std::move(h), v.number() == 0 ? 0.0 : v.number());
      case Tag::kCategory:
        return H::combine(std::move(h), v.category());
      case Tag::kInterval:
        return H::combine(std::move(h),
                          v.interval().lo == 0 ? 0.0 : v.interval().lo,
                          v.interval().hi == 0 ? 0.0 : v.interval().hi);
      case Tag::kValueSet:
        return H::combine(std::move(h), v.value_set());
      case Tag::kNode:
        return H::combine(std::move(h), v.node());
      case Tag::kMissing:
        return h;
    }
    return h;
  }

 private:
  template <typename T>
  explicit CellValue(T v) : value_(std::move(v)) {}

  std::variant<double, std::string, Range, CategorySet, HierarchyNode,
               MissingValue>
      value_;
};

}  // namespace sdc

#endif  // SDC_CELL_VALUE_H_
