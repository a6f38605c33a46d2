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

#ifndef SDC_TESTS_TEST_UTIL_H_
#define SDC_TESTS_TEST_UTIL_H_

#include <cstdint>
#include <memory>
#include <random>
#include <string>
#include <utility>
#include <vector>

#include "absl/status/status.h"
#include "absl/status/statusor.h"
#include "absl/strings/match.h"
#include "absl/strings/str_cat.h"
#include "gmock/gmock.h"
#include "gtest/gtest.h"
#include "sdc/dataset.h"
#include "sdc/schema.h"

namespace sdc {
namespace testing {

#define SDC_ASSERT_OK(expr)                      \
  do {                                           \
    const absl::Status _st = (expr);             \
    ASSERT_TRUE(_st.ok()) << _st.ToString();     \
  } while (0)

#define SDC_EXPECT_OK(expr)                      \
  do {                                           \
    const absl::Status _st = (expr);             \
    EXPECT_TRUE(_st.ok()) << _st.ToString();     \
  } while (0)

#define SDC_CONCAT_INNER(a, b) a##b
#define SDC_CONCAT(a, b) SDC_CONCAT_INNER(a, b)
#define SDC_ASSERT_OK_AND_ASSIGN(lhs, expr) \
  SDC_ASSERT_OK_AND_ASSIGN_IMPL(SDC_CONCAT(_sor_, __LINE__), lhs, expr)
#define SDC_ASSERT_OK_AND_ASSIGN_IMPL(tmp, lhs, expr)  \
  auto tmp = (expr);                                   \
  ASSERT_TRUE(tmp.ok()) << tmp.status().ToString();    \
  lhs = *std::move(tmp)

MATCHER_P(StatusIs, code, "") { return arg.code() == code; }

MATCHER_P2(StatusIsWith, code, substring, "") {
  return arg.code() == code &&
         absl::StrContains(arg.message(), std::string(substring));
}

inline AttributeSchema Numeric(std::string name, double min, double max,
                               AttributeRole role =
                                   AttributeRole::kQuasiIdentifier) {
  AttributeSchema a;
  a.name = std::move(name);
  a.kind = AttributeKind::kNumeric;
  a.role = role;
  a.min = min;
  a.max = max;
  return a;
}

inline AttributeSchema Date(std::string name, double min, double max,
                            AttributeRole role =
                                AttributeRole::kQuasiIdentifier) {
  AttributeSchema a = Numeric(std::move(name), min, max, role);
  a.kind = AttributeKind::kDate;
  return a;
}

inline AttributeSchema Categorical(std::string name,
                                   std::vector<std::string> domain,
                                   AttributeRole role =
                                       AttributeRole::kQuasiIdentifier) {
  AttributeSchema a;
  a.name = std::move(name);
  a.kind = AttributeKind::kCategorical;
  a.role = role;
  a.domain = std::move(domain);
  return a;
}

inline AttributeSchema Hierarchical(
    std::string name, const Hierarchy::Spec& spec,
    AttributeRole role = AttributeRole::kQuasiIdentifier) {
  AttributeSchema a = Categorical(std::move(name), {}, role);
  a.hierarchy = std::make_shared<const Hierarchy>(*Hierarchy::Create(spec));
  return a;
}

// root -> {left -> {a, b}, right -> {c, d}}: height 2.
inline Hierarchy::Spec SmallTree() {
  return Hierarchy::Spec{
      "root",
      {Hierarchy::Spec{"left", {{"a", {}}, {"b", {}}}},
       Hierarchy::Spec{"right", {{"c", {}}, {"d", {}}}}}};
}

inline std::shared_ptr<const Schema> MakeSchema(
    std::vector<AttributeSchema> attrs) {
  absl::StatusOr<Schema> s =
      Schema::Create(std::move(attrs), absl::CivilDay(2009, 1, 1));
  EXPECT_TRUE(s.ok()) << s.status().ToString();
  return std::make_shared<const Schema>(*std::move(s));
}

inline Dataset MakeDataset(std::shared_ptr<const Schema> schema,
                           std::vector<std::vector<CellValue>> rows) {
  absl::StatusOr<Dataset> ds = Dataset::Create(std::move(schema),
                                               std::move(rows));
  EXPECT_TRUE(ds.ok()) << ds.status().ToString();
  return *std::move(ds);
}

// One numeric QI column.
inline Dataset NumbersDataset(const std::vector<double>& values, double min,
                              double max, const std::string& name = "age") {
  std::vector<std::vector<CellValue>> rows;
  for (double v : values) rows.push_back({CellValue::Number(v)});
  return MakeDataset(MakeSchema({Numeric(name, min, max)}), std::move(rows));
}

// Random mixed schemas and datasets for property tests. Values are drawn
// from small pools so that duplicates, and therefore non-trivial
// equivalence classes, are common.
class RandomData {
 public:
  explicit RandomData(uint64_t seed) : rng_(seed) {}

  std::mt19937_64& rng() { return rng_; }

  int Int(int lo, int hi) {
    return std::uniform_int_distribution<int>(lo, hi)(rng_);
  }
  bool Coin(double p = 0.5) {
    return std::bernoulli_distribution(p)(rng_);
  }

  // 1-4 quasi-identifiers of random kinds, optionally an identifier, a
  // numeric confidential and a categorical confidential attribute.
  std::shared_ptr<const Schema> MixedSchema(bool with_extras = true) {
    std::vector<AttributeSchema> attrs;
    if (with_extras && Coin()) {
      AttributeSchema id = Categorical("id", {}, AttributeRole::kIdentifier);
      attrs.push_back(id);
    }
    const int qis = Int(1, 4);
    for (int q = 0; q < qis; ++q) {
      const std::string name = absl::StrCat("q", q);
      switch (Int(0, 3)) {
        case 0:
          attrs.push_back(Numeric(name, 0, Int(1, 20)));
          break;
        case 1:
          attrs.push_back(Date(name, 0, 30));
          break;
        case 2:
          attrs.push_back(Categorical(name, {"u", "v", "w"}));
          break;
        default:
          attrs.push_back(Hierarchical(name, SmallTree()));
          break;
      }
    }
    if (with_extras) {
      attrs.push_back(Numeric("conf_num", 0, 9, AttributeRole::kConfidential));
      attrs.push_back(Categorical("conf_cat", {"x", "y", "z"},
                                  AttributeRole::kConfidential));
    }
    return MakeSchema(std::move(attrs));
  }

  // A concrete value for attribute `a`.
  CellValue Concrete(const Schema& schema, size_t a, size_t row) {
    const AttributeSchema& attr = schema.attribute(a);
    if (attr.role == AttributeRole::kIdentifier) {
      return CellValue::Category(absl::StrCat("id", row));
    }
    if (attr.is_numeric()) {
      const int hi = static_cast<int>(attr.max);
      // Mostly a handful of values, occasionally anything in range.
      int v = Coin(0.7) ? Int(0, std::min(hi, 3)) : Int(0, hi);
      return CellValue::Number(v);
    }
    if (attr.has_hierarchy()) {
      const auto& leaves = attr.hierarchy->leaves();
      return CellValue::Category(leaves[Int(0, leaves.size() - 1)]);
    }
    return CellValue::Category(attr.domain[Int(0, attr.domain.size() - 1)]);
  }

  // A value of any form allowed in column `a`, generalized or not.
  CellValue Any(const Schema& schema, size_t a, size_t row) {
    const AttributeSchema& attr = schema.attribute(a);
    if (attr.role == AttributeRole::kIdentifier || Coin(0.5)) {
      return Concrete(schema, a, row);
    }
    if (attr.is_numeric()) {
      double lo = Int(static_cast<int>(attr.min), static_cast<int>(attr.max));
      double hi = Int(static_cast<int>(lo), static_cast<int>(attr.max));
      if (Coin(0.3) && lo + 0.25 <= attr.max) lo += 0.25;  // non-integral
      if (lo > hi) hi = lo;
      return CellValue::Interval(lo, hi);
    }
    if (attr.has_hierarchy()) {
      const Hierarchy& h = *attr.hierarchy;
      std::vector<int32_t> internal;
      for (int32_t x = 0; x < h.size(); ++x) {
        if (!h.IsLeaf(x)) internal.push_back(x);
      }
      return CellValue::Node(internal[Int(0, internal.size() - 1)]);
    }
    std::vector<std::string> members;
    for (const std::string& v : attr.domain) {
      if (Coin()) members.push_back(v);
    }
    if (members.empty()) members.push_back(attr.domain.front());
    return CellValue::ValueSet(members);
  }

  Dataset Concrete(std::shared_ptr<const Schema> schema, size_t n) {
    std::vector<std::vector<CellValue>> rows(n);
    for (size_t r = 0; r < n; ++r) {
      for (size_t a = 0; a < schema->size(); ++a) {
        rows[r].push_back(Concrete(*schema, a, r));
      }
    }
    return MakeDataset(std::move(schema), std::move(rows));
  }

  Dataset Any(std::shared_ptr<const Schema> schema, size_t n) {
    std::vector<std::vector<CellValue>> rows(n);
    for (size_t r = 0; r < n; ++r) {
      for (size_t a = 0; a < schema->size(); ++a) {
        rows[r].push_back(Any(*schema, a, r));
      }
    }
    return MakeDataset(std::move(schema), std::move(rows));
  }

 private:
  std::mt19937_64 rng_;
};

inline std::string DataPath(const std::string& file) {
  return absl::StrCat(SDC_DATA_DIR, "/", file);
}

}  // namespace testing
}  // namespace sdc

#endif  // SDC_TESTS_TEST_UTIL_H_
