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

#ifndef SDC_SCHEMA_H_
#define SDC_SCHEMA_H_

#include <cstddef>
#include <cstdint>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "absl/container/flat_hash_map.h"
#include "absl/status/statusor.h"
#include "absl/strings/string_view.h"
#include "absl/time/civil_time.h"

namespace sdc {

enum class AttributeKind { kNumeric, kDate, kCategorical };
enum class AttributeRole { kIdentifier, kQuasiIdentifier, kConfidential, kOther };

absl::string_view KindName(AttributeKind kind);
absl::string_view RoleName(AttributeRole role);

// Rooted generalization tree over a categorical domain. Leaves are the domain
// values; internal nodes are the generalized values that may be published.
//
// Node ids are assigned in depth-first pre-order, so the subtree of node `n`
// is exactly the id range [n, SubtreeEnd(n)). The root is node 0.
class Hierarchy {
 public:
  struct Spec {
    std::string label;
    std::vector<Spec> children;
  };

  // Fails if labels repeat or the root has no children.
  static absl::StatusOr<Hierarchy> Create(const Spec& root);

  int32_t size() const { return static_cast<int32_t>(nodes_.size()); }
  int32_t root() const { return 0; }
  // Longest root-to-leaf path, in edges. Always >= 1.
  int height() const { return height_; }

  std::optional<int32_t> Find(absl::string_view label) const;
  const std::string& Label(int32_t node) const { return nodes_[node].label; }
  int32_t Parent(int32_t node) const { return nodes_[node].parent; }
  int Depth(int32_t node) const { return nodes_[node].depth; }
  bool IsLeaf(int32_t node) const { return nodes_[node].leaf_count == 0; }
  int32_t SubtreeEnd(int32_t node) const { return nodes_[node].subtree_end; }
  // Number of domain values (leaves) under `node`; 1 for a leaf.
  int LeavesUnder(int32_t node) const {
    return IsLeaf(node) ? 1 : nodes_[node].leaf_count;
  }
  bool IsAncestorOrSelf(int32_t ancestor, int32_t node) const {
    return ancestor <= node && node < nodes_[ancestor].subtree_end;
  }
  int32_t Lca(int32_t a, int32_t b) const;

  // Leaf labels in pre-order.
  const std::vector<std::string>& leaves() const { return leaves_; }

 private:
  struct NodeInfo {
    std::string label;
    int32_t parent = -1;
    int depth = 0;
    int32_t subtree_end = 0;
    int leaf_count = 0;
  };

  Hierarchy() = default;
  int32_t Add(const Spec& spec, int32_t parent, int depth);

  std::vector<NodeInfo> nodes_;
  std::vector<std::string> leaves_;
  absl::flat_hash_map<std::string, int32_t> by_label_;
  int height_ = 0;
};

// Declaration of one column.
//
// Numeric and date attributes carry [min, max] bounds; dates are stored as
// day offsets from the schema epoch. Categorical attributes may carry a
// hierarchy (whose leaves are the domain) or an explicit domain list; with
// neither, the domain is open.
struct AttributeSchema {
  std::string name;
  AttributeKind kind = AttributeKind::kNumeric;
  AttributeRole role = AttributeRole::kOther;
  double min = 0;
  double max = 0;
  std::shared_ptr<const Hierarchy> hierarchy;
  std::vector<std::string> domain;

  bool is_numeric() const { return kind != AttributeKind::kCategorical; }
  bool is_quasi_identifier() const {
    return role == AttributeRole::kQuasiIdentifier;
  }
  bool has_hierarchy() const { return hierarchy != nullptr; }
  double range() const { return max - min; }
};

class Schema {
 public:
  // Validates attribute invariants, name uniqueness and that at least one
  // quasi-identifier exists. For hierarchical attributes an empty domain is
  // filled from the hierarchy leaves; a non-empty one must match them.
  static absl::StatusOr<Schema> Create(std::vector<AttributeSchema> attributes,
                                       absl::CivilDay epoch);

  const std::vector<AttributeSchema>& attributes() const { return attributes_; }
  const AttributeSchema& attribute(size_t i) const { return attributes_[i]; }
  size_t size() const { return attributes_.size(); }
  absl::CivilDay epoch() const { return epoch_; }

  std::optional<size_t> IndexOf(absl::string_view name) const;
  // Attribute positions with role quasi_identifier, in schema order.
  const std::vector<size_t>& quasi_identifiers() const { return qi_; }
  bool has_identifiers() const;

  // Is `value` a member of the (closed) domain of categorical attribute
  // `attr`? Always true for open domains.
  bool InDomain(size_t attr, absl::string_view value) const;

  // Same attributes minus every identifier-role attribute.
  Schema WithoutIdentifiers() const;

  bool operator==(const Schema& other) const;

 private:
  Schema() = default;

  std::vector<AttributeSchema> attributes_;
  absl::CivilDay epoch_;
  std::vector<size_t> qi_;
  absl::flat_hash_map<std::string, size_t> by_name_;
  // Closed categorical domains, indexed by attribute position.
  std::vector<std::shared_ptr<const absl::flat_hash_map<std::string, int>>>
      domain_index_;
};

}  // namespace sdc

#endif  // SDC_SCHEMA_H_
