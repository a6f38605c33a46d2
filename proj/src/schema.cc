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

#include "sdc/schema.h"

#include <algorithm>
#include <cmath>
#include <memory>
#include <string>
#include <utility>
#include <vector>

#include "absl/status/status.h"
#include "absl/strings/str_cat.h"

namespace sdc {

absl::string_view KindName(AttributeKind kind) {
  switch (kind) {
    case AttributeKind::kNumeric:
      return "numeric";
    case AttributeKind::kDate:
      return "date";
    case AttributeKind::kCategorical:
      return "categorical";
  }
  return "";
}

absl::string_view RoleName(AttributeRole role) {
  switch (role) {
    case AttributeRole::kIdentifier:
      return "identifier";
    case AttributeRole::kQuasiIdentifier:
      return "quasi_identifier";
    case AttributeRole::kConfidential:
      return "confidential";
    case AttributeRole::kOther:
      return "other";
  }
  return "";
}

absl::StatusOr<Hierarchy> Hierarchy::Create(const Spec& root) {
  if (root.children.empty()) {
    return absl::InvalidArgumentError(
        absl::StrCat("hierarchy rooted at '", root.label,
                     "' must have height >= 1"));
  }
  Hierarchy h;
  h.Add(root, -1, 0);
  if (h.by_label_.size() != h.nodes_.size()) {
    // Find a duplicate to report.
    absl::flat_hash_map<std::string, int> seen;
    for (const NodeInfo& n : h.nodes_) {
      if (++seen[n.label] > 1) {
        return absl::InvalidArgumentError(
            absl::StrCat("hierarchy label '", n.label, "' appears twice"));
      }
    }
  }
  return h;
}

int32_t Hierarchy::Add(const Spec& spec, int32_t parent, int depth) {
  const int32_t id = static_cast<int32_t>(nodes_.size());
  nodes_.push_back(NodeInfo{spec.label, parent, depth, 0, 0});
  by_label_.emplace(spec.label, id);
  height_ = std::max(height_, depth);
  if (spec.children.empty()) {
    leaves_.push_back(spec.label);
  }
  int leaf_count = 0;
  for (const Spec& child : spec.children) {
    const int32_t c = Add(child, id, depth + 1);
    leaf_count += nodes_[c].leaf_count == 0 ? 1 : nodes_[c].leaf_count;
  }
  nodes_[id].leaf_count = leaf_count;
  nodes_[id].subtree_end = static_cast<int32_t>(nodes_.size());
  return id;
}

std::optional<int32_t> Hierarchy::Find(absl::string_view label) const {
  auto it = by_label_.find(label);
  if (it == by_label_.end()) return std::nullopt;
  return it->second;
}

int32_t Hierarchy::Lca(int32_t a, int32_t b) const {
  while (!IsAncestorOrSelf(a, b)) a = nodes_[a].parent;
  return a;
}

namespace {

absl::Status ValidateAttribute(AttributeSchema& attr) {
  auto fail = [&attr](absl::string_view why) {
    return absl::InvalidArgumentError(
        absl::StrCat("attribute '", attr.name, "': ", why));
  };
  if (attr.name.empty()) {
    return absl::InvalidArgumentError("attribute with empty name");
  }
  if (attr.is_numeric()) {
    if (!std::isfinite(attr.min) || !std::isfinite(attr.max)) {
      return fail("bounds must be finite");
    }
    if (!(attr.min < attr.max)) return fail("requires min < max");
    if (attr.hierarchy != nullptr || !attr.domain.empty()) {
      return fail("numeric/date attributes take no domain or hierarchy");
    }
    return absl::OkStatus();
  }
  if (attr.hierarchy != nullptr) {
    const std::vector<std::string>& leaves = attr.hierarchy->leaves();
    if (attr.domain.empty()) {
      attr.domain = leaves;
    } else {
      std::vector<std::string> a = attr.domain;
      std::vector<std::string> b = leaves;
      std::sort(a.begin(), a.end());
      std::sort(b.begin(), b.end());
      if (std::adjacent_find(a.begin(), a.end()) != a.end()) {
        return fail("domain lists a value twice");
      }
      if (a != b) {
        std::vector<std::string> diff;
        std::set_symmetric_difference(a.begin(), a.end(), b.begin(), b.end(),
                                      std::back_inserter(diff));
        return fail(absl::StrCat(
            "hierarchy leaves do not match the domain (e.g. '", diff.front(),
            "')"));
      }
    }
  } else {
    std::vector<std::string> a = attr.domain;
    std::sort(a.begin(), a.end());
    if (std::adjacent_find(a.begin(), a.end()) != a.end()) {
      return fail("domain lists a value twice");
    }
  }
  std::vector<std::string> labels = attr.domain;
  if (attr.hierarchy != nullptr) {
    for (int32_t n = 0; n < attr.hierarchy->size(); ++n) {
      labels.push_back(attr.hierarchy->Label(n));
    }
  }
  for (const std::string& v : labels) {
    if (v.empty() || v.front() == '{' || v.front() == '[' ||
        v.find('|') != std::string::npos) {
      return fail(absl::StrCat("value '", v,
                               "' collides with the generalized-cell syntax"));
    }
  }
  return absl::OkStatus();
}

}  // namespace

absl::StatusOr<Schema> Schema::Create(std::vector<AttributeSchema> attributes,
                                      absl::CivilDay epoch) {
  Schema schema;
  schema.epoch_ = epoch;
  for (size_t i = 0; i < attributes.size(); ++i) {
    AttributeSchema& attr = attributes[i];
    if (absl::Status s = ValidateAttribute(attr); !s.ok()) return s;
    if (!schema.by_name_.emplace(attr.name, i).second) {
      return absl::InvalidArgumentError(
          absl::StrCat("attribute '", attr.name, "' is declared twice"));
    }
    if (attr.is_quasi_identifier()) schema.qi_.push_back(i);
    if (!attr.is_numeric() && !attr.domain.empty()) {
      auto index = std::make_shared<absl::flat_hash_map<std::string, int>>();
      for (size_t d = 0; d < attr.domain.size(); ++d) {
        index->emplace(attr.domain[d], static_cast<int>(d));
      }
      schema.domain_index_.push_back(std::move(index));
    } else {
      schema.domain_index_.push_back(nullptr);
    }
  }
  if (schema.qi_.empty()) {
    return absl::InvalidArgumentError(
        "schema declares no quasi_identifier attribute");
  }
  schema.attributes_ = std::move(attributes);
  return schema;
}

std::optional<size_t> Schema::IndexOf(absl::string_view name) const {
  auto it = by_name_.find(name);
  if (it == by_name_.end()) return std::nullopt;
  return it->second;
}

bool Schema::has_identifiers() const {
  return std::any_of(attributes_.begin(), attributes_.end(),
                     [](const AttributeSchema& a) {
                       return a.role == AttributeRole::kIdentifier;
                     });
}

bool Schema::InDomain(size_t attr, absl::string_view value) const {
  const auto& index = domain_index_[attr];
  return index == nullptr || index->contains(value);
}

Schema Schema::WithoutIdentifiers() const {
  Schema out;
  out.epoch_ = epoch_;
  for (size_t i = 0; i < attributes_.size(); ++i) {
    if (attributes_[i].role == AttributeRole::kIdentifier) continue;
    const size_t pos = out.attributes_.size();
    out.attributes_.push_back(attributes_[i]);
    out.by_name_.emplace(attributes_[i].name, pos);
    out.domain_index_.push_back(domain_index_[i]);
    if (attributes_[i].is_quasi_identifier()) out.qi_.push_back(pos);
  }
  return out;
}

bool Schema::operator==(const Schema& other) const {
  if (epoch_ != other.epoch_ || attributes_.size() != other.attributes_.size())
    return false;
  for (size_t i = 0; i < attributes_.size(); ++i) {
    const AttributeSchema& a = attributes_[i];
    const AttributeSchema& b = other.attributes_[i];
    if (a.name != b.name || a.kind != b.kind || a.role != b.role ||
        a.min != b.min || a.max != b.max || a.domain != b.domain ||
        (a.hierarchy == nullptr) != (b.hierarchy == nullptr)) {
      return false;
    }
    if (a.hierarchy != nullptr && a.hierarchy != b.hierarchy) {
      const Hierarchy& ha = *a.hierarchy;
      const Hierarchy& hb = *b.hierarchy;
      if (ha.size() != hb.size()) return false;
      for (int32_t n = 0; n < ha.size(); ++n) {
        if (ha.Label(n) != hb.Label(n) || ha.Parent(n) != hb.Parent(n))
          return false;
      }
    }
  }
  return true;
}

}  // namespace sdc
