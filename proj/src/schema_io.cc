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

#include "sdc/schema_io.h"

#include <fstream>
#include <memory>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include "absl/status/status.h"
#include "absl/strings/str_cat.h"
#include "absl/strings/str_format.h"
#include "json.hpp"
#include "sdc/status_macros.h"

namespace sdc {
namespace {

using json = nlohmann::json;

absl::Status SemanticError(absl::string_view attr, absl::string_view why) {
  return absl::InvalidArgumentError(
      absl::StrCat("schema: attribute '", attr, "': ", why));
}

absl::StatusOr<Hierarchy::Spec> ParseHierarchyNode(const json& node,
                                                   absl::string_view attr) {
  Hierarchy::Spec spec;
  if (node.is_string()) {
    spec.label = node.get<std::string>();
    return spec;
  }
  if (!node.is_object() || !node.contains("label") ||
      !node["label"].is_string()) {
    return SemanticError(attr, "hierarchy nodes must be strings or objects "
                               "with a string \"label\"");
  }
  spec.label = node["label"].get<std::string>();
  if (node.contains("children")) {
    if (!node["children"].is_array()) {
      return SemanticError(attr, "hierarchy \"children\" must be an array");
    }
    for (const json& child : node["children"]) {
      SDC_ASSIGN_OR_RETURN(Hierarchy::Spec c, ParseHierarchyNode(child, attr));
      spec.children.push_back(std::move(c));
    }
  }
  return spec;
}

absl::StatusOr<double> ParseBound(const json& v, const AttributeSchema& attr,
                                  absl::CivilDay epoch, absl::string_view key) {
  if (v.is_number()) return v.get<double>();
  if (attr.kind == AttributeKind::kDate && v.is_string()) {
    absl::StatusOr<double> d = ParseDate(v.get<std::string>(), epoch);
    if (!d.ok()) return SemanticError(attr.name, d.status().message());
    return *d;
  }
  return SemanticError(attr.name, absl::StrCat("\"", key, "\" must be a ",
                                               attr.kind == AttributeKind::kDate
                                                   ? "date or number"
                                                   : "number"));
}

absl::StatusOr<AttributeSchema> ParseAttribute(const json& j,
                                               absl::CivilDay epoch,
                                               size_t position) {
  if (!j.is_object()) {
    return absl::InvalidArgumentError(
        absl::StrCat("schema: attribute #", position, " is not an object"));
  }
  if (!j.contains("name") || !j["name"].is_string()) {
    return absl::InvalidArgumentError(
        absl::StrCat("schema: attribute #", position, " has no string name"));
  }
  AttributeSchema attr;
  attr.name = j["name"].get<std::string>();
  for (const auto& [key, value] : j.items()) {
    if (key != "name" && key != "kind" && key != "role" && key != "min" &&
        key != "max" && key != "domain" && key != "hierarchy") {
      return SemanticError(attr.name, absl::StrCat("unknown key \"", key, "\""));
    }
  }
  const std::string kind = j.value("kind", "");
  if (kind == "numeric") {
    attr.kind = AttributeKind::kNumeric;
  } else if (kind == "date") {
    attr.kind = AttributeKind::kDate;
  } else if (kind == "categorical") {
    attr.kind = AttributeKind::kCategorical;
  } else {
    return SemanticError(attr.name,
                         absl::StrCat("unknown kind \"", kind, "\""));
  }
  const std::string role = j.value("role", "");
  if (role == "identifier") {
    attr.role = AttributeRole::kIdentifier;
  } else if (role == "quasi_identifier") {
    attr.role = AttributeRole::kQuasiIdentifier;
  } else if (role == "confidential") {
    attr.role = AttributeRole::kConfidential;
  } else if (role == "other") {
    attr.role = AttributeRole::kOther;
  } else {
    return SemanticError(attr.name,
                         absl::StrCat("unknown role \"", role, "\""));
  }
  if (attr.is_numeric()) {
    for (const char* key : {"min", "max"}) {
      if (!j.contains(key)) {
        return SemanticError(attr.name, absl::StrCat("missing \"", key, "\""));
      }
    }
    SDC_ASSIGN_OR_RETURN(attr.min, ParseBound(j["min"], attr, epoch, "min"));
    SDC_ASSIGN_OR_RETURN(attr.max, ParseBound(j["max"], attr, epoch, "max"));
    if (j.contains("domain") || j.contains("hierarchy")) {
      return SemanticError(attr.name,
                           "numeric/date attributes take no domain or hierarchy");
    }
    return attr;
  }
  if (j.contains("min") || j.contains("max")) {
    return SemanticError(attr.name, "categorical attributes take no bounds");
  }
  if (j.contains("domain")) {
    if (!j["domain"].is_array()) {
      return SemanticError(attr.name, "\"domain\" must be an array of strings");
    }
    for (const json& v : j["domain"]) {
      if (!v.is_string()) {
        return SemanticError(attr.name,
                             "\"domain\" must be an array of strings");
      }
      attr.domain.push_back(v.get<std::string>());
    }
  }
  if (j.contains("hierarchy")) {
    SDC_ASSIGN_OR_RETURN(Hierarchy::Spec spec,
                         ParseHierarchyNode(j["hierarchy"], attr.name));
    absl::StatusOr<Hierarchy> h = Hierarchy::Create(spec);
    if (!h.ok()) return SemanticError(attr.name, h.status().message());
    attr.hierarchy = std::make_shared<const Hierarchy>(*std::move(h));
  }
  return attr;
}

}  // namespace

absl::StatusOr<double> ParseDate(absl::string_view text, absl::CivilDay epoch) {
  absl::CivilDay day;
  if (text.size() != 10 || text[4] != '-' || text[7] != '-' ||
      !absl::ParseCivilTime(text, &day) ||
      absl::FormatCivilTime(day) != text) {
    return absl::InvalidArgumentError(
        absl::StrCat("'", text, "' is not a valid YYYY-MM-DD date"));
  }
  return static_cast<double>(day - epoch);
}

std::string FormatDate(int64_t offset, absl::CivilDay epoch) {
  return absl::FormatCivilTime(epoch + offset);
}

absl::StatusOr<Schema> ParseSchema(absl::string_view json_text) {
  json doc;
  try {
    doc = json::parse(json_text.begin(), json_text.end());
  } catch (const json::parse_error& e) {
    return absl::InvalidArgumentError(absl::StrFormat(
        "schema: syntax error at byte %d: %s", e.byte, e.what()));
  }
  if (!doc.is_object()) {
    return absl::InvalidArgumentError("schema: document must be an object");
  }
  for (const auto& [key, value] : doc.items()) {
    if (key != "epoch" && key != "attributes") {
      return absl::InvalidArgumentError(
          absl::StrCat("schema: unknown key \"", key, "\""));
    }
  }
  absl::CivilDay epoch(1970, 1, 1);
  if (doc.contains("epoch")) {
    if (!doc["epoch"].is_string()) {
      return absl::InvalidArgumentError("schema: \"epoch\" must be a date");
    }
    SDC_ASSIGN_OR_RETURN(double offset,
                         ParseDate(doc["epoch"].get<std::string>(), epoch));
    epoch += static_cast<int64_t>(offset);
  }
  if (!doc.contains("attributes") || !doc["attributes"].is_array()) {
    return absl::InvalidArgumentError(
        "schema: \"attributes\" must be an array");
  }
  std::vector<AttributeSchema> attrs;
  size_t position = 0;
  for (const json& j : doc["attributes"]) {
    SDC_ASSIGN_OR_RETURN(AttributeSchema attr,
                         ParseAttribute(j, epoch, position++));
    attrs.push_back(std::move(attr));
  }
  absl::StatusOr<Schema> schema = Schema::Create(std::move(attrs), epoch);
  if (!schema.ok()) {
    return absl::InvalidArgumentError(
        absl::StrCat("schema: ", schema.status().message()));
  }
  return schema;
}

absl::StatusOr<std::string> ReadFile(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) return absl::NotFoundError(absl::StrCat("cannot open '", path, "'"));
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

absl::Status WriteFile(const std::string& path, absl::string_view content) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) {
    return absl::PermissionDeniedError(
        absl::StrCat("cannot write '", path, "'"));
  }
  out.write(content.data(), static_cast<std::streamsize>(content.size()));
  if (!out) {
    return absl::DataLossError(absl::StrCat("short write to '", path, "'"));
  }
  return absl::OkStatus();
}

}  // namespace sdc
