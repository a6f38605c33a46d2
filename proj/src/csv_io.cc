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

#include "sdc/csv_io.h"

#include <charconv>
#include <cmath>
#include <string>
#include <system_error>
#include <utility>
#include <vector>

#include "absl/status/status.h"
#include "absl/strings/str_cat.h"
#include "absl/strings/str_join.h"
#include "absl/strings/str_split.h"
#include "sdc/schema_io.h"
#include "sdc/status_macros.h"

namespace sdc {
namespace {

absl::StatusOr<CellValue> ParseCell(absl::string_view text,
                                    const Schema& schema, size_t a) {
  const AttributeSchema& attr = schema.attribute(a);
  if (text.empty()) return CellValue::Missing();
  if (attr.is_numeric()) {
    auto scalar = [&](absl::string_view s) -> absl::StatusOr<double> {
      if (attr.kind == AttributeKind::kDate && s.size() == 10 && s[4] == '-') {
        return ParseDate(s, schema.epoch());
      }
      return ParseNumber(s);
    };
    if (text.front() == '[') {
      if (text.back() != ']') {
        return absl::InvalidArgumentError("unterminated interval");
      }
      std::vector<absl::string_view> parts =
          absl::StrSplit(text.substr(1, text.size() - 2), ';');
      if (parts.size() != 2) {
        return absl::InvalidArgumentError("interval needs exactly two bounds");
      }
      SDC_ASSIGN_OR_RETURN(double lo, scalar(parts[0]));
      SDC_ASSIGN_OR_RETURN(double hi, scalar(parts[1]));
      return CellValue::Interval(lo, hi);
    }
    SDC_ASSIGN_OR_RETURN(double v, scalar(text));
    return CellValue::Number(v);
  }
  if (text.front() == '{') {
    if (text.back() != '}' || text.size() < 3) {
      return absl::InvalidArgumentError("malformed value set");
    }
    std::vector<std::string> members =
        absl::StrSplit(text.substr(1, text.size() - 2), '|');
    return CellValue::ValueSet(std::move(members));
  }
  if (attr.has_hierarchy()) {
    std::optional<int32_t> node = attr.hierarchy->Find(text);
    if (!node.has_value()) {
      return absl::InvalidArgumentError("value outside domain");
    }
    if (!attr.hierarchy->IsLeaf(*node)) return CellValue::Node(*node);
  }
  return CellValue::Category(std::string(text));
}

}  // namespace

absl::StatusOr<std::vector<std::vector<std::string>>> ParseCsv(
    absl::string_view text) {
  std::vector<std::vector<std::string>> rows;
  std::vector<std::string> row;
  std::string field;
  size_t line = 1;
  size_t i = 0;
  bool row_started = false;
  while (i < text.size()) {
    char c = text[i];
    row_started = true;
    if (c == '"' && field.empty()) {
      // Quoted field.
      size_t start_line = line;
      ++i;
      while (true) {
        if (i >= text.size()) {
          return absl::InvalidArgumentError(absl::StrCat(
              "csv: unterminated quoted field starting on line ", start_line));
        }
        if (text[i] == '"') {
          if (i + 1 < text.size() && text[i + 1] == '"') {
            field.push_back('"');
            i += 2;
            continue;
          }
          ++i;
          break;
        }
        if (text[i] == '\n') ++line;
        field.push_back(text[i++]);
      }
      if (i < text.size() && text[i] != ',' && text[i] != '\n' &&
          text[i] != '\r') {
        return absl::InvalidArgumentError(absl::StrCat(
            "csv: unexpected character after closing quote on line ", line));
      }
      continue;
    }
    if (c == ',') {
      row.push_back(std::move(field));
      field.clear();
      ++i;
    } else if (c == '\n' || (c == '\r' && i + 1 < text.size() &&
                             text[i + 1] == '\n')) {
      row.push_back(std::move(field));
      field.clear();
      rows.push_back(std::move(row));
      row.clear();
      row_started = false;
      i += c == '\r' ? 2 : 1;
      ++line;
    } else {
      field.push_back(c);
      ++i;
    }
  }
  if (row_started) {
    row.push_back(std::move(field));
    rows.push_back(std::move(row));
  }
  return rows;
}

std::string CsvField(absl::string_view field) {
  if (field.find_first_of(",\"\n\r") == absl::string_view::npos) {
    return std::string(field);
  }
  std::string out = "\"";
  for (char c : field) {
    if (c == '"') out.push_back('"');
    out.push_back(c);
  }
  out.push_back('"');
  return out;
}

std::string FormatNumber(double v) {
  char buf[64];
  auto [end, ec] = std::to_chars(buf, buf + sizeof(buf), v);
  return std::string(buf, end);
}

absl::StatusOr<double> ParseNumber(absl::string_view text) {
  double v = 0;
  const char* first = text.data();
  const char* last = text.data() + text.size();
  if (!text.empty() && text.front() == '+') ++first;
  auto [ptr, ec] = std::from_chars(first, last, v);
  if (ec != std::errc() || ptr != last || !std::isfinite(v)) {
    return absl::InvalidArgumentError(
        absl::StrCat("'", text, "' is not a number"));
  }
  return v;
}

absl::StatusOr<Dataset> LoadDataset(absl::string_view csv_text,
                                    std::shared_ptr<const Schema> schema,
                                    LoadOptions options) {
  SDC_ASSIGN_OR_RETURN(auto rows, ParseCsv(csv_text));
  if (rows.empty()) return absl::InvalidArgumentError("csv: missing header");
  std::vector<std::string> full;
  for (const AttributeSchema& a : schema->attributes()) full.push_back(a.name);
  if (rows[0] != full) {
    auto stripped =
        std::make_shared<const Schema>(schema->WithoutIdentifiers());
    std::vector<std::string> names;
    for (const AttributeSchema& a : stripped->attributes()) {
      names.push_back(a.name);
    }
    if (rows[0] != names) {
      return absl::InvalidArgumentError(absl::StrCat(
          "csv: header [", absl::StrJoin(rows[0], ","),
          "] does not match schema [", absl::StrJoin(full, ","), "]"));
    }
    schema = std::move(stripped);
  }
  const size_t width = schema->size();
  std::vector<std::vector<CellValue>> cells;
  cells.reserve(rows.size() - 1);
  for (size_t r = 1; r < rows.size(); ++r) {
    if (rows[r].size() != width) {
      return absl::InvalidArgumentError(
          absl::StrCat("csv: line ", r + 1, " has ", rows[r].size(),
                       " fields, expected ", width));
    }
    std::vector<CellValue> row;
    row.reserve(width);
    for (size_t a = 0; a < width; ++a) {
      auto where = [&] {
        return absl::StrCat("csv: line ", r + 1, ", column ", a + 1, " (",
                            schema->attribute(a).name, "): ");
      };
      absl::StatusOr<CellValue> cell = ParseCell(rows[r][a], *schema, a);
      if (!cell.ok()) {
        return absl::InvalidArgumentError(
            absl::StrCat(where(), cell.status().message()));
      }
      if (cell->is_missing() && !options.allow_missing) {
        return absl::InvalidArgumentError(
            absl::StrCat(where(), "missing value"));
      }
      if (absl::Status s = CheckCell(*cell, *schema, a); !s.ok()) {
        return absl::InvalidArgumentError(absl::StrCat(where(), s.message()));
      }
      row.push_back(*std::move(cell));
    }
    cells.push_back(std::move(row));
  }
  return Dataset::Create(std::move(schema), std::move(cells));
}

std::string FormatCell(const CellValue& cell, const Schema& schema,
                       size_t a) {
  const AttributeSchema& attr = schema.attribute(a);
  switch (cell.tag()) {
    case CellValue::Tag::kNumber: {
      double v = cell.number();
      if (attr.kind == AttributeKind::kDate && v == std::floor(v) &&
          std::fabs(v) < 1e9) {
        return FormatDate(static_cast<int64_t>(v), schema.epoch());
      }
      return FormatNumber(v);
    }
    case CellValue::Tag::kInterval:
      return absl::StrCat("[", FormatNumber(cell.interval().lo), ";",
                          FormatNumber(cell.interval().hi), "]");
    case CellValue::Tag::kCategory:
      return cell.category();
    case CellValue::Tag::kValueSet:
      return absl::StrCat("{", absl::StrJoin(cell.value_set(), "|"), "}");
    case CellValue::Tag::kNode:
      return attr.hierarchy->Label(cell.node());
    case CellValue::Tag::kMissing:
      return "";
  }
  return "";
}

std::string WriteDataset(const Dataset& ds) {
  const Schema& schema = ds.schema();
  std::string out;
  for (size_t a = 0; a < schema.size(); ++a) {
    if (a > 0) out.push_back(',');
    out += CsvField(schema.attribute(a).name);
  }
  out.push_back('\n');
  for (const Record& rec : ds.records()) {
    for (size_t a = 0; a < schema.size(); ++a) {
      if (a > 0) out.push_back(',');
      out += CsvField(FormatCell(rec.cells[a], schema, a));
    }
    out.push_back('\n');
  }
  return out;
}

}  // namespace sdc
