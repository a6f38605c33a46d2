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

#ifndef SDC_SCHEMA_IO_H_
#define SDC_SCHEMA_IO_H_

#include <string>

#include "absl/status/statusor.h"
#include "absl/strings/string_view.h"
#include "absl/time/civil_time.h"
#include "sdc/schema.h"

namespace sdc {

// Parses a JSON schema document:
//
//   {"epoch": "2009-01-01",
//    "attributes": [
//      {"name": "age", "kind": "numeric", "role": "quasi_identifier",
//       "min": 0, "max": 100},
//      {"name": "zip", "kind": "categorical", "role": "quasi_identifier",
//       "hierarchy": {"label": "*", "children": [
//           {"label": "north", "children": ["z1", "z2"]}, "z3"]}},
//      {"name": "sex", "kind": "categorical", "role": "quasi_identifier",
//       "domain": ["F", "M"]}]}
//
// Date bounds may be given as ISO dates or as day offsets from the epoch.
// Syntax errors report the byte offset; semantic errors name the attribute.
absl::StatusOr<Schema> ParseSchema(absl::string_view json_text);

absl::StatusOr<std::string> ReadFile(const std::string& path);
absl::Status WriteFile(const std::string& path, absl::string_view content);

// Day offset of an ISO "YYYY-MM-DD" date relative to `epoch`.
absl::StatusOr<double> ParseDate(absl::string_view text, absl::CivilDay epoch);
std::string FormatDate(int64_t offset, absl::CivilDay epoch);

}  // namespace sdc

#endif  // SDC_SCHEMA_IO_H_
