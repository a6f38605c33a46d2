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

#include "sdc/cell_value.h"

#include <algorithm>
#include <string>
#include <vector>

#include "absl/strings/str_cat.h"
#include "absl/strings/str_join.h"

namespace sdc {

CellValue CellValue::ValueSet(std::vector<std::string> members) {
  std::sort(members.begin(), members.end());
  members.erase(std::unique(members.begin(), members.end()), members.end());
  return CellValue(CategorySet{std::move(members)});
}

std::string CellValue::DebugString() const {
  switch (tag()) {
    case Tag::kNumber:
      return absl::StrCat(number());
    case Tag::kCategory:
      return category();
    case Tag::kInterval:
      return absl::StrCat("[", interval().lo, ";", interval().hi, "]");
    case Tag::kValueSet:
      return absl::StrCat("{", absl::StrJoin(value_set(), "|"), "}");
    case Tag::kNode:
      return absl::StrCat("node#", node());
    case Tag::kMissing:
      return "<missing>";
  }
  return "";
}

}  // namespace sdc
