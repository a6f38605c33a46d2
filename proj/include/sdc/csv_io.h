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

#ifndef SDC_CSV_IO_H_
#define SDC_CSV_IO_H_

#include <memory>
#include <string>
#include <vector>

#include "absl/status/statusor.h"
#include "absl/strings/string_view.h"
#include "sdc/dataset.h"
#include "sdc/schema.h"

namespace sdc {

// Splits comma-separated text into rows of fields. Fields may be quoted with
// '"' (a doubled quote escapes one). A trailing newline is optional; CRLF is
// tolerated on input.
absl::StatusOr<std::vector<std::vector<std::string>>> ParseCsv(
    absl::string_view text);

std::string CsvField(absl::string_view field);

// Shortest decimal string that parses back to exactly `v`.
std::string FormatNumber(double v);
absl::StatusOr<double> ParseNumber(absl::string_view text);

struct LoadOptions {
  bool allow_missing = false;
};

// The header must list the schema's attributes in order, or the same list
// without identifier attributes (a released file). In the latter case the
// dataset carries the identifier-free schema.
//
// Cell encodings: numbers in shortest decimal form, dates as YYYY-MM-DD or as
// day offsets, intervals as "[lo;hi]", value sets as "{a|b}", hierarchy
// nodes by label. An empty field is a missing value.
absl::StatusOr<Dataset> LoadDataset(absl::string_view csv_text,
                                    std::shared_ptr<const Schema> schema,
                                    LoadOptions options = {});

std::string FormatCell(const CellValue& cell, const Schema& schema,
                       size_t attr);
std::string WriteDataset(const Dataset& ds);

}  // namespace sdc

#endif  // SDC_CSV_IO_H_
