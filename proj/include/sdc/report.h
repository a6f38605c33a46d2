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

#ifndef SDC_REPORT_H_
#define SDC_REPORT_H_

#include <optional>
#include <string>
#include <vector>

#include "absl/status/statusor.h"
#include "absl/strings/string_view.h"
#include "sdc/anonymize.h"
#include "sdc/dataset.h"
#include "sdc/info_loss.h"
#include "sdc/risk.h"

namespace sdc {

enum class ReportFormat { kJson, kCsv };

// Reals are rendered with 6 significant digits in both formats, and every
// report ends with exactly one newline.
std::string FormatReal(double v);

std::string RiskReportText(const std::vector<std::string>& attrs,
                           const RiskReport& report, ReportFormat format);
std::string RiskCurveText(const std::vector<RiskCurvePoint>& curve,
                          ReportFormat format);
std::string SamplingText(const std::vector<std::string>& attrs,
                         double fraction, uint64_t seed,
                         const std::vector<SamplingTrial>& trials,
                         ReportFormat format);

// One row of the risk/utility comparison table.
struct ComparisonRow {
  std::string mechanism;
  std::string param;
  double unicity = 0;
  double random_correct_rate = 0;
  double overall_loss = 0;
};

std::string ComparisonText(const std::vector<ComparisonRow>& rows,
                           ReportFormat format);
// JSON carries the full loss report plus the row fields; CSV is a
// comparison-table row.
std::string LossText(const ComparisonRow& row, const LossReport& loss,
                     ReportFormat format);
std::string VerifyText(const AnonymizationReport& report, ReportFormat format);

// Lower-case hex SHA-256 of `data`.
std::string Sha256Hex(absl::string_view data);

// "<output>.meta.json" content for a released dataset.
std::string MetaSidecar(const Provenance& provenance,
                        absl::string_view input_digest);
// Parses a sidecar back; unknown or absent fields stay unset.
absl::StatusOr<Provenance> ParseMetaSidecar(absl::string_view text);

}  // namespace sdc

#endif  // SDC_REPORT_H_
