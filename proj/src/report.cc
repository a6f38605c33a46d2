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

#include "sdc/report.h"

#include <openssl/evp.h>

#include <cstdlib>
#include <string>
#include <vector>

#include "absl/status/status.h"
#include "absl/strings/str_cat.h"
#include "absl/strings/str_format.h"
#include "absl/strings/str_join.h"
#include "json.hpp"
#include "sdc/csv_io.h"

namespace sdc {
namespace {

using ojson = nlohmann::ordered_json;

// The double nearest to the 6-significant-digit rendering of `v`; the JSON
// writer prints it back in that short form.
double Round6(double v) { return std::strtod(FormatReal(v).c_str(), nullptr); }

std::string Dump(const ojson& j) { return j.dump(2) + "\n"; }

ojson ReportJson(const RiskReport& r) {
  ojson j;
  j["n"] = r.n;
  j["n_classes"] = r.n_classes;
  j["unicity"] = Round6(r.unicity);
  j["unequivocal_rate"] = Round6(r.unequivocal_rate);
  j["random_correct_rate"] = Round6(r.random_correct_rate);
  ojson hist = ojson::object();
  for (const auto& [size, count] : r.class_size_histogram) {
    hist[absl::StrCat(size)] = count;
  }
  j["class_size_histogram"] = hist;
  return j;
}

std::string RiskCsvRow(const std::vector<std::string>& attrs,
                       const RiskReport& r) {
  return absl::StrCat(attrs.size(), ",", CsvField(absl::StrJoin(attrs, ";")),
                      ",", FormatReal(r.unicity), ",",
                      FormatReal(r.random_correct_rate), "\n");
}

constexpr absl::string_view kRiskHeader =
    "prefix_len,attrs,unicity,random_correct_rate\n";
constexpr absl::string_view kComparisonHeader =
    "mechanism,param,unicity,random_correct_rate,overall_loss\n";

std::string ComparisonCsvRow(const ComparisonRow& row) {
  return absl::StrCat(CsvField(row.mechanism), ",", CsvField(row.param), ",",
                      FormatReal(row.unicity), ",",
                      FormatReal(row.random_correct_rate), ",",
                      FormatReal(row.overall_loss), "\n");
}

ojson ComparisonJson(const ComparisonRow& row) {
  ojson j;
  j["mechanism"] = row.mechanism;
  j["param"] = row.param;
  j["unicity"] = Round6(row.unicity);
  j["random_correct_rate"] = Round6(row.random_correct_rate);
  j["overall_loss"] = Round6(row.overall_loss);
  return j;
}

template <typename T>
std::string OptionalCsv(const std::optional<T>& v) {
  if (!v.has_value()) return "";
  if constexpr (std::is_same_v<T, bool>) return *v ? "true" : "false";
  if constexpr (std::is_same_v<T, double>) return FormatReal(*v);
  return "";
}

}  // namespace

std::string FormatReal(double v) {
  std::string s = absl::StrFormat("%.6g", v);
  return s == "-0" ? "0" : s;
}

std::string RiskReportText(const std::vector<std::string>& attrs,
                           const RiskReport& report, ReportFormat format) {
  if (format == ReportFormat::kCsv) {
    return absl::StrCat(kRiskHeader, RiskCsvRow(attrs, report));
  }
  ojson j;
  j["attrs"] = attrs;
  j.update(ReportJson(report));
  return Dump(j);
}

std::string RiskCurveText(const std::vector<RiskCurvePoint>& curve,
                          ReportFormat format) {
  if (format == ReportFormat::kCsv) {
    std::string out(kRiskHeader);
    for (const RiskCurvePoint& p : curve) out += RiskCsvRow(p.prefix, p.report);
    return out;
  }
  ojson points = ojson::array();
  for (const RiskCurvePoint& p : curve) {
    ojson j;
    j["prefix_len"] = p.prefix.size();
    j["attrs"] = p.prefix;
    j.update(ReportJson(p.report));
    points.push_back(std::move(j));
  }
  ojson doc;
  doc["curve"] = std::move(points);
  return Dump(doc);
}

std::string SamplingText(const std::vector<std::string>& attrs,
                         double fraction, uint64_t seed,
                         const std::vector<SamplingTrial>& trials,
                         ReportFormat format) {
  if (format == ReportFormat::kCsv) {
    std::string out =
        "trial,sample_size,sample_unicity,population_unique_fraction_in_"
        "sample\n";
    for (size_t t = 0; t < trials.size(); ++t) {
      absl::StrAppend(&out, t, ",", trials[t].sample_size, ",",
                      FormatReal(trials[t].sample_unicity), ",",
                      FormatReal(trials[t].population_unique_fraction_in_sample),
                      "\n");
    }
    return out;
  }
  double gap = 0;
  ojson list = ojson::array();
  for (size_t t = 0; t < trials.size(); ++t) {
    ojson j;
    j["trial"] = t;
    j["sample_size"] = trials[t].sample_size;
    j["sample_unicity"] = Round6(trials[t].sample_unicity);
    j["population_unique_fraction_in_sample"] =
        Round6(trials[t].population_unique_fraction_in_sample);
    list.push_back(std::move(j));
    gap += trials[t].sample_unicity -
           trials[t].population_unique_fraction_in_sample;
  }
  ojson doc;
  doc["attrs"] = attrs;
  doc["fraction"] = Round6(fraction);
  doc["seed"] = seed;
  doc["trials"] = std::move(list);
  doc["mean_gap"] = trials.empty() ? 0.0 : Round6(gap / trials.size());
  return Dump(doc);
}

std::string ComparisonText(const std::vector<ComparisonRow>& rows,
                           ReportFormat format) {
  if (format == ReportFormat::kCsv) {
    std::string out(kComparisonHeader);
    for (const ComparisonRow& row : rows) out += ComparisonCsvRow(row);
    return out;
  }
  ojson list = ojson::array();
  for (const ComparisonRow& row : rows) list.push_back(ComparisonJson(row));
  ojson doc;
  doc["rows"] = std::move(list);
  return Dump(doc);
}

std::string LossText(const ComparisonRow& row, const LossReport& loss,
                     ReportFormat format) {
  if (format == ReportFormat::kCsv) {
    return absl::StrCat(kComparisonHeader, ComparisonCsvRow(row));
  }
  ojson j = ComparisonJson(row);
  ojson per = ojson::object();
  for (const auto& [name, v] : loss.per_attribute_loss) per[name] = Round6(v);
  ojson width = ojson::object();
  for (const auto& [name, v] : loss.per_attribute_width) {
    width[name] = Round6(v);
  }
  j["per_attribute_loss"] = std::move(per);
  j["per_attribute_width"] = std::move(width);
  return Dump(j);
}

std::string VerifyText(const AnonymizationReport& r, ReportFormat format) {
  if (format == ReportFormat::kCsv) {
    return absl::StrCat(
        "k,n,n_classes,min_class_size,unicity,random_correct_rate,"
        "k_satisfied,t,confidential,max_emd,t_satisfied,passed\n",
        r.k, ",", r.n, ",", r.n_classes, ",", r.min_class_size, ",",
        FormatReal(r.unequivocal_rate), ",", FormatReal(r.random_correct_rate),
        ",", r.k_satisfied ? "true" : "false", ",", OptionalCsv(r.t), ",",
        CsvField(r.confidential.value_or("")), ",", OptionalCsv(r.max_emd),
        ",", OptionalCsv(r.t_satisfied), ",", r.passed() ? "true" : "false",
        "\n");
  }
  ojson j;
  j["k"] = r.k;
  j["n"] = r.n;
  j["n_classes"] = r.n_classes;
  j["min_class_size"] = r.min_class_size;
  j["unicity"] = Round6(r.unequivocal_rate);
  j["random_correct_rate"] = Round6(r.random_correct_rate);
  j["k_satisfied"] = r.k_satisfied;
  j["t"] = r.t.has_value() ? ojson(Round6(*r.t)) : ojson(nullptr);
  j["confidential"] =
      r.confidential.has_value() ? ojson(*r.confidential) : ojson(nullptr);
  j["max_emd"] =
      r.max_emd.has_value() ? ojson(Round6(*r.max_emd)) : ojson(nullptr);
  j["t_satisfied"] =
      r.t_satisfied.has_value() ? ojson(*r.t_satisfied) : ojson(nullptr);
  j["passed"] = r.passed();
  return Dump(j);
}

std::string Sha256Hex(absl::string_view data) {
  unsigned char digest[EVP_MAX_MD_SIZE];
  unsigned int len = 0;
  EVP_Digest(data.data(), data.size(), digest, &len, EVP_sha256(), nullptr);
  std::string hex;
  for (unsigned int i = 0; i < len; ++i) {
    absl::StrAppendFormat(&hex, "%02x", digest[i]);
  }
  return hex;
}

std::string MetaSidecar(const Provenance& p, absl::string_view input_digest) {
  ojson j;
  j["mechanism"] = std::string(MechanismName(p.mechanism));
  j["k"] = p.k.has_value() ? ojson(*p.k) : ojson(nullptr);
  j["t"] = p.t.has_value() ? ojson(*p.t) : ojson(nullptr);
  j["fraction"] = p.fraction.has_value() ? ojson(*p.fraction) : ojson(nullptr);
  j["seed"] = p.seed.has_value() ? ojson(*p.seed) : ojson(nullptr);
  j["input_digest"] = std::string(input_digest);
  return Dump(j);
}

absl::StatusOr<Provenance> ParseMetaSidecar(absl::string_view text) {
  ojson j;
  try {
    j = ojson::parse(text.begin(), text.end());
  } catch (const ojson::parse_error& e) {
    return absl::InvalidArgumentError(
        absl::StrCat("meta sidecar: ", e.what()));
  }
  Provenance p;
  if (!j.is_object()) {
    return absl::InvalidArgumentError("meta sidecar: not an object");
  }
  const std::string mechanism = j.value("mechanism", "");
  bool known = false;
  for (Mechanism m : {Mechanism::kOriginal, Mechanism::kCoarsened,
                      Mechanism::kKAnonymous, Mechanism::kTClose}) {
    if (MechanismName(m) == mechanism) {
      p.mechanism = m;
      known = true;
    }
  }
  if (!known) {
    return absl::InvalidArgumentError(
        absl::StrCat("meta sidecar: unknown mechanism '", mechanism, "'"));
  }
  if (j.contains("k") && j["k"].is_number_integer()) p.k = j["k"].get<int>();
  if (j.contains("t") && j["t"].is_number()) p.t = j["t"].get<double>();
  if (j.contains("fraction") && j["fraction"].is_number()) {
    p.fraction = j["fraction"].get<double>();
  }
  if (j.contains("seed") && j["seed"].is_number_unsigned()) {
    p.seed = j["seed"].get<uint64_t>();
  }
  return p;
}

}  // namespace sdc
